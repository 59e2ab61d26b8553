#pragma once

// Composite Gauss-Legendre quadrature on [0,1].

#include <span>
#include <vector>

#include "urysohn/mesh.hpp"

namespace urysohn {

/// m-point Gauss-Legendre rule on [-1,1]; exact for polynomials of degree
/// 2m-1.
struct GaussRule {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const noexcept { return static_cast<int>(points.size()); }
  int order() const noexcept { return 2 * size() - 1; }
};

/// Nodes by Newton iteration on the Legendre three-term recurrence.
GaussRule gauss_legendre(int m);

struct QuadratureNode {
  double t;
  double w;
};

/// A partition of [0,1] with one Gauss rule mapped onto every cell.
class CompositeGrid {
 public:
  CompositeGrid(std::vector<double> breakpoints, GaussRule rule);

  /// `cells` equal cells.
  static CompositeGrid uniform(int cells, GaussRule rule);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  const GaussRule& rule() const noexcept { return rule_; }
  int cells() const noexcept { return static_cast<int>(breakpoints_.size()) - 1; }

  /// The grid with s inserted into the cell that contains it. Returns an
  /// identical grid when s already is a breakpoint.
  CompositeGrid with_breakpoint(double s) const;

  /// Mapped nodes and weights, cell by cell from left to right.
  std::vector<QuadratureNode> nodes() const;

  /// Appends the mapped rule on [a,b] to out.
  static void map_cell(const GaussRule& rule, double a, double b, std::vector<QuadratureNode>& out);

 private:
  std::vector<double> breakpoints_;
  GaussRule rule_;
};

double integrate(const RealFunction& g, const CompositeGrid& grid);

/// integrate on grid.with_breakpoint(s). Keeps the rule's order when g has a
/// derivative jump at t = s.
double integrate_split(const RealFunction& g, const CompositeGrid& grid, double s);

/// Oracle-grade rule: 10-point Gauss on 256 equal cells. Targets 1e-12
/// absolute accuracy for integrands with moderate high derivatives.
double reference_integrate(const RealFunction& g);

/// reference_integrate with s inserted as an extra breakpoint.
double reference_integrate_split(const RealFunction& g, double s);

/// The grid used by reference_integrate.
const CompositeGrid& reference_grid();

}  // namespace urysohn
