#pragma once

// Interpolatory projection onto X_n, divided differences and the node
// polynomial of each cell.

#include <span>
#include <vector>

#include "urysohn/mesh.hpp"

namespace urysohn {

/// Q_n x: the element of X_n agreeing with x at every node.
PiecewisePolynomial project(const RealFunction& x, const NodeSet& nodes);
PiecewisePolynomial project(const RealFunction& x, const UniformMesh& mesh, int r);

/// Newton divided differences of a target function. Abscissae may repeat at
/// most twice; a repeated pair consumes the target's first derivative.
class DividedDifferenceTable {
 public:
  DividedDifferenceTable(std::vector<double> points, const RealFunction& value,
                         const RealFunction& derivative = {});

  /// Abscissae in the (sorted) order used to build the table.
  std::span<const double> abscissae() const noexcept { return abscissae_; }
  /// Newton coefficients [z_0], [z_0,z_1], ..., [z_0..z_m].
  std::span<const double> coefficients() const noexcept { return coefficients_; }
  /// Highest-order divided difference over all abscissae.
  double top() const noexcept { return coefficients_.back(); }
  /// Newton-form interpolant at t.
  double newton_value(double t) const;

 private:
  std::vector<double> abscissae_;
  std::vector<double> coefficients_;
};

/// [z_0, ..., z_m] f. Throws std::invalid_argument for a point repeated three
/// or more times, or for a repeat without a derivative.
double divided_difference(std::vector<double> points, const RealFunction& value,
                          const RealFunction& derivative = {});

/// Psi_j(t) = prod_i (t - tau_j^i) over the nodes of `cell` (0-based).
double node_polynomial(const NodeSet& nodes, int cell, double t);

struct InterpolationOrder {
  std::vector<int> n;
  std::vector<double> errors;  ///< sup |x - Q_n x| per n
  double slope = 0.0;          ///< least-squares slope in log h
  bool exact = false;          ///< all errors at round-off; slope meaningless
};

/// Measures sup |(I - Q_n) x| on the sup-norm grid for each n and fits the
/// observed order.
InterpolationOrder interpolation_error_order(const RealFunction& x, int r, std::span<const int> n_list);

}  // namespace urysohn
