#pragma once

// K, K' and the modified operator K_n^M bound to a mesh and a composite
// 2-point Gauss rule.

#include <memory>
#include <span>
#include <vector>

#include "urysohn/kernels.hpp"
#include "urysohn/mesh.hpp"
#include "urysohn/quadrature.hpp"

namespace urysohn {

/// Problem + mesh + nodes + quadrature. The quadrature grid has quad_cells
/// equal cells, a multiple of the mesh size so every knot is a breakpoint.
/// With split_diagonal set and a Green's-type kernel, the integral at s is
/// taken on the grid refined by inserting t = s.
class DiscretizedOperator {
 public:
  DiscretizedOperator(std::shared_ptr<const Problem> problem, NodeSet nodes, int quad_cells,
                      bool split_diagonal = true, int gauss_points = 2);
  DiscretizedOperator(const Problem& problem, NodeSet nodes, int quad_cells, bool split_diagonal = true,
                      int gauss_points = 2);

  const Problem& problem() const noexcept { return *problem_; }
  const std::shared_ptr<const Problem>& shared_problem() const noexcept { return problem_; }
  const UrysohnKernel& kernel() const noexcept { return problem_->kernel; }
  const NodeSet& nodes() const noexcept { return nodes_; }
  const UniformMesh& mesh() const noexcept { return nodes_.mesh(); }
  int quad_cells() const noexcept { return grid_.cells(); }
  const CompositeGrid& grid() const noexcept { return grid_; }
  /// True when integrals at s are split at t = s.
  bool splits_diagonal() const noexcept { return split_ && problem_->kernel.diagonal_split; }

  /// Quadrature nodes of the unsplit grid.
  std::span<const QuadratureNode> base_nodes() const noexcept { return base_; }
  int points_per_cell() const noexcept { return grid_.rule().size(); }

  /// Quadrature cell whose interior contains s when the integral at s is
  /// split, otherwise -1.
  int split_cell(double s) const;

  /// Nodes of the 2-cell refinement of `cell` at s, appended to out.
  void split_nodes(int cell, double s, std::vector<QuadratureNode>& out) const;

  /// Visits the quadrature nodes for the integral at s, cell by cell. For a
  /// node of the unsplit grid `base_index` is its index in base_nodes(),
  /// otherwise -1.
  template <class Visitor>
  void for_each_node(double s, Visitor&& visit) const {
    const int sc = split_cell(s);
    const int m = points_per_cell();
    if (sc < 0) {
      for (std::size_t i = 0; i < base_.size(); ++i) visit(base_[i], static_cast<int>(i));
      return;
    }
    for (int c = 0; c < quad_cells(); ++c) {
      if (c == sc) {
        std::vector<QuadratureNode> extra;
        split_nodes(c, s, extra);
        for (const auto& q : extra) visit(q, -1);
      } else {
        for (int k = 0; k < m; ++k) visit(base_[static_cast<std::size_t>(c * m + k)], c * m + k);
      }
    }
  }

  /// Explicit node list for the integral at s.
  std::vector<QuadratureNode> nodes_at(double s) const;

 private:
  std::shared_ptr<const Problem> problem_;
  NodeSet nodes_;
  CompositeGrid grid_;
  std::vector<QuadratureNode> base_;
  bool split_;
};

/// Number of quadrature cells as a function of the mesh size.
enum class CellCount { mesh, mesh_squared };
int quad_cells_for(CellCount count, int n);

/// Quadrature nodes for integrals at a fixed list of evaluation points,
/// sharing the unsplit grid: points() holds the base nodes first, then the
/// split-cell nodes of each evaluation point that needs them.
class QuadratureLayout {
 public:
  QuadratureLayout(const DiscretizedOperator& op, std::span<const double> eval_points);

  std::span<const QuadratureNode> points() const noexcept { return points_; }
  std::size_t eval_count() const noexcept { return split_cell_.size(); }

  /// Visits (point index, node) for evaluation point e in cell order.
  template <class Visitor>
  void for_each(std::size_t e, Visitor&& visit) const {
    const int sc = split_cell_[e];
    if (sc < 0) {
      for (std::size_t i = 0; i < base_count_; ++i) visit(i, points_[i]);
      return;
    }
    const auto m = static_cast<std::size_t>(per_cell_);
    for (int c = 0; c < cells_; ++c) {
      if (c == sc) {
        const auto begin = static_cast<std::size_t>(extra_begin_[e]);
        for (std::size_t k = 0; k < 2 * m; ++k) visit(begin + k, points_[begin + k]);
      } else {
        const auto begin = static_cast<std::size_t>(c) * m;
        for (std::size_t k = 0; k < m; ++k) visit(begin + k, points_[begin + k]);
      }
    }
  }

 private:
  std::vector<QuadratureNode> points_;
  std::size_t base_count_ = 0;
  int cells_ = 0;
  int per_cell_ = 0;
  std::vector<int> split_cell_;
  std::vector<int> extra_begin_;
};

/// K(x)(s) = int_0^1 kappa(s, t, x(t)) dt.
double apply_K(const DiscretizedOperator& op, const RealFunction& x, double s);

/// (K'(x) y)(s) = int_0^1 d kappa/du (s, t, x(t)) y(t) dt.
double apply_K_prime(const DiscretizedOperator& op, const RealFunction& x, const RealFunction& y, double s);

/// K_n^M(x) = Q_n K(x) + K(Q_n x) - Q_n K(Q_n x). Nodal quantities are
/// computed eagerly; the returned function evaluates K(Q_n x) on demand.
SidedFunction apply_K_nM(const DiscretizedOperator& op, const SidedFunction& x);

/// Q_n of a function that may jump at knots; nodes on a knot take the value
/// from their own cell.
PiecewisePolynomial project_sided(const SidedFunction& x, const NodeSet& nodes);

}  // namespace urysohn
