#include "urysohn/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "urysohn/projection.hpp"

namespace urysohn {

DiscretizedOperator::DiscretizedOperator(std::shared_ptr<const Problem> problem, NodeSet nodes, int quad_cells,
                                         bool split_diagonal, int gauss_points)
    : problem_(std::move(problem)),
      nodes_(std::move(nodes)),
      grid_(CompositeGrid::uniform(quad_cells, gauss_legendre(gauss_points))),
      split_(split_diagonal) {
  if (!problem_) throw std::invalid_argument("DiscretizedOperator: null problem");
  const int n = nodes_.mesh().cells();
  if (quad_cells < n || quad_cells % n != 0) {
    throw std::invalid_argument("DiscretizedOperator: quad_cells (" + std::to_string(quad_cells) +
                                ") must be a positive multiple of the mesh size (" + std::to_string(n) + ")");
  }
  base_ = grid_.nodes();
}

DiscretizedOperator::DiscretizedOperator(const Problem& problem, NodeSet nodes, int quad_cells, bool split_diagonal,
                                         int gauss_points)
    : DiscretizedOperator(std::make_shared<const Problem>(problem), std::move(nodes), quad_cells, split_diagonal,
                          gauss_points) {}

int DiscretizedOperator::split_cell(double s) const {
  if (!splits_diagonal()) return -1;
  if (!(s >= 0.0 && s <= 1.0)) throw std::out_of_range("DiscretizedOperator: point outside [0,1]");
  const int cells = quad_cells();
  const double scaled = s * cells;
  const double nearest = std::round(scaled);
  // A breakpoint needs no refinement.
  if (scaled == nearest) return -1;
  const auto b = grid_.breakpoints();
  const int c = std::min(static_cast<int>(std::floor(scaled)), cells - 1);
  if (s == b[static_cast<std::size_t>(c)] || s == b[static_cast<std::size_t>(c + 1)]) return -1;
  return c;
}

void DiscretizedOperator::split_nodes(int cell, double s, std::vector<QuadratureNode>& out) const {
  const auto b = grid_.breakpoints();
  CompositeGrid::map_cell(grid_.rule(), b[static_cast<std::size_t>(cell)], s, out);
  CompositeGrid::map_cell(grid_.rule(), s, b[static_cast<std::size_t>(cell + 1)], out);
}

std::vector<QuadratureNode> DiscretizedOperator::nodes_at(double s) const {
  std::vector<QuadratureNode> out;
  out.reserve(base_.size() + 2);
  for_each_node(s, [&](const QuadratureNode& q, int) { out.push_back(q); });
  return out;
}

int quad_cells_for(CellCount count, int n) { return count == CellCount::mesh ? n : n * n; }

QuadratureLayout::QuadratureLayout(const DiscretizedOperator& op, std::span<const double> eval_points)
    : points_(op.base_nodes().begin(), op.base_nodes().end()),
      base_count_(op.base_nodes().size()),
      cells_(op.quad_cells()),
      per_cell_(op.points_per_cell()) {
  split_cell_.reserve(eval_points.size());
  extra_begin_.reserve(eval_points.size());
  for (double s : eval_points) {
    const int sc = op.split_cell(s);
    split_cell_.push_back(sc);
    extra_begin_.push_back(static_cast<int>(points_.size()));
    if (sc >= 0) op.split_nodes(sc, s, points_);
  }
}

double apply_K(const DiscretizedOperator& op, const RealFunction& x, double s) {
  const auto& kappa = op.kernel().value;
  double sum = 0.0;
  op.for_each_node(s, [&](const QuadratureNode& q, int) { sum += q.w * kappa(s, q.t, x(q.t)); });
  return sum;
}

double apply_K_prime(const DiscretizedOperator& op, const RealFunction& x, const RealFunction& y, double s) {
  const auto& du = op.kernel().du;
  if (!du) throw std::invalid_argument("apply_K_prime: kernel '" + op.kernel().name + "' has no u-derivative");
  double sum = 0.0;
  op.for_each_node(s, [&](const QuadratureNode& q, int) { sum += q.w * du(s, q.t, x(q.t)) * y(q.t); });
  return sum;
}

PiecewisePolynomial project_sided(const SidedFunction& x, const NodeSet& nodes) {
  std::vector<double> values(static_cast<std::size_t>(nodes.size()));
  const auto& mesh = nodes.mesh();
  for (int j = 0; j < mesh.cells(); ++j) {
    for (int i = 0; i < nodes.per_cell(); ++i) {
      const double tau = nodes.node(j, i);
      const Side side = tau == mesh.knot(j) ? Side::right : Side::left;
      values[static_cast<std::size_t>(j * nodes.per_cell() + i)] = x(tau, side);
    }
  }
  return PiecewisePolynomial(nodes, std::move(values));
}

SidedFunction apply_K_nM(const DiscretizedOperator& op, const SidedFunction& x) {
  const auto& nodes = op.nodes();
  const RealFunction x_left = [&x](double t) { return x(t, Side::left); };
  auto qkx = project([&](double s) { return apply_K(op, x_left, s); }, nodes);
  auto qx = std::make_shared<const PiecewisePolynomial>(project_sided(x, nodes));
  const RealFunction qx_fn = [qx](double t) { return (*qx)(t); };
  auto qkqx = project([&](double s) { return apply_K(op, qx_fn, s); }, nodes);
  return [op, qkx = std::move(qkx), qx_fn, qkqx = std::move(qkqx)](double s, Side side) {
    return qkx.evaluate(s, side) + apply_K(op, qx_fn, s) - qkqx.evaluate(s, side);
  };
}

}  // namespace urysohn
