#include "urysohn/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace urysohn {

SidedFunction sided(RealFunction f) {
  return [f = std::move(f)](double s, Side) { return f(s); };
}

UniformMesh::UniformMesh(int n) : n_(n), h_(0.0) {
  if (n < 1) throw std::invalid_argument("UniformMesh: n must be >= 1, got " + std::to_string(n));
  h_ = 1.0 / n;
  knots_.resize(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) knots_[static_cast<std::size_t>(j)] = static_cast<double>(j) / n;
}

namespace {

double knot_tolerance(int n) { return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1, n); }

}  // namespace

bool UniformMesh::is_knot(double s) const noexcept {
  const double scaled = s * n_;
  return std::abs(scaled - std::round(scaled)) <= knot_tolerance(n_);
}

int UniformMesh::cell_of(double s, Side side) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::out_of_range("UniformMesh::cell_of: point " + std::to_string(s) + " outside [0,1]");
  }
  const double scaled = s * n_;
  const double nearest = std::round(scaled);
  if (std::abs(scaled - nearest) <= knot_tolerance(n_)) {
    const int m = static_cast<int>(nearest);
    const int cell = side == Side::left ? m - 1 : m;
    return std::clamp(cell, 0, n_ - 1);
  }
  return std::clamp(static_cast<int>(std::floor(scaled)), 0, n_ - 1);
}

UniformMesh build_mesh(int n) { return UniformMesh(n); }

// --- NodeSet ---------------------------------------------------------------

std::vector<double> NodeSet::equidistant_offsets(int r) {
  if (r < 0 || r > max_half_degree) {
    throw std::invalid_argument("NodeSet: half-degree r must lie in [0," + std::to_string(max_half_degree) +
                                "], got " + std::to_string(r));
  }
  if (r == 0) return {0.5};
  std::vector<double> zeta(static_cast<std::size_t>(2 * r + 1));
  for (int i = 0; i <= 2 * r; ++i) zeta[static_cast<std::size_t>(i)] = static_cast<double>(i) / (2 * r);
  return zeta;
}

NodeSet::NodeSet(UniformMesh mesh, int r) : NodeSet(std::move(mesh), r, equidistant_offsets(r)) {}

NodeSet::NodeSet(UniformMesh mesh, int r, std::vector<double> offsets)
    : mesh_(std::move(mesh)), r_(r), offsets_(std::move(offsets)) {
  if (r < 0 || r > max_half_degree) {
    throw std::invalid_argument("NodeSet: half-degree r must lie in [0," + std::to_string(max_half_degree) +
                                "], got " + std::to_string(r));
  }
  if (offsets_.size() != static_cast<std::size_t>(2 * r + 1)) {
    throw std::invalid_argument("NodeSet: expected " + std::to_string(2 * r + 1) + " offsets, got " +
                                std::to_string(offsets_.size()));
  }
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    if (!(offsets_[i] >= 0.0 && offsets_[i] <= 1.0)) throw std::invalid_argument("NodeSet: offsets must lie in [0,1]");
    if (i > 0 && !(offsets_[i] > offsets_[i - 1])) {
      throw std::invalid_argument("NodeSet: offsets must be strictly increasing");
    }
  }
  init();
}

void NodeSet::init() {
  const auto p = offsets_.size();
  bary_weights_.assign(p, 1.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t k = 0; k < p; ++k) {
      if (k != i) bary_weights_[i] /= offsets_[i] - offsets_[k];
    }
  }
  const double h = mesh_.width();
  nodes_.resize(static_cast<std::size_t>(mesh_.cells()) * p);
  for (int j = 0; j < mesh_.cells(); ++j) {
    for (std::size_t i = 0; i < p; ++i) {
      // Endpoint offsets land exactly on the knots.
      double tau = mesh_.knot(j) + offsets_[i] * h;
      if (offsets_[i] == 0.0) tau = mesh_.knot(j);
      if (offsets_[i] == 1.0) tau = mesh_.knot(j + 1);
      nodes_[static_cast<std::size_t>(j) * p + i] = tau;
    }
  }
}

double NodeSet::node(int cell, int i) const {
  if (cell < 0 || cell >= mesh_.cells() || i < 0 || i >= per_cell()) {
    throw std::out_of_range("NodeSet::node: index out of range");
  }
  return nodes_[static_cast<std::size_t>(cell * per_cell() + i)];
}

std::span<const double> NodeSet::cell_nodes(int cell) const {
  if (cell < 0 || cell >= mesh_.cells()) throw std::out_of_range("NodeSet::cell_nodes: cell out of range");
  return std::span<const double>(nodes_).subspan(static_cast<std::size_t>(cell * per_cell()),
                                                 static_cast<std::size_t>(per_cell()));
}

void NodeSet::lagrange_basis(int cell, double s, std::span<double> out) const {
  const auto p = offsets_.size();
  const double xi = (s - mesh_.knot(cell)) / mesh_.width();
  for (std::size_t i = 0; i < p; ++i) {
    if (xi == offsets_[i]) {
      std::fill(out.begin(), out.end(), 0.0);
      out[i] = 1.0;
      return;
    }
  }
  double denom = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    out[i] = bary_weights_[i] / (xi - offsets_[i]);
    denom += out[i];
  }
  for (std::size_t i = 0; i < p; ++i) out[i] /= denom;
}

double NodeSet::interpolate(int cell, std::span<const double> values, double s) const {
  const auto p = offsets_.size();
  const double xi = (s - mesh_.knot(cell)) / mesh_.width();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    const double diff = xi - offsets_[i];
    if (diff == 0.0) return values[i];
    const double c = bary_weights_[i] / diff;
    num += c * values[i];
    den += c;
  }
  return num / den;
}

NodeSet build_nodes(const UniformMesh& mesh, int r) { return NodeSet(mesh, r); }

// --- PiecewisePolynomial -----------------------------------------------------

PiecewisePolynomial::PiecewisePolynomial(NodeSet nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(nodes_.size())) {
    throw std::invalid_argument("PiecewisePolynomial: expected " + std::to_string(nodes_.size()) +
                                " nodal values, got " + std::to_string(values_.size()));
  }
}

std::span<const double> PiecewisePolynomial::cell_values(int cell) const {
  const auto p = static_cast<std::size_t>(nodes_.per_cell());
  return std::span<const double>(values_).subspan(static_cast<std::size_t>(cell) * p, p);
}

double PiecewisePolynomial::evaluate(double s, Side side) const {
  const int cell = nodes_.mesh().cell_of(s, side);
  return nodes_.interpolate(cell, cell_values(cell), s);
}

double PiecewisePolynomial::evaluate_in_cell(int cell, double s) const {
  return nodes_.interpolate(cell, cell_values(cell), s);
}

double evaluate(const PiecewisePolynomial& p, double s) { return p.evaluate(s, Side::left); }

double evaluate_one_sided(const PiecewisePolynomial& p, double s, Side side) { return p.evaluate(s, side); }

// --- sup-norm grid -----------------------------------------------------------

std::vector<SamplePoint> sup_norm_grid(const NodeSet& nodes) {
  constexpr int interior = 10;
  const auto& mesh = nodes.mesh();
  const double h = mesh.width();
  std::vector<SamplePoint> grid;
  grid.reserve(static_cast<std::size_t>(mesh.cells() * (2 + nodes.per_cell() + interior)));
  for (int j = 0; j < mesh.cells(); ++j) {
    const double left = mesh.knot(j);
    grid.push_back({left, Side::right});
    grid.push_back({mesh.knot(j + 1), Side::left});
    for (double tau : nodes.cell_nodes(j)) grid.push_back({tau, tau == left ? Side::right : Side::left});
    for (int k = 0; k < interior; ++k) grid.push_back({left + (k + 0.5) * h / interior, Side::left});
  }
  return grid;
}

double sup_norm(const SidedFunction& g, const NodeSet& nodes) {
  double result = 0.0;
  for (const auto& pt : sup_norm_grid(nodes)) result = std::max(result, std::abs(g(pt.s, pt.side)));
  return result;
}

}  // namespace urysohn
