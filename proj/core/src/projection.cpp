#include "urysohn/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "urysohn/order.hpp"

namespace urysohn {

PiecewisePolynomial project(const RealFunction& x, const NodeSet& nodes) {
  std::vector<double> values(static_cast<std::size_t>(nodes.size()));
  for (int k = 0; k < nodes.size(); ++k) values[static_cast<std::size_t>(k)] = x(nodes.node(k));
  return PiecewisePolynomial(nodes, std::move(values));
}

PiecewisePolynomial project(const RealFunction& x, const UniformMesh& mesh, int r) {
  return project(x, NodeSet(mesh, r));
}

DividedDifferenceTable::DividedDifferenceTable(std::vector<double> points, const RealFunction& value,
                                               const RealFunction& derivative)
    : abscissae_(std::move(points)) {
  if (abscissae_.empty()) throw std::invalid_argument("divided difference: no points");
  std::sort(abscissae_.begin(), abscissae_.end());
  const std::size_t m = abscissae_.size();
  for (std::size_t i = 2; i < m; ++i) {
    if (abscissae_[i] == abscissae_[i - 2]) {
      throw std::invalid_argument("divided difference: a point may repeat at most twice");
    }
  }

  // column holds [z_i, ..., z_{i+k}] for the current order k.
  std::vector<double> column(m);
  for (std::size_t i = 0; i < m; ++i) column[i] = value(abscissae_[i]);
  coefficients_.push_back(column[0]);
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t i = 0; i + k < m; ++i) {
      const double span = abscissae_[i + k] - abscissae_[i];
      if (span == 0.0) {
        // Only reachable for k == 1 since triple repeats are rejected.
        if (!derivative) throw std::invalid_argument("divided difference: repeated point needs a derivative");
        column[i] = derivative(abscissae_[i]);
      } else {
        column[i] = (column[i + 1] - column[i]) / span;
      }
    }
    coefficients_.push_back(column[0]);
  }
}

double DividedDifferenceTable::newton_value(double t) const {
  double acc = coefficients_.back();
  for (std::size_t k = coefficients_.size() - 1; k-- > 0;) acc = acc * (t - abscissae_[k]) + coefficients_[k];
  return acc;
}

double divided_difference(std::vector<double> points, const RealFunction& value, const RealFunction& derivative) {
  return DividedDifferenceTable(std::move(points), value, derivative).top();
}

double node_polynomial(const NodeSet& nodes, int cell, double t) {
  double product = 1.0;
  for (double tau : nodes.cell_nodes(cell)) product *= t - tau;
  return product;
}

InterpolationOrder interpolation_error_order(const RealFunction& x, int r, std::span<const int> n_list) {
  InterpolationOrder out;
  for (int n : n_list) {
    const NodeSet nodes(UniformMesh(n), r);
    const auto qx = project(x, nodes);
    const double err = sup_norm([&](double s, Side side) { return x(s) - qx.evaluate(s, side); }, nodes);
    out.n.push_back(n);
    out.errors.push_back(err);
  }
  const double largest = out.errors.empty() ? 0.0 : *std::max_element(out.errors.begin(), out.errors.end());
  out.exact = largest < 1e-13;
  if (!out.exact && out.n.size() >= 2) out.slope = loglog_slope(out.n, out.errors);
  return out;
}

}  // namespace urysohn
