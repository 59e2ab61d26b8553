#include "urysohn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace urysohn {

GaussRule gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one point, got " + std::to_string(m));
  GaussRule rule;
  rule.points.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= m; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(m - 1 - i);
    rule.points[lo] = -x;
    rule.points[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (m % 2 == 1) rule.points[static_cast<std::size_t>(m / 2)] = 0.0;
  return rule;
}

CompositeGrid::CompositeGrid(std::vector<double> breakpoints, GaussRule rule)
    : breakpoints_(std::move(breakpoints)), rule_(std::move(rule)) {
  if (breakpoints_.size() < 2) throw std::invalid_argument("CompositeGrid: need at least two breakpoints");
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw std::invalid_argument("CompositeGrid: breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1])) {
      throw std::invalid_argument("CompositeGrid: breakpoints must be strictly increasing");
    }
  }
  if (rule_.points.empty()) throw std::invalid_argument("CompositeGrid: empty quadrature rule");
}

CompositeGrid CompositeGrid::uniform(int cells, GaussRule rule) {
  if (cells < 1) throw std::invalid_argument("CompositeGrid::uniform: need at least one cell");
  std::vector<double> b(static_cast<std::size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i) b[static_cast<std::size_t>(i)] = static_cast<double>(i) / cells;
  return CompositeGrid(std::move(b), std::move(rule));
}

CompositeGrid CompositeGrid::with_breakpoint(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw std::out_of_range("CompositeGrid::with_breakpoint: point outside [0,1]");
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), s);
  if (it != breakpoints_.end() && *it == s) return *this;
  std::vector<double> b;
  b.reserve(breakpoints_.size() + 1);
  b.insert(b.end(), breakpoints_.begin(), it);
  b.push_back(s);
  b.insert(b.end(), it, breakpoints_.end());
  return CompositeGrid(std::move(b), rule_);
}

void CompositeGrid::map_cell(const GaussRule& rule, double a, double b, std::vector<QuadratureNode>& out) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t k = 0; k < rule.points.size(); ++k) {
    out.push_back({mid + half * rule.points[k], half * rule.weights[k]});
  }
}

std::vector<QuadratureNode> CompositeGrid::nodes() const {
  std::vector<QuadratureNode> out;
  out.reserve(static_cast<std::size_t>(cells()) * rule_.points.size());
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) map_cell(rule_, breakpoints_[i], breakpoints_[i + 1], out);
  return out;
}

double integrate(const RealFunction& g, const CompositeGrid& grid) {
  double sum = 0.0;
  for (const auto& q : grid.nodes()) sum += q.w * g(q.t);
  return sum;
}

double integrate_split(const RealFunction& g, const CompositeGrid& grid, double s) {
  return integrate(g, grid.with_breakpoint(s));
}

const CompositeGrid& reference_grid() {
  static const CompositeGrid grid = CompositeGrid::uniform(256, gauss_legendre(10));
  return grid;
}

double reference_integrate(const RealFunction& g) {
  static const std::vector<QuadratureNode> nodes = reference_grid().nodes();
  double sum = 0.0;
  for (const auto& q : nodes) sum += q.w * g(q.t);
  return sum;
}

double reference_integrate_split(const RealFunction& g, double s) { return integrate_split(g, reference_grid(), s); }

}  // namespace urysohn
