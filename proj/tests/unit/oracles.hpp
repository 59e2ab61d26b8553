#pragma once

// Independent reference computations used only by the tests. None of these
// share code with the library's quadrature or projection.

#include <cmath>
#include <functional>

namespace oracle {

/// Composite trapezoid rule with `panels` equal panels on [a,b].
inline double trapezoid(const std::function<double(double)>& g, double a, double b, long panels = 1'000'000) {
  const double h = (b - a) / static_cast<double>(panels);
  double sum = 0.5 * (g(a) + g(b));
  for (long i = 1; i < panels; ++i) sum += g(a + static_cast<double>(i) * h);
  return sum * h;
}

/// Centered finite difference.
inline double central_difference(const std::function<double(double)>& g, double x, double step = 1e-6) {
  return (g(x + step) - g(x - step)) / (2.0 * step);
}

/// [a, b, c] g from the textbook recursion on distinct points.
inline double second_difference(const std::function<double(double)>& g, double a, double b, double c) {
  const double ab = (g(b) - g(a)) / (b - a);
  const double bc = (g(c) - g(b)) / (c - b);
  return (bc - ab) / (c - a);
}

/// [a, s, s] g as the limit eps -> 0 of [a, s, s + eps] g (Richardson on two
/// steps).
inline double confluent_limit(const std::function<double(double)>& g, double a, double s) {
  const double e = 1e-4;
  const double d1 = second_difference(g, a, s, s + e);
  const double d2 = second_difference(g, a, s, s + e / 2.0);
  return 2.0 * d2 - d1;
}

/// Least-squares slope of log(e) against log(1/n).
template <class N, class E>
double slope(const N& n, const E& e) {
  double mx = 0, my = 0;
  const auto m = static_cast<double>(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    mx += std::log(1.0 / n[i]);
    my += std::log(e[i]);
  }
  mx /= m;
  my /= m;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double x = std::log(1.0 / n[i]) - mx;
    sxy += x * (std::log(e[i]) - my);
    sxx += x * x;
  }
  return sxy / sxx;
}

}  // namespace oracle
