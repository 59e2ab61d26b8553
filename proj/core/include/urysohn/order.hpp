#pragma once

#include <span>

namespace urysohn {

/// Empirical convergence exponent between two refinements:
/// log(e_prev / e_cur) / log(n_cur / n_prev).
double observed_order(double e_prev, double e_cur, int n_prev, int n_cur);

/// Least-squares slope of log(error) against log(h), h = 1/n.
double loglog_slope(std::span<const int> n, std::span<const double> errors);

}  // namespace urysohn
