#pragma once

// Published reference tables for the two worked examples and the tolerance
// checks applied to a computed report.

#include <array>
#include <string>
#include <vector>

#include "urysohn/analysis.hpp"
#include "urysohn/kernels.hpp"

namespace urysohn {

/// A printed convergence table: errors[m][row] and orders[m][row - 1],
/// indexed by Method.
struct PublishedTable {
  int id = 0;
  std::vector<int> n;
  std::array<std::vector<double>, method_count> errors;
  std::array<std::vector<double>, method_count> orders;
};

const PublishedTable& published_table(int id);

/// Everything needed to regenerate a table.
struct TablePreset {
  int id = 0;
  Problem problem;
  int r = 0;
  std::vector<int> n;
  QuadraturePolicy quadrature;
};

/// Throws std::invalid_argument unless id is 1 or 2.
TablePreset table_preset(int id);

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

bool all_passed(const std::vector<CriterionResult>& results);

/// Table 1: every error within 25% and every order within 0.15 for n >= 8.
/// Table 2: every error within 40%, mean order over the last three rows
/// within 0.3 of (0.9, 2.0, 2.8, 3.9), and least-squares slopes over
/// n = 4..12 of at least (0.8, 1.8, 2.6, 3.5).
std::vector<CriterionResult> check_table_reproduction(const ConvergenceReport& report, int id);

/// Recomputes every printed order from the printed errors (tolerance 0.01).
CriterionResult check_printed_orders();

}  // namespace urysohn
