#pragma once

// Error measurement, observed orders and convergence studies.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "urysohn/kernels.hpp"
#include "urysohn/mesh.hpp"
#include "urysohn/operators.hpp"
#include "urysohn/order.hpp"
#include "urysohn/solvers.hpp"

namespace urysohn {

/// max |approx - exact| over sup_norm_grid(nodes), taking both one-sided
/// limits of approx at the knots.
double sup_error(const SidedFunction& approx, const RealFunction& exact, const NodeSet& nodes);
double sup_error(const SidedFunction& approx, const RealFunction& exact, const UniformMesh& mesh);

/// How the integrals of a study are discretized.
struct QuadraturePolicy {
  CellCount solve = CellCount::mesh;    ///< C and M solves
  CellCount iterate = CellCount::mesh;  ///< S and IM evaluations
  bool split_diagonal = true;

  std::string describe() const;
};

struct StudyOptions {
  QuadraturePolicy quadrature;
  /// Solve rows concurrently. Results are identical either way.
  bool parallel = false;
  /// On NonConvergence, retry from the solution at n/2 projected up.
  bool continuation = true;
};

inline constexpr std::size_t method_count = 4;

struct ReportRow {
  int n = 0;
  std::array<std::optional<double>, method_count> error;  ///< indexed by Method
  std::array<std::optional<double>, method_count> order;  ///< absent on the first row
  std::string note;                                       ///< solver failures, if any
};

struct ConvergenceReport {
  std::string problem_label;
  int r = 0;
  std::vector<ReportRow> rows;
  std::map<std::string, std::string> metadata;

  /// Column of errors for one method (absent entries skipped).
  std::vector<double> errors(Method m) const;
  bool has_failures() const;
};

/// Solves C and M, derives S and IM, measures the four sup errors and the
/// observed orders between consecutive rows. Requires problem.exact.
ConvergenceReport run_convergence_study(const Problem& problem, int r, const std::vector<int>& n_list,
                                        const NewtonConfig& cfg, const StudyOptions& options = {});

/// CSV with columns n,e_C,delta_C,e_S,delta_S,e_M,delta_M,e_IM,delta_IM.
std::string to_csv(const ConvergenceReport& report);
/// Aligned plain-text table followed by the metadata.
std::string to_table(const ConvergenceReport& report);

/// 3 significant digits in scientific notation, e.g. "1.93e-01".
std::string format_error(double e);
/// Two decimals, e.g. "2.01".
std::string format_order(double d);

}  // namespace urysohn
