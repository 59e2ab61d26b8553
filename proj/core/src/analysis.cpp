#include "urysohn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <stdexcept>

#include "urysohn/projection.hpp"

namespace urysohn {

double observed_order(double e_prev, double e_cur, int n_prev, int n_cur) {
  if (!(e_prev > 0.0) || !(e_cur > 0.0)) throw std::invalid_argument("observed_order: errors must be positive");
  if (n_prev < 1 || n_cur <= n_prev) throw std::invalid_argument("observed_order: need 1 <= n_prev < n_cur");
  return std::log(e_prev / e_cur) / std::log(static_cast<double>(n_cur) / n_prev);
}

double loglog_slope(std::span<const int> n, std::span<const double> errors) {
  if (n.size() != errors.size() || n.size() < 2) {
    throw std::invalid_argument("loglog_slope: need at least two (n, error) pairs");
  }
  double mx = 0.0;
  double my = 0.0;
  std::vector<double> x(n.size());
  std::vector<double> y(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(errors[i] > 0.0) || n[i] < 1) throw std::invalid_argument("loglog_slope: errors and n must be positive");
    x[i] = std::log(1.0 / n[i]);
    y[i] = std::log(errors[i]);
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("loglog_slope: all n equal");
  return sxy / sxx;
}

double sup_error(const SidedFunction& approx, const RealFunction& exact, const NodeSet& nodes) {
  return sup_norm([&](double s, Side side) { return approx(s, side) - exact(s); }, nodes);
}

double sup_error(const SidedFunction& approx, const RealFunction& exact, const UniformMesh& mesh) {
  return sup_error(approx, exact, NodeSet(mesh, 0));
}

std::string QuadraturePolicy::describe() const {
  const auto cells = [](CellCount c) { return c == CellCount::mesh ? std::string("n") : std::string("n^2"); };
  return "composite 2-point Gauss; solve cells " + cells(solve) + ", iterate cells " + cells(iterate) +
         (split_diagonal ? ", split at t = s for Green's-type kernels" : ", no diagonal split");
}

std::vector<double> ConvergenceReport::errors(Method m) const {
  std::vector<double> out;
  for (const auto& row : rows) {
    if (const auto& e = row.error[static_cast<std::size_t>(m)]) out.push_back(*e);
  }
  return out;
}

bool ConvergenceReport::has_failures() const {
  return std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.note.empty(); });
}

namespace {

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

using Solver = MethodSolution (*)(const DiscretizedOperator&, const NewtonConfig&);

/// Runs `solver`; on NonConvergence retries once from the coarse-mesh
/// solution projected onto the current nodes. For the modified method the
/// projection of the recovered x is exactly the nodal unknown Q_n x.
MethodSolution solve_with_continuation(Solver solver, const std::shared_ptr<const Problem>& problem, int r, int n,
                                       const QuadraturePolicy& policy, const NewtonConfig& cfg, bool continuation) {
  const auto make_op = [&](int m) {
    return DiscretizedOperator(problem, problem->nodes(UniformMesh(m), r), quad_cells_for(policy.solve, m),
                               policy.split_diagonal);
  };
  const auto op = make_op(n);
  try {
    return solver(op, cfg);
  } catch (const NonConvergence&) {
    if (!continuation || n < 2) throw;
    const auto coarse = solve_with_continuation(solver, problem, r, n / 2, policy, cfg, continuation);
    NewtonConfig retry = cfg;
    retry.initial_guess = InitialGuess::user_supplied;
    retry.user_values.clear();
    const auto& nodes = op.nodes();
    for (int j = 0; j < nodes.mesh().cells(); ++j) {
      for (int i = 0; i < nodes.per_cell(); ++i) {
        const double tau = nodes.node(j, i);
        retry.user_values.push_back(coarse.evaluate(tau, tau == nodes.mesh().knot(j) ? Side::right : Side::left));
      }
    }
    return solver(op, retry);
  }
}

ReportRow solve_row(const std::shared_ptr<const Problem>& problem, int r, int n, const NewtonConfig& cfg,
                    const StudyOptions& options) {
  ReportRow row;
  row.n = n;
  const auto& policy = options.quadrature;
  const auto nodes = problem->nodes(UniformMesh(n), r);
  const DiscretizedOperator iterate_op(problem, nodes, quad_cells_for(policy.iterate, n), policy.split_diagonal);
  const auto& exact = *problem->exact;
  const auto record = [&](Method m, const MethodSolution& sol) {
    row.error[static_cast<std::size_t>(m)] = sup_error(sol.evaluate, exact, nodes);
  };
  const auto note = [&](const std::string& what) { row.note += (row.note.empty() ? "" : "; ") + what; };

  try {
    const auto c = solve_with_continuation(&solve_collocation, problem, r, n, policy, cfg, options.continuation);
    record(Method::collocation, c);
    record(Method::iterated, iterate_solution(iterate_op, c));
  } catch (const std::runtime_error& e) {
    note(e.what());
  }
  try {
    const auto m = solve_with_continuation(&solve_modified, problem, r, n, policy, cfg, options.continuation);
    record(Method::modified, m);
    record(Method::iterated_modified, iterate_solution(iterate_op, m));
  } catch (const std::runtime_error& e) {
    note(e.what());
  }
  return row;
}

std::string guess_name(InitialGuess g) {
  switch (g) {
    case InitialGuess::rhs_at_nodes:
      return "rhs_at_nodes";
    case InitialGuess::exact_perturbed:
      return "exact_perturbed";
    case InitialGuess::user_supplied:
      return "user_supplied";
  }
  return "?";
}

}  // namespace

ConvergenceReport run_convergence_study(const Problem& problem, int r, const std::vector<int>& n_list,
                                        const NewtonConfig& cfg, const StudyOptions& options) {
  if (!problem.exact) throw std::invalid_argument("convergence study needs a problem with a known exact solution");
  if (n_list.size() < 2) throw std::invalid_argument("n_list needs at least two entries");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw std::invalid_argument("n_list entries must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw std::invalid_argument("n_list must be strictly increasing");
  }
  cfg.validate();

  auto shared = std::make_shared<const Problem>(problem);
  ConvergenceReport report;
  report.problem_label = problem.label;
  report.r = r;

  if (options.parallel) {
    std::vector<std::future<ReportRow>> futures;
    for (int n : n_list) {
      futures.push_back(std::async(std::launch::async, [&, n] { return solve_row(shared, r, n, cfg, options); }));
    }
    for (auto& f : futures) report.rows.push_back(f.get());
  } else {
    for (int n : n_list) report.rows.push_back(solve_row(shared, r, n, cfg, options));
  }

  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& prev = report.rows[i - 1];
    auto& cur = report.rows[i];
    for (std::size_t m = 0; m < method_count; ++m) {
      if (prev.error[m] && cur.error[m] && *prev.error[m] > 0.0 && *cur.error[m] > 0.0) {
        cur.order[m] = observed_order(*prev.error[m], *cur.error[m], prev.n, cur.n);
      }
    }
  }

  std::ostringstream newton;
  newton << "residual_tol=" << cfg.residual_tol << ", max_iter=" << cfg.max_iter
         << ", initial_guess=" << guess_name(cfg.initial_guess);
  report.metadata["quadrature"] = options.quadrature.describe();
  report.metadata["newton"] = newton.str();
  report.metadata["sup_grid"] = "knots (both sides), nodes, 10 interior midpoints per cell";
  return report;
}

std::string format_error(double e) { return format("%.2e", e); }

std::string format_order(double d) { return format("%.2f", d); }

std::string to_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "n,e_C,delta_C,e_S,delta_S,e_M,delta_M,e_IM,delta_IM\n";
  for (const auto& row : report.rows) {
    out << row.n;
    for (std::size_t m = 0; m < method_count; ++m) {
      out << ',' << (row.error[m] ? format_error(*row.error[m]) : "");
      out << ',' << (row.order[m] ? format_order(*row.order[m]) : "");
    }
    out << '\n';
  }
  return out.str();
}

std::string to_table(const ConvergenceReport& report) {
  std::ostringstream out;
  char line[256];
  out << report.problem_label << ", r = " << report.r << "\n";
  std::snprintf(line, sizeof line, "%4s | %10s %7s | %10s %7s | %10s %7s | %10s %7s\n", "n", "e_C", "delta_C", "e_S",
                "delta_S", "e_M", "delta_M", "e_IM", "delta_IM");
  out << line;
  out << std::string(std::string(line).size() - 1, '-') << "\n";
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%4d", row.n);
    out << line;
    for (std::size_t m = 0; m < method_count; ++m) {
      const std::string e = row.error[m] ? format_error(*row.error[m]) : "-";
      const std::string d = row.order[m] ? format_order(*row.order[m]) : "";
      std::snprintf(line, sizeof line, " | %10s %7s", e.c_str(), d.c_str());
      out << line;
    }
    out << "\n";
    if (!row.note.empty()) out << "     note: " << row.note << "\n";
  }
  for (const auto& [key, value] : report.metadata) out << "# " << key << ": " << value << "\n";
  return out.str();
}

}  // namespace urysohn
