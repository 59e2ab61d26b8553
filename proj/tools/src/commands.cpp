#include "urysohn_cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include <urysohn/published.hpp>
#include <urysohn/verification.hpp>

namespace urysohn::cli {

namespace {

void print_plan(std::ostream& out, const std::string& label, int r, const std::vector<int>& n_list,
                const QuadraturePolicy& quadrature, const NewtonConfig& newton) {
  out << "problem: " << label << "\n";
  out << "r: " << r << "\n";
  out << "n:";
  for (int n : n_list) out << ' ' << n;
  out << "\n";
  out << "quadrature: " << quadrature.describe() << "\n";
  out << "newton: residual_tol=" << newton.residual_tol << ", max_iter=" << newton.max_iter << "\n";
  out << "planned solves: " << 2 * n_list.size() << " (C and M per n), no solver invoked\n";
}

/// Writes the report to opts.output, or to `out` when no path was given.
void emit(const ConvergenceReport& report, Format format, const std::optional<std::string>& path, std::ostream& out) {
  const std::string text = format == Format::csv ? to_csv(report) : to_table(report);
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path);
  if (!file) throw std::runtime_error("cannot write " + *path);
  file << text;
  if (!file) throw std::runtime_error("error writing " + *path);
}

void print_results(const std::vector<CriterionResult>& results, std::ostream& log) {
  for (const auto& r : results) log << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
}

}  // namespace

int cmd_table(int id, const CommonOptions& opts, std::ostream& out, std::ostream& log) {
  const TablePreset preset = table_preset(id);
  const NewtonConfig newton;
  if (opts.dry_run) {
    print_plan(out, preset.problem.label, preset.r, preset.n, preset.quadrature, newton);
    return exit_ok;
  }
  StudyOptions study;
  study.quadrature = preset.quadrature;
  study.parallel = opts.parallel;
  const auto report = run_convergence_study(preset.problem, preset.r, preset.n, newton, study);
  emit(report, opts.format.value_or(Format::table), opts.output, out);
  if (report.has_failures()) {
    log << "solver failure:\n";
    for (const auto& row : report.rows) {
      if (!row.note.empty()) log << "  n=" << row.n << ": " << row.note << "\n";
    }
    return exit_error;
  }
  const auto results = check_table_reproduction(report, id);
  print_results(results, log);
  return all_passed(results) ? exit_ok : exit_check_failed;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& out) {
  const auto results = run_suite(suite, seed);
  print_results(results, out);
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
  out << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " checks passed\n";
  return failed == 0 ? exit_ok : exit_check_failed;
}

int cmd_run(const std::string& config_path, const CommonOptions& opts, std::ostream& out, std::ostream& log) {
  const RunConfig cfg = load_config(config_path);
  if (opts.dry_run) {
    print_plan(out, cfg.problem.label, cfg.r, cfg.n_list, cfg.quadrature, cfg.newton);
    return exit_ok;
  }
  StudyOptions study;
  study.quadrature = cfg.quadrature;
  study.parallel = opts.parallel || cfg.parallel;
  auto report = run_convergence_study(cfg.problem, cfg.r, cfg.n_list, cfg.newton, study);
  // The study is deterministic; the seed is recorded so a run can be paired
  // with `verify --seed`.
  report.metadata["seed"] = std::to_string(cfg.seed);
  emit(report, opts.format.value_or(cfg.format), opts.output ? opts.output : cfg.output_path, out);
  if (report.has_failures()) {
    for (const auto& row : report.rows) {
      if (!row.note.empty()) log << "n=" << row.n << ": " << row.note << "\n";
    }
    return exit_error;
  }
  return exit_ok;
}

}  // namespace urysohn::cli
