#include "urysohn_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace urysohn::cli {

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& msg) const {
    const auto mark = node.Mark();
    if (mark.is_null()) throw ConfigError(source_ + ": " + msg);
    throw ConfigError(source_ + ":" + std::to_string(mark.line + 1) + ":" + std::to_string(mark.column + 1) + ": " +
                      msg);
  }

  void expect_map(const YAML::Node& node, const std::string& what) const {
    if (!node.IsMap()) fail(node, what + " must be a mapping");
  }

  /// Rejects keys outside `allowed`.
  void check_keys(const YAML::Node& node, const std::set<std::string>& allowed, const std::string& where) const {
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        fail(kv.first, "unknown key '" + key + "' in " + where + " (allowed: " + list + ")");
      }
    }
  }

  template <class T>
  T scalar(const YAML::Node& node, const std::string& what) const {
    if (!node.IsScalar()) fail(node, what + " must be a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::BadConversion&) {
      fail(node, "cannot parse " + what + " from '" + node.Scalar() + "'");
    }
  }

  double real(const YAML::Node& node, const std::string& what) const {
    const double v = scalar<double>(node, what);
    if (!std::isfinite(v)) fail(node, what + " must be finite");
    return v;
  }

 private:
  std::string source_;
};

using KernelFactory = std::function<UrysohnKernel(const std::map<std::string, double>&)>;
using SolutionFactory = std::function<RealFunction(const std::map<std::string, double>&)>;

struct Family {
  std::set<std::string> params;
  std::map<std::string, double> defaults;
};

const std::map<std::string, std::pair<Family, KernelFactory>>& kernel_families() {
  static const std::map<std::string, std::pair<Family, KernelFactory>> families{
      {"zero", {{{}, {}}, [](const auto&) { return zero_kernel(); }}},
      {"reciprocal_sum",
       {{{"shift"}, {{"shift", 0.0}}}, [](const auto& p) { return reciprocal_sum_kernel(p.at("shift")); }}},
      {"green_hammerstein",
       {{{"shift"}, {{"shift", 1.0}}}, [](const auto& p) { return green_hammerstein_kernel(p.at("shift")); }}},
      {"linear_rank_one",
       {{{"scale"}, {{"scale", 1.0}}}, [](const auto& p) { return linear_rank_one_kernel(p.at("scale")); }}},
  };
  return families;
}

const std::map<std::string, std::pair<Family, SolutionFactory>>& solution_families() {
  static const std::map<std::string, std::pair<Family, SolutionFactory>> families{
      {"reciprocal",  // 1 / (s + shift)
       {{{"shift"}, {{"shift", 1.0}}},
        [](const auto& p) {
          const double a = p.at("shift");
          return RealFunction([a](double s) { return 1.0 / (s + a); });
        }}},
      {"bubble",  // s (1 - s) / (s + shift)
       {{{"shift"}, {{"shift", 1.0}}},
        [](const auto& p) {
          const double a = p.at("shift");
          return RealFunction([a](double s) { return s * (1.0 - s) / (s + a); });
        }}},
      {"linear",  // slope * s + intercept
       {{{"slope", "intercept"}, {{"slope", 1.0}, {"intercept", 0.0}}},
        [](const auto& p) {
          const double m = p.at("slope");
          const double c = p.at("intercept");
          return RealFunction([m, c](double s) { return m * s + c; });
        }}},
      {"exponential",  // exp(rate * s)
       {{{"rate"}, {{"rate", 1.0}}},
        [](const auto& p) {
          const double k = p.at("rate");
          return RealFunction([k](double s) { return std::exp(k * s); });
        }}},
  };
  return families;
}

template <class Factory>
auto build_family(const Reader& rd, const YAML::Node& node, const std::map<std::string, std::pair<Family, Factory>>& table,
                  const std::string& what) {
  rd.expect_map(node, what);
  rd.check_keys(node, {"name", "params"}, what);
  if (!node["name"]) rd.fail(node, what + " needs a 'name'");
  const auto name = rd.scalar<std::string>(node["name"], what + ".name");
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string list;
    for (const auto& [k, v] : table) list += (list.empty() ? "" : ", ") + k;
    rd.fail(node["name"], "unknown " + what + " '" + name + "' (available: " + list + ")");
  }
  const auto& [family, factory] = it->second;
  auto params = family.defaults;
  if (const auto p = node["params"]) {
    if (!p.IsNull()) {
      rd.expect_map(p, what + ".params");
      rd.check_keys(p, family.params, what + " '" + name + "' params");
      for (const auto& kv : p) params[kv.first.as<std::string>()] = rd.real(kv.second, kv.first.as<std::string>());
    }
  }
  return std::pair{name, factory(params)};
}

Problem build_problem(const Reader& rd, const YAML::Node& node) {
  if (node.IsScalar()) {
    const auto name = node.as<std::string>();
    try {
      return builtin_problem(name);
    } catch (const std::invalid_argument& e) {
      rd.fail(node, e.what());
    }
  }
  rd.expect_map(node, "problem");
  rd.check_keys(node, {"kernel", "exact", "ball_radius"}, "problem");
  if (!node["kernel"]) rd.fail(node, "inline problem needs a 'kernel'");
  if (!node["exact"]) rd.fail(node, "inline problem needs an 'exact' solution");
  Problem p;
  auto [kname, kernel] = build_family(rd, node["kernel"], kernel_families(), "kernel");
  auto [sname, exact] = build_family(rd, node["exact"], solution_families(), "exact");
  p.kernel = std::move(kernel);
  p.exact = exact;
  p.rhs = manufacture_rhs(p.kernel, exact);
  p.label = kname + "/" + sname;
  if (const auto b = node["ball_radius"]) {
    p.ball_radius = rd.real(b, "ball_radius");
    if (!(p.ball_radius > 0.0)) rd.fail(b, "ball_radius must be positive");
  }
  return p;
}

CellCount parse_cells(const Reader& rd, const YAML::Node& node, const std::string& what) {
  const auto v = rd.scalar<std::string>(node, what);
  if (v == "n") return CellCount::mesh;
  if (v == "n^2") return CellCount::mesh_squared;
  rd.fail(node, what + " must be 'n' or 'n^2', got '" + v + "'");
}

InitialGuess parse_guess(const Reader& rd, const YAML::Node& node) {
  const auto v = rd.scalar<std::string>(node, "initial_guess");
  if (v == "rhs_at_nodes") return InitialGuess::rhs_at_nodes;
  if (v == "exact_perturbed") return InitialGuess::exact_perturbed;
  rd.fail(node, "initial_guess must be 'rhs_at_nodes' or 'exact_perturbed', got '" + v + "'");
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "table") return Format::table;
  throw std::invalid_argument("format must be 'csv' or 'table', got '" + s + "'");
}

std::vector<std::string> kernel_family_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : kernel_families()) out.push_back(k);
  return out;
}

std::vector<std::string> solution_family_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : solution_families()) out.push_back(k);
  return out;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  const Reader rd(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                      ": " + e.msg);
  }
  if (!root.IsMap()) throw ConfigError(source + ": top level must be a mapping");
  rd.check_keys(root, {"problem", "r", "n_list", "quadrature", "newton", "output", "seed", "parallel"}, "config");
  for (const char* key : {"problem", "r", "n_list"}) {
    if (!root[key]) throw ConfigError(source + ": missing required key '" + key + "'");
  }

  RunConfig cfg;
  cfg.problem = build_problem(rd, root["problem"]);
  if (!cfg.problem.exact) rd.fail(root["problem"], "a convergence run needs a problem with an exact solution");

  cfg.r = rd.scalar<int>(root["r"], "r");
  if (cfg.r < 0 || cfg.r > max_half_degree) {
    rd.fail(root["r"], "r must be in [0, " + std::to_string(max_half_degree) + "]");
  }
  if (cfg.problem.node_offsets && cfg.r != 0) rd.fail(root["r"], "problem '" + cfg.problem.label + "' requires r = 0");

  const auto nl = root["n_list"];
  if (!nl.IsSequence() || nl.size() < 2) rd.fail(nl, "n_list must be a list of at least two mesh sizes");
  for (const auto& v : nl) {
    const int n = rd.scalar<int>(v, "n_list entry");
    if (n < 1) rd.fail(v, "mesh sizes must be >= 1");
    if (!cfg.n_list.empty() && n <= cfg.n_list.back()) rd.fail(v, "n_list must be strictly increasing");
    cfg.n_list.push_back(n);
  }

  if (const auto q = root["quadrature"]) {
    rd.expect_map(q, "quadrature");
    rd.check_keys(q, {"solve", "iterate", "split_diagonal"}, "quadrature");
    if (q["solve"]) cfg.quadrature.solve = parse_cells(rd, q["solve"], "quadrature.solve");
    if (q["iterate"]) cfg.quadrature.iterate = parse_cells(rd, q["iterate"], "quadrature.iterate");
    if (q["split_diagonal"]) cfg.quadrature.split_diagonal = rd.scalar<bool>(q["split_diagonal"], "split_diagonal");
  }

  if (const auto nw = root["newton"]) {
    rd.expect_map(nw, "newton");
    rd.check_keys(nw, {"residual_tol", "max_iter", "step_clip", "initial_guess", "perturbation"}, "newton");
    if (nw["residual_tol"]) cfg.newton.residual_tol = rd.real(nw["residual_tol"], "residual_tol");
    if (nw["max_iter"]) cfg.newton.max_iter = rd.scalar<int>(nw["max_iter"], "max_iter");
    if (nw["step_clip"]) cfg.newton.step_clip = rd.real(nw["step_clip"], "step_clip");
    if (nw["initial_guess"]) cfg.newton.initial_guess = parse_guess(rd, nw["initial_guess"]);
    if (nw["perturbation"]) cfg.newton.perturbation = rd.real(nw["perturbation"], "perturbation");
    try {
      cfg.newton.validate();
    } catch (const std::invalid_argument& e) {
      rd.fail(nw, e.what());
    }
  }

  if (const auto out = root["output"]) {
    rd.expect_map(out, "output");
    rd.check_keys(out, {"path", "format"}, "output");
    if (out["path"]) cfg.output_path = rd.scalar<std::string>(out["path"], "output.path");
    if (out["format"]) {
      try {
        cfg.format = parse_format(rd.scalar<std::string>(out["format"], "output.format"));
      } catch (const std::invalid_argument& e) {
        rd.fail(out["format"], e.what());
      }
    }
  }

  if (root["seed"]) cfg.seed = rd.scalar<std::uint64_t>(root["seed"], "seed");
  if (root["parallel"]) cfg.parallel = rd.scalar<bool>(root["parallel"], "parallel");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

}  // namespace urysohn::cli
