#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <urysohn/analysis.hpp>
#include <urysohn/kernels.hpp>
#include <urysohn/solvers.hpp>

namespace urysohn::cli {

enum class Format { csv, table };

/// Bad configuration. what() starts with "<source>:<line>:<column>: " when
/// the offending node is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Problem problem;
  int r = 0;
  std::vector<int> n_list;
  NewtonConfig newton;
  QuadraturePolicy quadrature;
  std::optional<std::string> output_path;
  Format format = Format::table;
  std::uint64_t seed = 0;
  bool parallel = false;
};

/// Parses a YAML run description. Every key is checked against the schema:
///
///   problem: example2                # or an inline kernel/exact pair
///   r: 0
///   n_list: [2, 4, 8]
///   quadrature: {solve: n, iterate: n^2, split_diagonal: true}
///   newton: {residual_tol: 1e-12, max_iter: 50, step_clip: 10,
///            initial_guess: rhs_at_nodes, perturbation: 1e-3}
///   output: {path: out.csv, format: csv}
///   seed: 1
///   parallel: false
///
/// problem, r and n_list are required.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Kernel and exact-solution families usable inline.
std::vector<std::string> kernel_family_names();
std::vector<std::string> solution_family_names();

Format parse_format(const std::string& s);

}  // namespace urysohn::cli
