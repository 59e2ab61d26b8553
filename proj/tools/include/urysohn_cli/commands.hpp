#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "urysohn_cli/config.hpp"

namespace urysohn::cli {

/// Process exit codes.
enum ExitCode : int { exit_ok = 0, exit_error = 1, exit_check_failed = 2 };

struct CommonOptions {
  std::optional<std::string> output;  ///< report destination; stdout if empty
  std::optional<Format> format;       ///< overrides the config's format
  bool parallel = false;
  bool dry_run = false;
};

/// Regenerates a published table and checks it against the printed values.
/// The report goes to the output, PASS/FAIL lines to `log`.
int cmd_table(int id, const CommonOptions& opts, std::ostream& out, std::ostream& log);

/// Runs a property suite and prints one PASS/FAIL line per check.
int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& out);

/// Convergence study described by a config file.
int cmd_run(const std::string& config_path, const CommonOptions& opts, std::ostream& out, std::ostream& log);

}  // namespace urysohn::cli
