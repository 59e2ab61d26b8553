#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <urysohn/verification.hpp>

#include "urysohn_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace urysohn::cli;

  CLI::App app{"Collocation-type solvers for Urysohn integral equations"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string output;
  std::string format;
  app.add_option("--output,-o", output, "Write the report to this file instead of stdout");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "table"}));
  app.add_flag("--parallel", opts.parallel, "Solve the rows of a study concurrently");
  app.add_flag("--dry-run", opts.dry_run, "Print the planned runs without solving");

  int table_id = 0;
  // Global options may also follow the subcommand.
  app.fallthrough();

  auto* table = app.add_subcommand("table", "Regenerate a published convergence table");
  table->add_option("id", table_id, "Table number")->required()->check(CLI::IsMember({1, 2}));

  std::string suite;
  std::uint64_t seed = urysohn::default_seed;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"projection", "lemmas", "propositions", "conclusion", "all"}));
  verify->add_option("--seed", seed, "Seed for randomized checks");

  std::string config;
  auto* run = app.add_subcommand("run", "Convergence study from a YAML config");
  run->add_option("--config", config, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_error;
  }

  if (!output.empty()) opts.output = output;
  if (!format.empty()) opts.format = parse_format(format);

  try {
    if (*table) return cmd_table(table_id, opts, std::cout, std::cerr);
    if (*verify) return cmd_verify(suite, seed, std::cout);
    return cmd_run(config, opts, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
}
