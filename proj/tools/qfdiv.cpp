#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qfdiv/cli.hpp"
#include "qfdiv/error.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string check;
  std::string function;
  std::optional<long> trials;
};

void add_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "JSON config file");
  cmd->add_option("--seed", flags.seed, "Master seed override");
  cmd->add_option("--out", flags.out, "Report path (default: stdout)");
  cmd->add_option("--check", flags.check, "Run only this check id");
  cmd->add_option("--function", flags.function, "Run only this function id");
  cmd->add_option("--trials", flags.trials, "Trials per check");
}

int run_command(qfdiv::Command command, const Flags& flags) {
  qfdiv::RunConfig config = flags.config.empty() ? qfdiv::RunConfig{} : qfdiv::load_config(flags.config);
  config.command = command;
  if (flags.seed) config.suite.master_seed = *flags.seed;
  if (!flags.check.empty()) config.suite.check_filter = flags.check;
  if (!flags.function.empty()) config.suite.function_filter = flags.function;
  if (flags.trials) config.suite.trials = *flags.trials;
  if (!flags.out.empty()) config.output_path = flags.out;

  const qfdiv::Report report = qfdiv::run(config);
  const std::string text = qfdiv::render_report(report);
  if (config.output_path) {
    std::ofstream out(*config.output_path, std::ios::binary);
    if (!out) throw qfdiv::Error(qfdiv::ErrorKind::IoError, "cannot write " + *config.output_path);
    out << text;
    if (!out) throw qfdiv::Error(qfdiv::ErrorKind::IoError, "write failed for " + *config.output_path);
    std::cerr << "pass " << report.total.pass << ", fail " << report.total.fail << ", inconclusive "
              << report.total.inconclusive << "\n";
  } else {
    std::cout << text;
  }
  return qfdiv::exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum f-divergence verification tool"};
  app.set_version_flag("--version", std::string(qfdiv::kToolVersion));
  app.require_subcommand(1);

  Flags flags;
  std::optional<qfdiv::Command> chosen;
  const std::pair<const char*, const char*> commands[] = {
      {"verify", "Run the randomized property suites"},
      {"compute", "Evaluate a divergence, entropy or Klein bound"},
      {"search", "Estimate a capacity by random search"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_flags(cmd, flags);
    cmd->callback([&chosen, name = std::string(name)] { chosen = qfdiv::command_from_string(name); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qfdiv::kExitConfig;
  }

  try {
    return run_command(*chosen, flags);
  } catch (const qfdiv::Error& e) {
    std::cerr << "qfdiv: " << e.what() << "\n";
    return e.kind() == qfdiv::ErrorKind::IoError ? qfdiv::kExitIo : qfdiv::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "qfdiv: " << e.what() << "\n";
    return qfdiv::kExitConfig;
  }
}
