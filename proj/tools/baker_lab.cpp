// baker-lab <command> --config <path> [--key value ...] [--seed <u64>]

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "bakerlab/commands.hpp"

using bakerlab::ExperimentConfig;
namespace cli = bakerlab::cli;

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on attracting fixed points escaping into Baker domains"};
  std::string command;
  std::string config_path;
  std::string seed;
  app.add_option("command", command, "render | trace | perturb | classify | verify");
  app.add_option("--config", config_path, "key = value experiment file");
  app.add_option("--seed", seed, "u64 seed for property-test sampling");
  app.allow_extras();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInvalidConfig;
  }

  ExperimentConfig config;
  try {
    if (!config_path.empty()) config = ExperimentConfig::from_file(config_path);

    // Remaining arguments are --key value (or --key=value) overrides.
    const std::vector<std::string> extras = app.remaining();
    for (std::size_t i = 0; i < extras.size(); ++i) {
      const std::string& arg = extras[i];
      if (arg.rfind("--", 0) != 0) throw bakerlab::ConfigError("unexpected argument '" + arg + "'");
      const std::string body = arg.substr(2);
      if (const auto eq = body.find('='); eq != std::string::npos) {
        config.set(body.substr(0, eq), body.substr(eq + 1));
      } else {
        if (i + 1 >= extras.size()) throw bakerlab::ConfigError("missing value for --" + body);
        config.set(body, extras[++i]);
      }
    }
  } catch (const bakerlab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kInvalidConfig;
  }
  if (!command.empty()) config.set("command", command);
  if (!seed.empty()) config.set("seed", seed);
  if (config.command().empty()) {
    std::cerr << app.help();
    return cli::kInvalidConfig;
  }

  return cli::run_command(config, std::cout, std::cerr);
}
