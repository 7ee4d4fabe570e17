#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "focklab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"focklab: numerical laboratory for generalized Fock spaces"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::string out_dir;
  for (const auto& name : focklab::cli::subcommands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config (object or array of objects)")->required();
    sub->add_option("--out", out_dir, "directory for result JSON and CSV files");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : focklab::cli::kConfigError;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  focklab::io::json config;
  try {
    config = focklab::io::read_json_file(config_path);
  } catch (const focklab::ConfigError& e) {
    std::cerr << "focklab: " << e.what() << "\n";
    return focklab::cli::kConfigError;
  }
  focklab::cli::RunOptions opt;
  if (!out_dir.empty()) opt.out_dir = out_dir;
  return focklab::cli::run(cmd, config, opt, std::cout);
}
