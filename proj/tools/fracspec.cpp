// Batch runner: fracspec <command> --config path.json [--out dir] [--seed N]

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fracspec/config.hpp"
#include "fracspec/error.hpp"
#include "fracspec/jobs.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet fractional Laplacian spectral laboratory"};
  std::string command;
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;

  std::string choices;
  for (auto c : fracspec::kCommands) choices += (choices.empty() ? "" : ", ") + std::string(c);
  app.add_option("command", command, "one of: " + choices)->required();
  app.add_option("--config", config_path, "job configuration (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "64-bit seed, overrides the config value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fracspec::kExitConfig;
  }

  try {
    std::ifstream f(config_path, std::ios::binary);
    const std::string raw((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    const fracspec::JobConfig cfg = fracspec::validate_config(raw, command, seed);
    const int code = fracspec::run_job(cfg, out_dir);
    if (code == fracspec::kExitInvariant) std::cerr << "fracspec: an asserted invariant failed\n";
    return code;
  } catch (const fracspec::ConfigError& e) {
    std::cerr << "fracspec: config error: " << e.what() << '\n';
    return fracspec::kExitConfig;
  } catch (const fracspec::InvariantError& e) {
    std::cerr << "fracspec: invariant failed: " << e.what() << '\n';
    return fracspec::kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "fracspec: " << e.what() << '\n';
    return 1;
  }
}
