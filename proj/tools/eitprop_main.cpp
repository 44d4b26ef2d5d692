// Command-line front end: velocities | propagate | intensity | memory | verify.
// Exit codes: 0 success, 1 validation error, 2 numerical failure.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "eitprop/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bosonized three-level medium: wave-packet splitting, probe statistics, "
               "multi-bit photon storage, and a truncated-Fock-space verifier"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;
  std::string kernel;
  unsigned seed = 12345;
  std::uint64_t value = 0;

  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory (default: current)");
  app.add_option("--threads", threads, "worker threads (overrides config)");
  app.add_option("--kernel", kernel, "phase-sum backend: auto|scalar|avx2 (overrides config)");
  app.add_option("--seed", seed, "seed for randomized verification checks");

  CLI::App* cmd_velocities =
      app.add_subcommand("velocities", "formula group velocities, regime, amplitude ratio");
  CLI::App* cmd_propagate =
      app.add_subcommand("propagate", "synthesize snapshots, track packet peaks");
  CLI::App* cmd_intensity =
      app.add_subcommand("intensity", "number-state mean intensity and spectrum");
  CLI::App* cmd_memory = app.add_subcommand("memory", "adiabatic write/read of a bit register");
  cmd_memory->add_option("-n,--value", value, "integer to store")->required();
  CLI::App* cmd_verify =
      app.add_subcommand("verify", "truncated-Fock-space identity and spectrum checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    eitprop::RunConfig config = eitprop::load_config(config_path);
    if (threads > 0) config.threads = threads;
    if (!kernel.empty()) config.backend = eitprop::kernels::backend_from_name(kernel);

    std::string summary;
    if (cmd_velocities->parsed()) {
      summary = eitprop::run_velocities(config, out_dir);
    } else if (cmd_propagate->parsed()) {
      summary = eitprop::run_propagate(config, out_dir);
    } else if (cmd_intensity->parsed()) {
      summary = eitprop::run_intensity(config, out_dir);
    } else if (cmd_memory->parsed()) {
      summary = eitprop::run_memory(config, value, out_dir);
    } else if (cmd_verify->parsed()) {
      summary = eitprop::run_verify(config, seed, out_dir);
    }
    std::cout << summary;
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
