#ifndef EITPROP_CONFIG_HPP
#define EITPROP_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eitprop/fock.hpp"
#include "eitprop/kernels.hpp"
#include "eitprop/medium.hpp"
#include "eitprop/memory.hpp"
#include "eitprop/synthesis.hpp"

namespace eitprop {

struct XWindow {
  double min = 0.0;
  double max = 0.0;
  int samples = 0;

  void validate() const;
  std::vector<double> grid() const;
};

struct SweepConfig {
  /// omega_start as a multiple of g sqrt(N) at k0 (the "very large" end of
  /// the schedule, capped by convention at 10^3).
  double omega_start_over_g = 1000.0;
  /// duration as a multiple of 1 / big_theta_min over the occupied modes.
  double duration_theta_min = 1000.0;
  /// step as a fraction of 1 / big_theta_max.
  double dt_theta_max = 0.08;
  SweepShape shape = SweepShape::Cosine;
  int bits = 8;
  double mode_spacing = 0.02;
};

struct DistributionConfig {
  double peak = 1.0;
  double f = 0.0;  ///< 0: inherit pulse.f
  int count = 0;   ///< 0: inherit grid.count
};

struct SpectrumConfig {
  double omega_min = 0.0;
  double omega_max = 0.0;  ///< 0: auto window around the occupied lines
  int count = 256;
  double window_half_length = 0.0;  ///< 0: auto from resolution
};

struct FockConfig {
  int modes = 1;
  int cutoff = 3;
  std::vector<double> per_mode_g;  ///< empty: g sqrt(N) at k0 for every mode
  double tolerance = 1e-10;
};

/// One validated run description for every CLI command.
struct RunConfig {
  MediumParams medium;
  GaussianPulse pulse;
  ModeGrid grid;
  XWindow x_window;
  std::vector<double> times;
  int threads = 1;
  kernels::Backend backend = kernels::Backend::Auto;

  SweepConfig sweep;
  DistributionConfig distribution;
  SpectrumConfig spectrum;
  FockConfig fock;

  /// Cross-field consistency; throws std::invalid_argument with the
  /// offending field in the message.
  void validate() const;
};

/// Parse and validate a JSON config file. Accepts the dimensionless
/// conveniences documented in the README (coupling via n, pulse width via
/// d_over_lambda0, grid via half_width_sigmas, times via start/stop/count).
RunConfig load_config(const std::filesystem::path& path);

RunConfig config_from_json_text(const std::string& text);

}  // namespace eitprop

#endif
