#include "eitprop/runner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "eitprop/fluctuations.hpp"
#include "eitprop/io.hpp"

namespace eitprop {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

ordered_json velocity_summary(const MediumParams& medium) {
  const GroupVelocities v = group_velocities(medium);
  const ModeMixing mix = mixing(medium, medium.k0);
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["regime"] = to_string(split_regime(medium));
  j["shift_fraction"] = v.shift_fraction;
  j["v_plus"] = v.v_plus;
  j["v_zero"] = v.v_zero;
  j["v_minus"] = v.v_minus;
  j["c"] = medium.c;
  j["n_dimensionless"] = std::isfinite(mix.n_dimensionless)
                             ? ordered_json(mix.n_dimensionless)
                             : ordered_json("inf");
  j["theta_k0"] = mix.theta;
  j["big_theta_k0"] = mix.big_theta;
  if (medium.omega > 0.0) {
    j["amplitude_ratio"] = amplitude_ratio(medium);
    if (medium.coupling_form == CouplingForm::LinearInK) {
      const AnalyticCoefficients co = analytic_coefficients(medium);
      j["analytic"] = {{"coupling_ratio", co.coupling_ratio},
                       {"dressed_omega0", co.dressed_omega0},
                       {"chirp_split", co.chirp_split},
                       {"velocity_shift", co.velocity_shift},
                       {"chirp_normal", co.chirp_normal},
                       {"carrier_v_plus", co.carrier_v_plus},
                       {"carrier_v_minus", co.carrier_v_minus}};
    }
  } else {
    j["amplitude_ratio"] = nullptr;
  }
  return j;
}

std::string write_summary(const ordered_json& j, const std::filesystem::path& out_dir,
                          const char* name = "summary.json") {
  std::string text = j.dump(2);
  text += '\n';
  io::write_file_atomic(out_dir / name, text);
  return text;
}

void append_snapshot_rows(io::CsvBuilder& csv, const FieldSnapshot& s) {
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    csv.add(s.t);
    csv.add(s.x[i]);
    csv.add(s.e0[i].real());
    csv.add(s.e0[i].imag());
    csv.add(std::abs(s.e0[i]));
    csv.add(s.e_plus[i].real());
    csv.add(s.e_plus[i].imag());
    csv.add(std::abs(s.e_plus[i]));
    csv.add(s.e_minus[i].real());
    csv.add(s.e_minus[i].imag());
    csv.add(std::abs(s.e_minus[i]));
    csv.end_row();
  }
}

const std::vector<std::string> kSnapshotHeader = {
    "t",         "x",          "re_e0",    "im_e0",    "abs_e0",  "re_e_plus",
    "im_e_plus", "abs_e_plus", "re_e_minus", "im_e_minus", "abs_e_minus"};

double relative_l2(const std::vector<Complex>& test, const std::vector<Complex>& ref) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    num += std::norm(test[i] - ref[i]);
    den += std::norm(ref[i]);
  }
  if (den <= 1e-300) return 0.0;
  return std::sqrt(num / den);
}

}  // namespace

std::string run_velocities(const RunConfig& config, const std::filesystem::path& out_dir) {
  config.validate();
  return write_summary(velocity_summary(config.medium), out_dir);
}

std::string run_propagate(const RunConfig& config, const std::filesystem::path& out_dir) {
  config.validate();
  FieldSynthesizer synth(config.medium, config.pulse, config.grid, config.backend);
  synth.set_threads(config.threads);
  const std::vector<double> x = config.x_window.grid();
  synth.normalize(x);

  const bool with_analytic =
      config.medium.omega > 0.0 && config.medium.coupling_form == CouplingForm::LinearInK;

  io::CsvBuilder csv(kSnapshotHeader);
  io::CsvBuilder csv_analytic(kSnapshotHeader);
  std::vector<FieldSnapshot> snapshots;
  std::array<double, 3> l2_max{0.0, 0.0, 0.0};

  for (double t : config.times) {
    FieldSnapshot snap = synth.quadrature(x, t);
    append_snapshot_rows(csv, snap);
    if (with_analytic) {
      const FieldSnapshot approx = synth.analytic(x, t);
      append_snapshot_rows(csv_analytic, approx);
      l2_max[0] = std::max(l2_max[0], relative_l2(approx.e0, snap.e0));
      l2_max[1] = std::max(l2_max[1], relative_l2(approx.e_plus, snap.e_plus));
      l2_max[2] = std::max(l2_max[2], relative_l2(approx.e_minus, snap.e_minus));
    }
    snapshots.push_back(std::move(snap));
  }

  io::write_file_atomic(out_dir / "snapshots.csv", csv.str());
  if (with_analytic)
    io::write_file_atomic(out_dir / "snapshots_analytic.csv", csv_analytic.str());

  ordered_json j = velocity_summary(config.medium);
  j["kernel"] = kernels::backend_name(synth.backend());
  j["modes"] = config.grid.count;
  j["x_samples"] = config.x_window.samples;
  j["snapshots"] = config.times.size();

  if (config.times.size() >= 3) {
    const PacketTrack track = track_velocities(snapshots);
    j["fitted"] = {{"v_e0", track.fitted_velocity[0]},
                   {"v_e_plus", track.fitted_velocity[1]},
                   {"v_e_minus", track.fitted_velocity[2]},
                   {"residual_rms_e0", track.fit_residual_rms[0]},
                   {"residual_rms_e_plus", track.fit_residual_rms[1]},
                   {"residual_rms_e_minus", track.fit_residual_rms[2]}};
    const auto& h = track.peak_heights[0];
    const auto [lo, hi] = std::minmax_element(h.begin(), h.end());
    j["e0_peak_height_variation"] = (*hi - *lo) / *hi;
    if (!track.warnings.empty()) j["warnings"] = track.warnings;
  } else {
    j["fitted"] = nullptr;
  }

  // measured component amplitude ratio at t = 0 (paper claim: n/2)
  {
    const FieldSnapshot snap0 = synth.quadrature(x, 0.0);
    double peak0 = 0.0, peak_split = 0.0;
    for (std::size_t i = 0; i < snap0.x.size(); ++i) {
      peak0 = std::max(peak0, std::abs(snap0.e0[i]));
      peak_split = std::max(peak_split, std::abs(snap0.e_plus[i]));
    }
    j["measured_amplitude_ratio"] = peak0 > 0.0 ? ordered_json(peak_split / peak0)
                                                : ordered_json(nullptr);
  }

  if (with_analytic) {
    j["analytic_vs_quadrature_l2"] = {
        {"e0", l2_max[0]}, {"e_plus", l2_max[1]}, {"e_minus", l2_max[2]}};
  } else {
    j["analytic_vs_quadrature_l2"] = nullptr;
  }
  return write_summary(j, out_dir);
}

std::string run_intensity(const RunConfig& config, const std::filesystem::path& out_dir) {
  config.validate();
  const double f_dist = config.distribution.f > 0.0 ? config.distribution.f : config.pulse.f;
  GaussianPulse dist_pulse = config.pulse;
  dist_pulse.f = f_dist;
  const ModeGrid grid = config.distribution.count > 0
                            ? ModeGrid::around(dist_pulse, config.distribution.count)
                            : config.grid;
  const NumberDistribution dist =
      NumberDistribution::gaussian(grid, config.medium.k0, f_dist, config.distribution.peak);

  io::CsvBuilder csv({"t", "intensity"});
  double i_min = std::numeric_limits<double>::infinity();
  double i_max = 0.0;
  for (double t : config.times) {
    const double value = mean_intensity(config.medium, dist, t);
    i_min = std::min(i_min, value);
    i_max = std::max(i_max, value);
    csv.add(t);
    csv.add(value);
    csv.end_row();
  }
  io::write_file_atomic(out_dir / "intensity.csv", csv.str());

  double omega_lo = config.spectrum.omega_min;
  double omega_hi = config.spectrum.omega_max;
  if (omega_hi <= omega_lo) {
    omega_lo = grid.k_min * config.medium.c;
    omega_hi = grid.k_max * config.medium.c;
  }
  std::vector<double> omega(config.spectrum.count);
  for (int i = 0; i < config.spectrum.count; ++i)
    omega[i] = omega_lo + (omega_hi - omega_lo) * i /
                              static_cast<double>(std::max(1, config.spectrum.count - 1));
  SpectrumOptions opts;
  opts.window_half_length = config.spectrum.window_half_length;
  opts.backend = config.backend;
  const std::vector<double> s =
      intensity_spectrum(config.medium, dist, config.times.front(), omega, opts);
  io::CsvBuilder spec_csv({"omega", "s"});
  for (std::size_t i = 0; i < omega.size(); ++i) {
    spec_csv.add(omega[i]);
    spec_csv.add(s[i]);
    spec_csv.end_row();
  }
  io::write_file_atomic(out_dir / "spectrum.csv", spec_csv.str());

  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["intensity_initial"] = mean_intensity(config.medium, dist, 0.0);
  j["intensity_min"] = i_min;
  j["intensity_max"] = i_max;
  j["modulation_peak_to_peak_over_mean"] =
      i_max > 0.0 ? (i_max - i_min) / (0.5 * (i_max + i_min)) : 0.0;
  j["spectrum_at_t"] = config.times.front();
  j["modes"] = grid.count;
  return write_summary(j, out_dir);
}

std::string run_memory(const RunConfig& config, std::uint64_t value,
                       const std::filesystem::path& out_dir) {
  config.validate();
  const BitRegister reg = encode(value, config.sweep.bits);
  const RegisterLayout layout{config.sweep.mode_spacing};

  const double g_k0 = std::sqrt(config.medium.coupling_g2n);
  double g_max = g_k0;
  double theta_min = std::numeric_limits<double>::infinity();
  for (int bit = 0; bit < reg.length(); ++bit) {
    const double g = std::sqrt(config.medium.coupling_at(layout.k_of_bit(config.medium, bit)));
    g_max = std::max(g_max, g);
    if (reg.bits[bit]) theta_min = std::min(theta_min, g);
  }
  if (!std::isfinite(theta_min)) theta_min = g_k0;  // empty register

  const double omega_start = config.sweep.omega_start_over_g * g_k0;
  const double duration = config.sweep.duration_theta_min / theta_min;
  const double dt = config.sweep.dt_theta_max / std::hypot(g_max, omega_start);

  const SweepProfile write_profile{omega_start, 0.0, duration, config.sweep.shape};
  const SweepProfile read_profile{0.0, omega_start, duration, config.sweep.shape};

  std::vector<SweepTrace> traces;
  const TransferReport write_report =
      write_sweep(reg, config.medium, write_profile, dt, layout, &traces);
  const TransferReport read_report = read_sweep(reg, config.medium, read_profile, dt, layout);

  // chained round trip: read back the states the write actually produced
  double round_trip = 1.0;
  std::vector<double> per_mode_round_trip(reg.length(), 1.0);
  for (int bit = 0; bit < reg.length(); ++bit) {
    if (!reg.bits[bit]) continue;
    const double g = std::sqrt(config.medium.coupling_at(layout.k_of_bit(config.medium, bit)));
    const std::array<Complex, 3> start{Complex(1.0), Complex(0.0), Complex(0.0)};
    const std::array<Complex, 3> stored = sweep_mode(start, g, write_profile, dt);
    const std::array<Complex, 3> back = sweep_mode(stored, g, read_profile, dt);
    per_mode_round_trip[bit] = std::norm(back[0]);
    round_trip *= per_mode_round_trip[bit];
  }

  io::CsvBuilder csv({"t", "bit", "k", "pop_photon", "pop_exciton_a", "pop_exciton_c",
                      "dark_overlap"});
  for (int bit = 0; bit < reg.length(); ++bit) {
    const SweepTrace& trace = traces[bit];
    for (std::size_t i = 0; i < trace.t.size(); ++i) {
      csv.add(trace.t[i]);
      csv.add(static_cast<double>(bit));
      csv.add(layout.k_of_bit(config.medium, bit));
      csv.add(trace.populations[i][0]);
      csv.add(trace.populations[i][1]);
      csv.add(trace.populations[i][2]);
      csv.add(trace.dark_overlap[i]);
      csv.end_row();
    }
  }
  io::write_file_atomic(out_dir / "populations.csv", csv.str());

  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["value"] = value;
  j["bits"] = config.sweep.bits;
  j["sweep"] = {{"shape", to_string(config.sweep.shape)},
                {"omega_start", omega_start},
                {"duration", duration},
                {"dt", dt},
                {"theta_min", theta_min}};
  j["write_fidelity"] = write_report.fidelity;
  j["read_fidelity"] = read_report.fidelity;
  j["round_trip_fidelity"] = round_trip;
  j["leakage_a"] = write_report.leakage_a;
  ordered_json per_mode = ordered_json::array();
  for (int bit = 0; bit < reg.length(); ++bit) {
    const ModeTransfer& mt = write_report.per_mode[bit];
    per_mode.push_back({{"bit", bit},
                        {"occupied", static_cast<bool>(reg.bits[bit])},
                        {"k", mt.k},
                        {"write_fidelity", mt.fidelity},
                        {"read_fidelity", read_report.per_mode[bit].fidelity},
                        {"round_trip_fidelity", per_mode_round_trip[bit]},
                        {"leakage_a", mt.leakage_a},
                        {"norm_drift", mt.norm_drift}});
  }
  j["per_mode"] = per_mode;
  return write_summary(j, out_dir, "report.json");
}

std::string run_verify(const RunConfig& config, unsigned seed,
                       const std::filesystem::path& out_dir) {
  config.validate();
  fock::FockSpace space;
  space.modes = config.fock.modes;
  space.cutoff = config.fock.cutoff;
  std::vector<double> per_mode_g = config.fock.per_mode_g;
  if (per_mode_g.empty())
    per_mode_g.assign(space.modes, std::sqrt(config.medium.coupling_g2n));
  const fock::FockModel model(space, config.medium, per_mode_g);
  const double tol = config.fock.tolerance;

  bool pass = true;
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["dim"] = model.dim();
  j["modes"] = space.modes;
  j["cutoff"] = space.cutoff;
  j["tolerance"] = tol;
  j["seed"] = seed;

  ordered_json comms = ordered_json::array();
  for (const fock::IdentityCheck& c : model.check_commutators(tol)) {
    comms.push_back({{"identity", c.name},
                     {"residual", c.residual},
                     {"tolerance", c.tolerance},
                     {"masked_fraction", c.masked_fraction},
                     {"pass", c.pass}});
    pass = pass && c.pass;
  }
  j["commutators"] = comms;

  const fock::SpectrumReport spectrum = model.verify_spectrum(tol);
  ordered_json ladders = ordered_json::array();
  for (const fock::IdentityCheck& c : spectrum.ladder_states) {
    ladders.push_back({{"state", c.name},
                       {"residual", c.residual},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
  }
  ordered_json blocks = ordered_json::array();
  for (const fock::SpectrumBlockResult& b : spectrum.blocks) {
    blocks.push_back({{"excitations", b.excitations},
                      {"dim", b.dim},
                      {"max_deviation", b.max_deviation},
                      {"symmetry_deviation", b.symmetry_deviation},
                      {"pass", b.pass}});
  }
  j["spectrum"] = {{"ladder_states", ladders},
                   {"ladder_exclusions", spectrum.ladder_exclusions},
                   {"blocks", blocks},
                   {"dark_dimension", spectrum.dark_dimension},
                   {"expected_dark_dimension", space.modes},
                   {"pass", spectrum.pass}};
  pass = pass && spectrum.pass;

  ordered_json subdyn = ordered_json::array();
  for (const fock::SubdynamicsCheck& c : model.verify_subdynamics(tol, seed)) {
    ordered_json terms = ordered_json::array();
    for (const fock::ExpansionTerm& term : c.terms)
      terms.push_back({{"op", term.name}, {"coefficient", term.coefficient}});
    subdyn.push_back({{"commutator", c.name},
                      {"residual", c.residual},
                      {"terms", terms},
                      {"pass", c.pass}});
    pass = pass && c.pass;
  }
  j["subdynamics"] = subdyn;
  j["pass"] = pass;

  const std::string text = write_summary(j, out_dir, "report.json");
  if (!pass)
    throw std::runtime_error("fock verification failed; see " +
                             (out_dir / "report.json").string());
  return text;
}

}  // namespace eitprop
