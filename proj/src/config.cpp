#include "eitprop/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace eitprop {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw std::invalid_argument("config: " + field + ": " + why);
}

double get_number(const json& j, const std::string& field, double fallback,
                  bool required = false) {
  if (!j.contains(field)) {
    if (required) fail(field, "missing required field");
    return fallback;
  }
  if (!j[field].is_number()) fail(field, "must be a number");
  return j[field].get<double>();
}

int get_int(const json& j, const std::string& field, int fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_number_integer()) fail(field, "must be an integer");
  return j[field].get<int>();
}

std::string get_string(const json& j, const std::string& field, const std::string& fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_string()) fail(field, "must be a string");
  return j[field].get<std::string>();
}

MediumParams parse_medium(const json& j) {
  MediumParams m;
  m.omega = get_number(j, "omega", 0.0, true);
  m.k0 = get_number(j, "k0", 1.0);
  m.c = get_number(j, "c", 1.0);
  m.omega_m0 = get_number(j, "omega_m0", -1.0);

  const bool has_g2n = j.contains("coupling_g2n");
  const bool has_g2 = j.contains("coupling_G2");
  const bool has_n = j.contains("n");
  if (static_cast<int>(has_g2n) + static_cast<int>(has_g2) + static_cast<int>(has_n) != 1)
    fail("medium", "give exactly one of coupling_g2n, coupling_G2, n");
  if (has_g2n) {
    m.coupling_g2n = get_number(j, "coupling_g2n", 0.0, true);
  } else if (has_g2) {
    m.coupling_g2n = get_number(j, "coupling_G2", 0.0, true) * m.k0;
  } else {
    m.coupling_g2n = get_number(j, "n", 0.0, true) * m.omega * m.omega;
  }

  const std::string form = get_string(j, "coupling_form", "linear_in_k");
  if (form == "linear_in_k") {
    m.coupling_form = CouplingForm::LinearInK;
  } else if (form == "constant_at_k0") {
    m.coupling_form = CouplingForm::ConstantAtK0;
  } else {
    fail("medium.coupling_form", "must be linear_in_k or constant_at_k0");
  }
  m.validate();
  return m;
}

GaussianPulse parse_pulse(const json& j, const MediumParams& medium) {
  GaussianPulse p;
  p.k0 = get_number(j, "k0", medium.k0);
  p.amplitude = get_number(j, "amplitude", 1.0);
  const bool has_f = j.contains("f");
  const bool has_d = j.contains("d_over_lambda0");
  if (static_cast<int>(has_f) + static_cast<int>(has_d) != 1)
    fail("pulse", "give exactly one of f, d_over_lambda0");
  if (has_f) {
    p.f = get_number(j, "f", 0.0, true);
  } else {
    // spatial width measured in central wavelengths: f = d = ratio * 2 pi / k0
    p.f = get_number(j, "d_over_lambda0", 0.0, true) * 2.0 * std::numbers::pi / p.k0;
  }
  p.validate();
  return p;
}

ModeGrid parse_grid(const json& j, const GaussianPulse& pulse) {
  const int count = get_int(j, "count", 2048);
  if (j.contains("k_min") || j.contains("k_max")) {
    ModeGrid g;
    g.k_min = get_number(j, "k_min", 0.0, true);
    g.k_max = get_number(j, "k_max", 0.0, true);
    g.count = count;
    g.validate();
    return g;
  }
  return ModeGrid::around(pulse, count, get_number(j, "half_width_sigmas", 8.0));
}

std::vector<double> parse_times(const json& j) {
  std::vector<double> times;
  if (!j.contains("times")) fail("times", "missing required field");
  const json& t = j["times"];
  if (t.is_array()) {
    for (const auto& v : t) {
      if (!v.is_number()) fail("times", "entries must be numbers");
      times.push_back(v.get<double>());
    }
  } else if (t.is_object()) {
    const double start = get_number(t, "start", 0.0, true);
    const double stop = get_number(t, "stop", 0.0, true);
    const int count = get_int(t, "count", 0);
    if (count < 1) fail("times.count", "must be >= 1");
    for (int i = 0; i < count; ++i)
      times.push_back(count == 1 ? start
                                 : start + (stop - start) * i / static_cast<double>(count - 1));
  } else {
    fail("times", "must be an array or {start, stop, count}");
  }
  if (times.empty()) fail("times", "must not be empty");
  for (double v : times)
    if (!std::isfinite(v)) fail("times", "entries must be finite");
  return times;
}

}  // namespace

void XWindow::validate() const {
  if (!(std::isfinite(min) && std::isfinite(max) && max > min))
    fail("x_window", "needs max > min");
  if (samples < 2) fail("x_window.samples", "must be >= 2");
}

std::vector<double> XWindow::grid() const {
  std::vector<double> x(samples);
  for (int i = 0; i < samples; ++i)
    x[i] = min + (max - min) * i / static_cast<double>(samples - 1);
  return x;
}

void RunConfig::validate() const {
  medium.validate();
  pulse.validate();
  if (std::abs(pulse.k0 - medium.k0) > 1e-12 * medium.k0)
    fail("pulse.k0", "must equal medium.k0");
  check_coverage(grid, pulse);
  x_window.validate();
  if (times.empty()) fail("times", "must not be empty");
  if (threads < 1) fail("threads", "must be >= 1");
  if (sweep.bits < 1 || sweep.bits > 63) fail("sweep.bits", "must be in [1, 63]");
  if (!(sweep.omega_start_over_g > 0.0) || sweep.omega_start_over_g > 1000.0)
    fail("sweep.omega_start_over_g", "must be in (0, 1000]");
  if (!(sweep.duration_theta_min > 0.0)) fail("sweep.duration_theta_min", "must be > 0");
  if (!(sweep.dt_theta_max > 0.0) || sweep.dt_theta_max >= 0.1)
    fail("sweep.dt_theta_max", "must be in (0, 0.1)");
  if (!(sweep.mode_spacing >= 0.0)) fail("sweep.mode_spacing", "must be >= 0");
  if (fock.modes < 1 || fock.cutoff < 1) fail("fock", "modes and cutoff must be >= 1");
  if (!fock.per_mode_g.empty() &&
      static_cast<int>(fock.per_mode_g.size()) != fock.modes)
    fail("fock.per_mode_g", "length must equal fock.modes");
  if (!(fock.tolerance > 0.0)) fail("fock.tolerance", "must be > 0");
}

RunConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }

  RunConfig cfg;
  if (!j.contains("medium")) fail("medium", "missing required section");
  cfg.medium = parse_medium(j["medium"]);
  if (!j.contains("pulse")) fail("pulse", "missing required section");
  cfg.pulse = parse_pulse(j["pulse"], cfg.medium);
  cfg.grid = parse_grid(j.contains("grid") ? j["grid"] : json::object(), cfg.pulse);

  if (j.contains("x_window")) {
    const json& xw = j["x_window"];
    cfg.x_window.min = get_number(xw, "min", 0.0, true);
    cfg.x_window.max = get_number(xw, "max", 0.0, true);
    cfg.x_window.samples = get_int(xw, "samples", 512);
  } else {
    // wide enough for every component over the run, two packet widths margin
    cfg.x_window.samples = 512;
    cfg.x_window.min = 0.0;
    cfg.x_window.max = 1.0;
  }

  cfg.times = parse_times(j);

  if (!j.contains("x_window")) {
    const GroupVelocities v = group_velocities(cfg.medium);
    double t_lo = 0.0, t_hi = 0.0;
    for (double t : cfg.times) {
      t_lo = std::min(t_lo, t);
      t_hi = std::max(t_hi, t);
    }
    const double margin = 4.0 * cfg.pulse.f;
    double lo = std::min({v.v_minus * t_lo, v.v_minus * t_hi, v.v_plus * t_lo, 0.0});
    double hi = std::max({v.v_plus * t_hi, v.v_plus * t_lo, v.v_minus * t_lo, 0.0});
    cfg.x_window.min = lo - margin;
    cfg.x_window.max = hi + margin;
  }

  cfg.threads = get_int(j, "threads", 1);
  cfg.backend = kernels::backend_from_name(get_string(j, "kernel", "auto"));

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    cfg.sweep.omega_start_over_g = get_number(s, "omega_start_over_g", 1000.0);
    cfg.sweep.duration_theta_min = get_number(s, "duration_theta_min", 1000.0);
    cfg.sweep.dt_theta_max = get_number(s, "dt_theta_max", 0.08);
    cfg.sweep.shape = sweep_shape_from_name(get_string(s, "shape", "cosine"));
    cfg.sweep.bits = get_int(s, "bits", 8);
    cfg.sweep.mode_spacing = get_number(s, "mode_spacing", 0.02);
  }

  if (j.contains("distribution")) {
    const json& d = j["distribution"];
    cfg.distribution.peak = get_number(d, "peak", 1.0);
    cfg.distribution.f = get_number(d, "f", 0.0);
    cfg.distribution.count = get_int(d, "count", 0);
  }

  if (j.contains("spectrum")) {
    const json& s = j["spectrum"];
    cfg.spectrum.omega_min = get_number(s, "omega_min", 0.0);
    cfg.spectrum.omega_max = get_number(s, "omega_max", 0.0);
    cfg.spectrum.count = get_int(s, "count", 256);
    cfg.spectrum.window_half_length = get_number(s, "window_half_length", 0.0);
  }

  if (j.contains("fock")) {
    const json& f = j["fock"];
    cfg.fock.modes = get_int(f, "modes", 1);
    cfg.fock.cutoff = get_int(f, "cutoff", 3);
    cfg.fock.tolerance = get_number(f, "tolerance", 1e-10);
    if (f.contains("per_mode_g")) {
      if (!f["per_mode_g"].is_array()) fail("fock.per_mode_g", "must be an array");
      for (const auto& v : f["per_mode_g"]) cfg.fock.per_mode_g.push_back(v.get<double>());
    }
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

}  // namespace eitprop
