#include "eitprop/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace eitprop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kImag{0.0, 1.0};

// Pulses with spectral amplitude above this fraction at k = 0 are rejected:
// a non-negligible part of their spectrum would sit at unphysical k <= 0.
constexpr double kMaxAmplitudeAtZeroK = 0.05;

// The grid may stop short of 3 sigma below k0 only when it already reaches
// down to this fraction of k0 (broad pulses clipped at the positivity floor).
constexpr double kPositivityFloorFraction = 0.01;

}  // namespace

void ModeGrid::validate() const {
  if (!(std::isfinite(k_min) && k_min > 0.0))
    throw std::invalid_argument("grid.k_min must be > 0");
  if (!(std::isfinite(k_max) && k_max > k_min))
    throw std::invalid_argument("grid.k_max must exceed k_min");
  if (count < 2) throw std::invalid_argument("grid.count must be >= 2");
}

ModeGrid ModeGrid::around(const GaussianPulse& pulse, int count, double half_width_sigmas) {
  pulse.validate();
  const double sigma = pulse.spectral_sigma();
  ModeGrid g;
  g.k_min = std::max(pulse.k0 - half_width_sigmas * sigma, kPositivityFloorFraction * pulse.k0);
  g.k_max = pulse.k0 + half_width_sigmas * sigma;
  g.count = count;
  g.validate();
  return g;
}

void check_coverage(const ModeGrid& grid, const GaussianPulse& pulse) {
  grid.validate();
  pulse.validate();
  const double fk0 = pulse.f * pulse.k0;
  if (std::exp(-fk0 * fk0) > kMaxAmplitudeAtZeroK)
    throw std::invalid_argument(
        "pulse too spectrally broad: appreciable amplitude at k <= 0 (need f k0 >~ 1.73)");
  const double sigma = pulse.spectral_sigma();
  if (grid.k_max < pulse.k0 + 3.0 * sigma)
    throw std::invalid_argument("grid does not cover the pulse spectrum above k0 (need >= 3 sigma)");
  const double lower_target =
      std::max(pulse.k0 - 3.0 * sigma, kPositivityFloorFraction * pulse.k0);
  if (grid.k_min > lower_target * (1.0 + 1e-12))
    throw std::invalid_argument("grid does not cover the pulse spectrum below k0 (need >= 3 sigma "
                                "or reach the positivity floor)");
}

FieldSynthesizer::FieldSynthesizer(const MediumParams& params, const GaussianPulse& pulse,
                                   const ModeGrid& grid, kernels::Backend backend)
    : params_(params), pulse_(pulse), grid_(grid), backend_(kernels::active_backend(backend)) {
  params_.validate();
  check_coverage(grid_, pulse_);
  if (std::abs(pulse_.k0 - params_.k0) > 1e-12 * params_.k0)
    throw std::invalid_argument("pulse.k0 must equal medium.k0");

  const int n = grid_.count;
  weight_normal_.resize(n);
  weight_split_.resize(n);
  kc_.resize(n);
  big_theta_.resize(n);

  const double dk = grid_.dk();
  for (int j = 0; j < n; ++j) {
    const double k = grid_.k_at(j);
    const ModeMixing mix = mixing(params_, k);
    const double cs = mix.cos_theta();
    const double sn = mix.sin_theta();
    const double trap = (j == 0 || j == n - 1) ? 0.5 : 1.0;  // composite trapezoid
    const double measure = pulse_.alpha(k) * std::sqrt(k / params_.k0) * trap * dk / (2.0 * kPi);
    weight_normal_[j] = 2.0 * cs * cs * measure;
    weight_split_[j] = sn * sn * measure;
    kc_[j] = k * params_.c;
    big_theta_[j] = mix.big_theta;
  }
}

// component: 0 -> e0, +1 -> e_plus, -1 -> e_minus, 2 -> undecomposed total
void FieldSynthesizer::component_weights(int component, double t, std::vector<double>& w_re,
                                         std::vector<double>& w_im) const {
  const int n = grid_.count;
  w_re.resize(n);
  w_im.resize(n);
  for (int j = 0; j < n; ++j) {
    double mag, phase;
    switch (component) {
      case 0:
        mag = weight_normal_[j];
        phase = -kc_[j] * t;
        break;
      case +1:
        mag = weight_split_[j];
        phase = -(kc_[j] + big_theta_[j]) * t;
        break;
      case -1:
        mag = weight_split_[j];
        phase = -(kc_[j] - big_theta_[j]) * t;
        break;
      default:
        mag = weight_normal_[j] + 2.0 * weight_split_[j] * std::cos(big_theta_[j] * t);
        phase = -kc_[j] * t;
        break;
    }
    mag *= scale_;
    w_re[j] = mag * std::cos(phase);
    w_im[j] = mag * std::sin(phase);
  }
}

std::vector<Complex> FieldSynthesizer::sum_over_modes(std::span<const double> x,
                                                      const std::vector<double>& w_re,
                                                      const std::vector<double>& w_im) const {
  std::vector<Complex> out(x.size());
  auto run = [&](std::size_t begin, std::size_t end) {
    kernels::phase_sum(grid_.k_min, grid_.dk(), w_re, w_im, x.subspan(begin, end - begin),
                       std::span<Complex>(out.data() + begin, end - begin), backend_);
  };
  if (threads_ <= 1 || x.size() < 64) {
    run(0, x.size());
    return out;
  }
  const std::size_t nthreads = std::min<std::size_t>(threads_, x.size());
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  const std::size_t chunk = (x.size() + nthreads - 1) / nthreads;
  for (std::size_t i = 0; i < nthreads; ++i) {
    const std::size_t begin = i * chunk;
    const std::size_t end = std::min(begin + chunk, x.size());
    if (begin >= end) break;
    pool.emplace_back(run, begin, end);
  }
  for (auto& th : pool) th.join();
  return out;
}

FieldSnapshot FieldSynthesizer::quadrature(std::span<const double> x, double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("quadrature: t must be finite");
  FieldSnapshot snap;
  snap.t = t;
  snap.x.assign(x.begin(), x.end());
  std::vector<double> w_re, w_im;
  component_weights(0, t, w_re, w_im);
  snap.e0 = sum_over_modes(x, w_re, w_im);
  component_weights(+1, t, w_re, w_im);
  snap.e_plus = sum_over_modes(x, w_re, w_im);
  component_weights(-1, t, w_re, w_im);
  snap.e_minus = sum_over_modes(x, w_re, w_im);
  return snap;
}

std::vector<Complex> FieldSynthesizer::undecomposed(std::span<const double> x, double t) const {
  std::vector<double> w_re, w_im;
  component_weights(2, t, w_re, w_im);
  return sum_over_modes(x, w_re, w_im);
}

FieldSnapshot FieldSynthesizer::analytic(std::span<const double> x, double t) const {
  const AnalyticCoefficients co = analytic_coefficients(params_);
  const double k0 = params_.k0;
  const double c = params_.c;
  const double f = pulse_.f;
  const double f2 = f * f;
  const double ak0 = co.coupling_ratio * k0;

  // Same absolute convention as the quadrature path: the closed forms are
  // the stationary-phase integrals of the same integrands, so one shared
  // scale makes the two paths directly comparable.
  const double pref_normal = scale_ * pulse_.amplitude / (2.0 * std::sqrt(kPi) * f2 * f * (1.0 + ak0));
  const double pref_split = pref_normal * ak0 / 2.0;

  FieldSnapshot snap;
  snap.t = t;
  snap.x.assign(x.begin(), x.end());
  snap.e0.resize(x.size());
  snap.e_plus.resize(x.size());
  snap.e_minus.resize(x.size());

  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u0 = x[i] - c * t;
    snap.e0[i] = pref_normal * Complex(2.0 * f2, co.chirp_normal * u0) *
                 std::exp(-u0 * u0 / (4.0 * f2)) * std::exp(kImag * (k0 * u0));

    const double up = x[i] - (c + co.velocity_shift) * t;
    snap.e_plus[i] = pref_split * Complex(2.0 * f2, co.chirp_split * up) *
                     std::exp(-up * up / (4.0 * f2)) *
                     std::exp(kImag * (k0 * (x[i] - co.carrier_v_plus * t)));

    const double um = x[i] - (c - co.velocity_shift) * t;
    snap.e_minus[i] = pref_split * Complex(2.0 * f2, co.chirp_split * um) *
                      std::exp(-um * um / (4.0 * f2)) *
                      std::exp(kImag * (k0 * (x[i] - co.carrier_v_minus * t)));
  }
  return snap;
}

std::vector<double> FieldSynthesizer::intensity(std::span<const double> x, double t) const {
  const FieldSnapshot snap = quadrature(x, t);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::norm(snap.total(i));
  return out;
}

void FieldSynthesizer::normalize(std::span<const double> x) {
  scale_ = 1.0;
  const std::vector<Complex> total = undecomposed(x, 0.0);
  double peak = 0.0;
  for (const Complex& v : total) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0)) throw std::runtime_error("normalize: zero field at t = 0");
  scale_ = 1.0 / peak;
}

namespace {

struct PeakFit {
  double position;
  double height;
};

// Parabolic sub-sample refinement of the envelope maximum on |field|^2.
PeakFit locate_peak(const std::vector<double>& x, const std::vector<Complex>& field) {
  std::size_t imax = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double v = std::norm(field[i]);
    if (v > best) {
      best = v;
      imax = i;
    }
  }
  if (imax == 0 || imax + 1 == field.size())
    throw std::runtime_error("track_velocities: packet peak at window edge; widen x window");
  const double ym = std::norm(field[imax - 1]);
  const double y0 = std::norm(field[imax]);
  const double yp = std::norm(field[imax + 1]);
  const double denom = ym - 2.0 * y0 + yp;
  if (!(denom < 0.0))
    throw std::runtime_error("track_velocities: degenerate (flat) envelope maximum");
  const double offset = 0.5 * (ym - yp) / denom;
  const double dx = x[imax + 1] - x[imax];
  return {x[imax] + offset * dx, std::sqrt(y0)};
}

}  // namespace

PacketTrack track_velocities(const std::vector<FieldSnapshot>& snapshots) {
  if (snapshots.size() < 3)
    throw std::invalid_argument("track_velocities: need at least 3 snapshots");

  PacketTrack track;
  for (const FieldSnapshot& s : snapshots) track.times.push_back(s.t);

  // Global amplitude reference to detect identically dark components.
  double global_peak = 0.0;
  for (const FieldSnapshot& s : snapshots)
    for (std::size_t i = 0; i < s.x.size(); ++i)
      global_peak = std::max(global_peak, std::abs(s.total(i)));

  for (int comp = 0; comp < 3; ++comp) {
    bool degenerate = false;
    for (const FieldSnapshot& s : snapshots) {
      const std::vector<Complex>& field =
          comp == 0 ? s.e0 : (comp == 1 ? s.e_plus : s.e_minus);
      double peak = 0.0;
      for (const Complex& v : field) peak = std::max(peak, std::abs(v));
      if (peak < 1e-12 * global_peak) degenerate = true;
    }
    for (const FieldSnapshot& s : snapshots) {
      if (degenerate) {
        // A component with no amplitude carries no packet of its own; it
        // inherits the track of the total field.
        std::vector<Complex> total(s.x.size());
        for (std::size_t i = 0; i < s.x.size(); ++i) total[i] = s.total(i);
        const PeakFit fit = locate_peak(s.x, total);
        track.peak_positions[comp].push_back(fit.position);
        track.peak_heights[comp].push_back(fit.height);
      } else {
        const std::vector<Complex>& field =
            comp == 0 ? s.e0 : (comp == 1 ? s.e_plus : s.e_minus);
        const PeakFit fit = locate_peak(s.x, field);
        track.peak_positions[comp].push_back(fit.position);
        track.peak_heights[comp].push_back(fit.height);
      }
    }
    if (degenerate)
      track.warnings.push_back("component " + std::to_string(comp) +
                               " has negligible amplitude; tracking total field");
  }

  // Least-squares line through (t, peak position) per component.
  const std::size_t m = track.times.size();
  double t_mean = 0.0;
  for (double t : track.times) t_mean += t;
  t_mean /= static_cast<double>(m);
  double t_var = 0.0;
  for (double t : track.times) t_var += (t - t_mean) * (t - t_mean);
  if (!(t_var > 0.0))
    throw std::invalid_argument("track_velocities: snapshot times must not be identical");

  for (int comp = 0; comp < 3; ++comp) {
    const std::vector<double>& pos = track.peak_positions[comp];
    double x_mean = 0.0;
    for (double p : pos) x_mean += p;
    x_mean /= static_cast<double>(m);
    double cov = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      cov += (track.times[i] - t_mean) * (pos[i] - x_mean);
    const double v = cov / t_var;
    track.fitted_velocity[comp] = v;
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double pred = x_mean + v * (track.times[i] - t_mean);
      ss += (pos[i] - pred) * (pos[i] - pred);
    }
    track.fit_residual_rms[comp] = std::sqrt(ss / static_cast<double>(m));
  }
  return track;
}

}  // namespace eitprop
