#include "eitprop/fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eitprop {

namespace {

constexpr double kPi = std::numbers::pi;

// Squared transient factor of one mode. The zero-drive branch uses the
// configured modulation frequency scale instead of the dressed frequency;
// see MediumParams::omega_m_at.
double mode_factor_sq(const MediumParams& params, double k, double t) {
  if (params.omega == 0.0) {
    const double c = std::cos(params.omega_m_at(k) * t);
    return c * c;
  }
  const ModeMixing mix = mixing(params, k);
  const double cs = mix.cos_theta();
  const double sn = mix.sin_theta();
  const double fac = cs * cs + sn * sn * std::cos(mix.big_theta * t);
  return fac * fac;
}

std::vector<double> mode_weights(const MediumParams& params, const NumberDistribution& dist,
                                 double t) {
  std::vector<double> w(dist.grid.count);
  for (int j = 0; j < dist.grid.count; ++j) {
    const double k = dist.grid.k_at(j);
    w[j] = (k / params.k0) * dist.mean_n[j] * mode_factor_sq(params, k, t);
  }
  return w;
}

}  // namespace

void NumberDistribution::validate() const {
  grid.validate();
  if (static_cast<int>(mean_n.size()) != grid.count)
    throw std::invalid_argument("distribution.mean_n length must match grid.count");
  double total = 0.0;
  for (double v : mean_n) {
    if (!(std::isfinite(v) && v >= 0.0))
      throw std::invalid_argument("distribution.mean_n entries must be finite and >= 0");
    total += v;
  }
  if (!std::isfinite(total))
    throw std::invalid_argument("distribution.mean_n total occupation must be finite");
}

NumberDistribution NumberDistribution::gaussian(const ModeGrid& grid, double k0, double f,
                                                double peak) {
  NumberDistribution d;
  d.grid = grid;
  d.mean_n.resize(grid.count);
  for (int j = 0; j < grid.count; ++j) {
    const double dk = grid.k_at(j) - k0;
    d.mean_n[j] = peak * std::exp(-2.0 * f * f * dk * dk);
  }
  return d;
}

Complex correlation(const MediumParams& params, const NumberDistribution& dist,
                    double t, double tau) {
  params.validate();
  dist.validate();
  if (!std::isfinite(t) || !std::isfinite(tau))
    throw std::invalid_argument("correlation: t and tau must be finite");
  const std::vector<double> w = mode_weights(params, dist, t);
  const std::vector<double> zeros(w.size(), 0.0);
  return kernels::phase_sum_point(dist.grid.k_min * params.c, dist.grid.dk() * params.c, w,
                                  zeros, tau);
}

double mean_intensity(const MediumParams& params, const NumberDistribution& dist, double t) {
  params.validate();
  dist.validate();
  if (!std::isfinite(t)) throw std::invalid_argument("mean_intensity: t must be finite");
  double sum = 0.0;
  for (int j = 0; j < dist.grid.count; ++j) {
    const double k = dist.grid.k_at(j);
    sum += (k / params.k0) * dist.mean_n[j] * mode_factor_sq(params, k, t);
  }
  return sum;
}

double hann_window_transform(double nu, double half_length) {
  const auto sinc_integral = [](double v, double T) {
    // integral of e^{i v tau} over [-T, T]
    if (std::abs(v * T) < 1e-8) return 2.0 * T * (1.0 - v * v * T * T / 6.0);
    return 2.0 * std::sin(v * T) / v;
  };
  const double shift = kPi / half_length;
  return 0.5 * sinc_integral(nu, half_length) +
         0.25 * sinc_integral(nu - shift, half_length) +
         0.25 * sinc_integral(nu + shift, half_length);
}

std::vector<double> intensity_spectrum(const MediumParams& params,
                                       const NumberDistribution& dist, double t,
                                       std::span<const double> omega_grid,
                                       const SpectrumOptions& options) {
  params.validate();
  dist.validate();
  if (omega_grid.empty())
    throw std::invalid_argument("intensity_spectrum: omega_grid must not be empty");
  double omega_abs_max = 0.0;
  for (double w : omega_grid) {
    if (!std::isfinite(w)) throw std::invalid_argument("intensity_spectrum: omega must be finite");
    omega_abs_max = std::max(omega_abs_max, std::abs(w));
  }

  // Requested resolution = smallest omega spacing; single-point grids fall
  // back to the mode-line spacing.
  double resolution = dist.grid.dk() * params.c;
  for (std::size_t i = 1; i < omega_grid.size(); ++i) {
    const double d = std::abs(omega_grid[i] - omega_grid[i - 1]);
    if (d > 0.0) resolution = std::min(resolution, d);
  }
  const double required = 4.0 * kPi / resolution;
  double half_length = options.window_half_length;
  if (half_length == 0.0) {
    half_length = 2.0 * required;
  } else if (half_length < required) {
    throw std::invalid_argument("intensity_spectrum: tau window too short for requested "
                                "resolution; need half-length >= " + std::to_string(required));
  }

  const double content_max = dist.grid.k_max * params.c + omega_abs_max;
  const double dtau = 2.0 * kPi / (options.oversample * std::max(content_max, resolution));
  const std::size_t n_samples = static_cast<std::size_t>(std::ceil(2.0 * half_length / dtau)) + 1;
  if (n_samples > (1u << 24))
    throw std::invalid_argument("intensity_spectrum: window/oversampling demands too many "
                                "tau samples; relax the resolution");
  const double step = 2.0 * half_length / static_cast<double>(n_samples - 1);

  // Pass 1: correlation samples over the window (one phase sum per sample),
  // Hann-weighted with the trapezoid measure folded in.
  const std::vector<double> w = mode_weights(params, dist, t);
  const std::vector<double> zeros(w.size(), 0.0);
  std::vector<double> g_re(n_samples);
  std::vector<double> g_im(n_samples);
  const kernels::Backend backend = kernels::active_backend(options.backend);
  for (std::size_t m = 0; m < n_samples; ++m) {
    const double tau = -half_length + static_cast<double>(m) * step;
    const Complex corr = kernels::phase_sum_point(dist.grid.k_min * params.c,
                                                  dist.grid.dk() * params.c, w, zeros, tau,
                                                  backend);
    const double hann = 0.5 * (1.0 + std::cos(kPi * tau / half_length));
    const double trap = (m == 0 || m + 1 == n_samples) ? 0.5 : 1.0;
    g_re[m] = corr.real() * hann * trap * step;
    g_im[m] = corr.imag() * hann * trap * step;
  }

  // Pass 2: transform kernel e^{-i omega tau} is another uniform phase sum
  // over tau with the windowed samples as weights.
  std::vector<double> out(omega_grid.size());
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    const Complex s =
        kernels::phase_sum_point(-half_length, step, g_re, g_im, -omega_grid[i], backend);
    out[i] = s.real();
  }
  return out;
}

}  // namespace eitprop
