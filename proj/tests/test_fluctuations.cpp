#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "eitprop/fluctuations.hpp"

using namespace eitprop;

namespace {

constexpr double kPi = std::numbers::pi;

MediumParams make_params(double omega, double g2n) {
  MediumParams p;
  p.omega = omega;
  p.coupling_g2n = g2n;
  p.coupling_form = CouplingForm::LinearInK;
  return p;
}

NumberDistribution single_mode(double k_star, double occupation) {
  ModeGrid grid{0.5, 1.5, 11};
  NumberDistribution d;
  d.grid = grid;
  d.mean_n.assign(grid.count, 0.0);
  int best = 0;
  for (int j = 0; j < grid.count; ++j)
    if (std::abs(grid.k_at(j) - k_star) < std::abs(grid.k_at(best) - k_star)) best = j;
  d.mean_n[best] = occupation;
  return d;
}

NumberDistribution gaussian_dist(int count = 65) {
  const ModeGrid grid{0.7, 1.3, count};
  return NumberDistribution::gaussian(grid, 1.0, 8.0, 1.0);
}

}  // namespace

TEST_CASE("distribution validation") {
  NumberDistribution d = gaussian_dist();
  CHECK_NOTHROW(d.validate());
  d.mean_n[3] = -0.5;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d.mean_n.pop_back();
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("correlation at tau = 0 is the mean intensity") {
  const MediumParams p = make_params(1.2, 2.0);
  const NumberDistribution d = gaussian_dist();
  for (double t : {0.0, 0.7, 13.0}) {
    const Complex c = correlation(p, d, t, 0.0);
    CHECK(c.real() == doctest::Approx(mean_intensity(p, d, t)).epsilon(1e-13));
    CHECK(std::abs(c.imag()) < 1e-13 * c.real());
  }
}

TEST_CASE("free field: correlation is time-independent") {
  const MediumParams p = make_params(2.0, 0.0);  // theta = 0 everywhere
  const NumberDistribution d = gaussian_dist();
  const Complex a = correlation(p, d, 0.0, 0.9);
  const Complex b = correlation(p, d, 57.0, 0.9);
  CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
}

TEST_CASE("correlation has conjugate symmetry in tau") {
  const MediumParams p = make_params(0.9, 1.7);
  const NumberDistribution d = gaussian_dist();
  for (double tau : {0.3, 2.0, 11.0}) {
    const Complex fwd = correlation(p, d, 1.1, tau);
    const Complex bwd = correlation(p, d, 1.1, -tau);
    CHECK(std::abs(bwd - std::conj(fwd)) < 1e-12 * std::abs(fwd));
  }
}

TEST_CASE("mean intensity: strong drive pins the intensity") {
  const MediumParams p = make_params(100.0, 1.0);  // omega >> g sqrt(N)
  const NumberDistribution d = gaussian_dist();
  const double i0 = mean_intensity(p, d, 0.0);
  double lo = i0, hi = i0;
  for (double t = 0.0; t < 10.0; t += 0.01) {
    const double v = mean_intensity(p, d, t);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK((hi - lo) / i0 < 1e-3);
}

TEST_CASE("mean intensity: zero drive modulates at the configured frequency") {
  MediumParams p = make_params(0.0, 1.0);
  p.omega_m0 = 2.5;
  const NumberDistribution d = single_mode(1.0, 3.0);
  // single occupied mode at k0: I(t) = w cos^2(omega_m t)
  const double w = mean_intensity(p, d, 0.0);
  CHECK(w == doctest::Approx(3.0));
  CHECK(mean_intensity(p, d, kPi / (2.0 * 2.5)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mean_intensity(p, d, kPi / 2.5) == doctest::Approx(w).epsilon(1e-12));
  // default modulation scale is the collective coupling at k0
  MediumParams q = make_params(0.0, 4.0);
  CHECK(mean_intensity(q, d, kPi / (2.0 * 4.0)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mean intensity: bounded by its initial value") {
  const MediumParams p = make_params(1.1, 3.0);
  const NumberDistribution d = gaussian_dist();
  const double i0 = mean_intensity(p, d, 0.0);
  for (double t = 0.0; t < 30.0; t += 0.037) {
    const double v = mean_intensity(p, d, t);
    CHECK(v >= 0.0);
    CHECK(v <= i0 * (1.0 + 1e-12));
  }
}

TEST_CASE("mean intensity: single-mode revival with the dressed period") {
  const MediumParams p = make_params(1.3, 2.1);
  const NumberDistribution d = single_mode(1.0, 1.0);
  const double period = 2.0 * kPi / mixing(p, 1.0).big_theta;
  for (double t : {0.13, 0.9, 4.2}) {
    CHECK(mean_intensity(p, d, t + period) ==
          doctest::Approx(mean_intensity(p, d, t)).epsilon(1e-12));
  }
}

TEST_CASE("mean intensity: long-time average dephases to the mixed limit") {
  const MediumParams p = make_params(1.0, 1.0);
  const NumberDistribution d = gaussian_dist(33);
  // independent limit: time-average of (c^2 + s^2 cos)^2 is c^4 + s^4/2
  double expected = 0.0;
  for (int j = 0; j < d.grid.count; ++j) {
    const ModeMixing m = mixing(p, d.grid.k_at(j));
    const double c2 = m.cos_theta() * m.cos_theta();
    const double s2 = m.sin_theta() * m.sin_theta();
    expected += (d.grid.k_at(j) / p.k0) * d.mean_n[j] * (c2 * c2 + 0.5 * s2 * s2);
  }
  const double t_max = 4000.0;
  const int samples = 40000;
  double mean = 0.0;
  for (int i = 0; i < samples; ++i)
    mean += mean_intensity(p, d, t_max * (i + 0.5) / samples);
  mean /= samples;
  CHECK(mean == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("spectrum: single occupied mode gives a single line at k c") {
  const MediumParams p = make_params(1.4, 1.9);
  const NumberDistribution d = single_mode(1.0, 2.0);
  std::vector<double> omega(101);
  for (int i = 0; i < 101; ++i) omega[i] = 0.5 + i * 0.01;
  const std::vector<double> s = intensity_spectrum(p, d, 0.0, omega);
  const auto it = std::max_element(s.begin(), s.end());
  CHECK(omega[it - s.begin()] == doctest::Approx(1.0).epsilon(1e-6));
  // single line: spectrum decays away from the peak
  CHECK(s.front() < 0.05 * *it);
  CHECK(s.back() < 0.05 * *it);
}

TEST_CASE("spectrum: free field spectrum is time-independent") {
  const MediumParams p = make_params(2.0, 0.0);
  const NumberDistribution d = gaussian_dist(33);
  std::vector<double> omega(41);
  for (int i = 0; i < 41; ++i) omega[i] = 0.7 + i * 0.015;
  const std::vector<double> a = intensity_spectrum(p, d, 0.0, omega);
  const std::vector<double> b = intensity_spectrum(p, d, 9.0, omega);
  const double scale = *std::max_element(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10 * scale);
}

TEST_CASE("spectrum: sampled transform matches the closed-form window sum") {
  const MediumParams p = make_params(1.1, 1.3);
  const NumberDistribution d = gaussian_dist(17);
  std::vector<double> omega = {0.85, 0.95, 1.0, 1.05, 1.15};
  SpectrumOptions opts;
  opts.oversample = 32.0;
  const std::vector<double> s = intensity_spectrum(p, d, 0.4, omega, opts);

  // independent route: sum of analytic Hann transforms, one per mode line
  const double resolution = 0.05;
  const double half_length = 2.0 * (4.0 * kPi / resolution);
  double scale = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    double expected = 0.0;
    for (int j = 0; j < d.grid.count; ++j) {
      const double k = d.grid.k_at(j);
      const ModeMixing m = mixing(p, k);
      const double c2 = m.cos_theta() * m.cos_theta();
      const double s2 = m.sin_theta() * m.sin_theta();
      const double fac = c2 + s2 * std::cos(m.big_theta * 0.4);
      expected += (k / p.k0) * d.mean_n[j] * fac * fac *
                  hann_window_transform(k * p.c - omega[i], half_length);
    }
    scale = std::max(scale, std::abs(expected));
    CHECK(std::abs(s[i] - expected) < 1e-6 * (1.0 + std::abs(expected)));
  }
  CHECK(scale > 0.0);
}

TEST_CASE("spectrum: negative excursions stay within the window leakage bound") {
  const MediumParams p = make_params(1.0, 2.0);
  const NumberDistribution d = gaussian_dist(33);
  std::vector<double> omega(201);
  for (int i = 0; i < 201; ++i) omega[i] = 0.5 + i * 0.005;
  const std::vector<double> s = intensity_spectrum(p, d, 0.0, omega);
  const double peak = *std::max_element(s.begin(), s.end());
  for (double v : s) CHECK(v > -0.03 * peak);
}

TEST_CASE("spectrum: window too short for the requested resolution") {
  const MediumParams p = make_params(1.0, 1.0);
  const NumberDistribution d = gaussian_dist(17);
  std::vector<double> omega = {0.9, 0.9001};
  SpectrumOptions opts;
  opts.window_half_length = 10.0;  // resolution 1e-4 needs ~1.3e5
  CHECK_THROWS_WITH_AS(intensity_spectrum(p, d, 0.0, omega, opts),
                       doctest::Contains("need half-length"), std::invalid_argument);
}
