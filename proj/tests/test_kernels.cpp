#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "eitprop/kernels.hpp"

using namespace eitprop::kernels;
using Complex = std::complex<double>;

namespace {

// independent reference: straight complex arithmetic via std::polar
Complex direct_sum(double k_first, double dk, const std::vector<double>& w_re,
                   const std::vector<double>& w_im, double x) {
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < w_re.size(); ++j)
    acc += Complex(w_re[j], w_im[j]) * std::polar(1.0, (k_first + j * dk) * x);
  return acc;
}

struct Case {
  std::vector<double> w_re, w_im;
  double k_first, dk;
};

Case random_case(std::mt19937& rng, std::size_t n) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.01, 2.0);
  Case c;
  c.w_re.resize(n);
  c.w_im.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    c.w_re[j] = gauss(rng);
    c.w_im[j] = gauss(rng);
  }
  c.k_first = unif(rng);
  c.dk = unif(rng) * 1e-3;
  return c;
}

double weight_scale(const Case& c) {
  double s = 1.0;
  for (std::size_t j = 0; j < c.w_re.size(); ++j)
    s += std::abs(c.w_re[j]) + std::abs(c.w_im[j]);
  return s;
}

}  // namespace

TEST_CASE("scalar kernel matches the direct complex-arithmetic sum") {
  std::mt19937 rng(101);
  for (std::size_t n : {0u, 1u, 7u, 300u}) {
    const Case c = random_case(rng, n);
    for (double x : {0.0, 1.0, -17.3, 4096.0}) {
      const Complex a = phase_sum_scalar(c.k_first, c.dk, c.w_re, c.w_im, x);
      const Complex b = direct_sum(c.k_first, c.dk, c.w_re, c.w_im, x);
      CHECK(std::abs(a - b) <= 1e-13 * weight_scale(c));
    }
  }
}

TEST_CASE("backend dispatch") {
  CHECK(active_backend(Backend::Scalar) == Backend::Scalar);
  const Backend resolved = active_backend(Backend::Auto);
  CHECK(resolved != Backend::Auto);
  CHECK(backend_from_name("scalar") == Backend::Scalar);
  CHECK(backend_from_name(backend_name(Backend::Avx2)) == Backend::Avx2);
  CHECK_THROWS_AS(backend_from_name("sse9"), std::invalid_argument);
}

TEST_CASE("vector form matches the point form") {
  std::mt19937 rng(102);
  const Case c = random_case(rng, 129);
  std::vector<double> xs = {-3.0, 0.0, 0.5, 2.75, 1000.0};
  std::vector<Complex> out(xs.size());
  phase_sum(c.k_first, c.dk, c.w_re, c.w_im, xs, out);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(std::abs(out[i] - phase_sum_point(c.k_first, c.dk, c.w_re, c.w_im, xs[i])) == 0.0);
}

#ifdef __x86_64__
TEST_CASE("avx2 variant is equivalent to the scalar reference") {
  if (active_backend(Backend::Auto) != Backend::Avx2) {
    MESSAGE("avx2 not available on this host; skipping");
    return;
  }
  std::mt19937 rng(103);
  // lengths straddling the vector width, the resync interval, and the
  // production mode counts
  for (std::size_t n : {1u, 3u, 4u, 5u, 64u, 511u, 512u, 513u, 2048u, 4096u}) {
    const Case c = random_case(rng, n);
    for (double x : {0.0, 0.37, -250.0, 1.0e4}) {
      const Complex simd = phase_sum_avx2(c.k_first, c.dk, c.w_re, c.w_im, x);
      const Complex ref = phase_sum_scalar(c.k_first, c.dk, c.w_re, c.w_im, x);
      CHECK(std::abs(simd - ref) <= 1e-12 * weight_scale(c));
    }
  }
}

TEST_CASE("avx2 variant handles cancellation-heavy sums") {
  if (active_backend(Backend::Auto) != Backend::Avx2) return;
  // Gaussian weights against a fast carrier: the sum is orders of magnitude
  // below the term size, the regime the field synthesis lives in.
  const std::size_t n = 2048;
  std::vector<double> w_re(n), w_im(n, 0.0);
  const double dk = 0.45 / (n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    const double d = (0.775 + j * dk) - 1.0;
    w_re[j] = std::exp(-d * d / (2.0 * 0.028 * 0.028));
  }
  double scale = 0.0;
  for (double v : w_re) scale += v;
  for (double x : {40.0, 400.0, 4000.0}) {
    const Complex simd = phase_sum_avx2(0.775, dk, w_re, w_im, x);
    const Complex ref = phase_sum_scalar(0.775, dk, w_re, w_im, x);
    CHECK(std::abs(simd - ref) <= 1e-12 * scale);
  }
}
#endif
