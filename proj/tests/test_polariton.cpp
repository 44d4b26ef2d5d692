#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "eitprop/polariton.hpp"

using namespace eitprop;

namespace {

MediumParams make_params(double omega, double g2n) {
  MediumParams p;
  p.omega = omega;
  p.coupling_g2n = g2n;
  p.coupling_form = CouplingForm::ConstantAtK0;
  return p;
}

ModeState random_state(std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  return {Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng)),
          Complex(gauss(rng), gauss(rng))};
}

double state_distance(const ModeState& a, const ModeState& b) {
  return std::sqrt(std::norm(a.a - b.a) + std::norm(a.ex_a - b.ex_a) +
                   std::norm(a.ex_c - b.ex_c));
}

}  // namespace

TEST_CASE("evolution matrix: free field is frozen") {
  ModeMixing free{};
  free.k = 1.0;
  CHECK(evolution_matrix(free).norm() == 0.0);
}

TEST_CASE("evolution matrix: eigenvalues of iM are 0, +Theta, -Theta") {
  const ModeMixing mix = mixing(make_params(4.0, 9.0), 1.0);
  const Eigen::Matrix3cd m = evolution_matrix(mix);
  // skew-Hermitian
  CHECK((m + m.adjoint()).norm() < 1e-14);
  const Eigen::Matrix3d im = (Complex(0, 1) * m).real().eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(im);
  CHECK(solver.eigenvalues()(0) == doctest::Approx(-5.0).epsilon(1e-13));
  CHECK(solver.eigenvalues()(1) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(solver.eigenvalues()(2) == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("evolution matrix: kernel of the generator is the dark direction") {
  // dense eigensolve as the independent route
  for (double omega : {0.5, 2.0, 7.0}) {
    const ModeMixing mix = mixing(make_params(omega, 3.1), 1.0);
    const Eigen::Matrix3d im = (Complex(0, 1) * evolution_matrix(mix)).real().eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(im);
    int zero_index = 0;
    for (int i = 0; i < 3; ++i)
      if (std::abs(solver.eigenvalues()(i)) < 1e-12) zero_index = i;
    const Eigen::Vector3d v = solver.eigenvectors().col(zero_index);
    const Eigen::Vector3d dark(mix.cos_theta(), 0.0, -mix.sin_theta());
    CHECK(std::abs(std::abs(v.dot(dark)) - 1.0) < 1e-12);
  }
}

TEST_CASE("evolve_exact: identity at t = 0 and dark-state stationarity") {
  std::mt19937 rng(11);
  const ModeMixing mix = mixing(make_params(1.7, 2.9), 1.0);
  const ModeState s = random_state(rng);
  // identity up to the basis-change round trip
  CHECK(state_distance(evolve_exact(s, mix, 0.0), s) < 1e-15 * std::sqrt(s.norm2()));

  // pure dark input: b = 0, ex_a = 0
  PolaritonState p;
  p.dark = Complex(0.3, -0.8);
  const ModeState dark_state = from_polariton(p, mix);
  for (double t : {0.1, 3.0, -40.0, 777.0}) {
    CHECK(state_distance(evolve_exact(dark_state, mix, t), dark_state) < 1e-13);
  }
}

TEST_CASE("evolve_exact: photon flips sign after half a dressed period at theta = pi/2") {
  const ModeMixing mix = mixing(make_params(0.0, 1.0), 1.0);  // theta = pi/2, Theta = 1
  const ModeState out = evolve_exact(ModeState{Complex(1.0), {}, {}}, mix, M_PI);
  CHECK(out.a.real() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(out.a.imag()) < 1e-14);
  CHECK(std::abs(out.ex_a) < 1e-14);
  CHECK(std::abs(out.ex_c) < 1e-14);
}

TEST_CASE("evolve_exact: group property and norm conservation") {
  std::mt19937 rng(12);
  const ModeMixing mix = mixing(make_params(0.9, 5.5), 1.0);
  for (int i = 0; i < 50; ++i) {
    const ModeState s = random_state(rng);
    const double t1 = (i - 25) * 0.7;
    const double t2 = i * 0.31;
    const ModeState once = evolve_exact(s, mix, t1 + t2);
    const ModeState twice = evolve_exact(evolve_exact(s, mix, t1), mix, t2);
    CHECK(state_distance(once, twice) < 1e-13 * std::sqrt(s.norm2()));

    const double big_t = 1e3 / mix.big_theta;
    CHECK(std::abs(evolve_exact(s, mix, big_t).norm2() - s.norm2()) <
          1e-13 * s.norm2());
  }
}

TEST_CASE("evolve_exact: dark amplitude is a constant of the motion") {
  std::mt19937 rng(13);
  const ModeMixing mix = mixing(make_params(1.2, 0.8), 1.0);
  const ModeState s = random_state(rng);
  const Complex d0 = to_polariton(s, mix).dark;
  for (double t : {0.5, 17.0, 1e3 / mix.big_theta}) {
    const Complex dt = to_polariton(evolve_exact(s, mix, t), mix).dark;
    CHECK(std::abs(dt - d0) < 1e-13);
  }
}

TEST_CASE("polariton basis: limits and round trip") {
  std::mt19937 rng(14);
  const ModeState s = random_state(rng);

  const ModeMixing photon_like = mixing(make_params(5.0, 0.0), 1.0);  // theta = 0
  PolaritonState p = to_polariton(s, photon_like);
  CHECK(std::abs(p.dark - s.a) < 1e-15);
  CHECK(std::abs(p.bright - s.ex_c) < 1e-15);

  const ModeMixing exciton_like = mixing(make_params(0.0, 4.0), 1.0);  // theta = pi/2
  p = to_polariton(s, exciton_like);
  CHECK(std::abs(p.dark + s.ex_c) < 1e-15);
  CHECK(std::abs(p.bright - s.a) < 1e-15);

  const ModeMixing generic = mixing(make_params(1.0, 2.0), 1.0);
  const ModeState back = from_polariton(to_polariton(s, generic), generic);
  CHECK(state_distance(back, s) < 1e-14 * std::sqrt(s.norm2()));
}

TEST_CASE("q ladder amplitudes evolve as pure phases") {
  std::mt19937 rng(15);
  const ModeMixing mix = mixing(make_params(1.4, 3.3), 1.0);
  const ModeState s = random_state(rng);
  const QLadderState q0 = to_q_ladder(s, mix);
  for (double t : {0.4, 2.7, 31.0}) {
    const QLadderState qt = to_q_ladder(evolve_exact(s, mix, t), mix);
    const Complex phase_minus = std::exp(Complex(0.0, -mix.big_theta * t));
    const Complex phase_plus = std::exp(Complex(0.0, mix.big_theta * t));
    CHECK(std::abs(qt.q_plus - q0.q_plus * phase_minus) < 1e-12);
    CHECK(std::abs(qt.q_minus - q0.q_minus * phase_plus) < 1e-12);
  }
}

TEST_CASE("mean photon amplitude") {
  const Complex a0(0.6, -0.2);
  const ModeMixing decoupled = mixing(make_params(3.0, 0.0), 1.0);
  CHECK(std::abs(mean_photon_amplitude(a0, decoupled, 9.4) - a0) < 1e-15);

  const ModeMixing balanced = mixing(make_params(2.0, 4.0), 1.0);  // theta = pi/4
  const double t = 0.5 * M_PI / balanced.big_theta;
  CHECK(std::abs(mean_photon_amplitude(a0, balanced, t) - 0.5 * a0) < 1e-14);

  // coincides with the closed-form evolution of a photon-only state
  std::mt19937 rng(16);
  std::normal_distribution<double> gauss;
  const ModeMixing mix = mixing(make_params(1.1, 2.6), 1.0);
  for (int i = 0; i < 20; ++i) {
    const Complex a(gauss(rng), gauss(rng));
    const double tt = gauss(rng) * 5.0;
    const ModeState evolved = evolve_exact(ModeState{a, {}, {}}, mix, tt);
    CHECK(std::abs(evolved.a - mean_photon_amplitude(a, mix, tt)) < 1e-13);
  }
}

TEST_CASE("evolve_numeric: fourth-order convergence") {
  const ModeMixing mix = mixing(make_params(1.0, 1.0), 1.0);
  std::mt19937 rng(17);
  const ModeState s = random_state(rng);
  const double t = 3.0;
  const ModeState exact = evolve_exact(s, mix, t);
  const double err1 = state_distance(evolve_numeric(s, mix, t, 0.02), exact);
  const double err2 = state_distance(evolve_numeric(s, mix, t, 0.01), exact);
  CHECK(err1 / err2 > 12.0);
  CHECK(err1 / err2 < 20.0);
}

TEST_CASE("evolve_numeric: dark drift stays tiny") {
  const ModeMixing mix = mixing(make_params(0.8, 1.7), 1.0);
  PolaritonState p;
  p.dark = Complex(1.0, 0.0);
  const ModeState dark_state = from_polariton(p, mix);
  const double t = 100.0 / mix.big_theta;
  const double dt = 1e-3 / mix.big_theta;
  const ModeState out = evolve_numeric(dark_state, mix, t, dt);
  CHECK(std::abs(to_polariton(out, mix).dark - Complex(1.0, 0.0)) < 1e-9);
}

TEST_CASE("evolve_numeric: agrees with the closed form on random states") {
  const ModeMixing mix = mixing(make_params(1.9, 4.2), 1.0);
  const double t = 10.0 / mix.big_theta;
  const double dt = 1e-4 / mix.big_theta;
  std::mt19937 rng(18);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const ModeState s = random_state(rng);
    worst = std::max(worst,
                     state_distance(evolve_numeric(s, mix, t, dt), evolve_exact(s, mix, t)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("evolve_numeric: input validation") {
  const ModeMixing mix = mixing(make_params(1.0, 1.0), 1.0);
  CHECK_THROWS_AS(evolve_numeric(ModeState{}, mix, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(evolve_numeric(ModeState{}, mix, -1.0, 0.1), std::invalid_argument);
}
