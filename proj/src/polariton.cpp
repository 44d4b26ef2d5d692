#include "eitprop/polariton.hpp"

#include <cmath>
#include <stdexcept>

namespace eitprop {

namespace {
constexpr Complex kImag{0.0, 1.0};
}

double ModeState::norm2() const {
  return std::norm(a) + std::norm(ex_a) + std::norm(ex_c);
}

Eigen::Matrix3cd evolution_matrix(const ModeMixing& mix) {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  const double g = mix.g_root_n;
  m(0, 1) = -kImag * g;
  m(1, 0) = -kImag * g;
  m(1, 2) = -kImag * mix.omega;
  m(2, 1) = -kImag * mix.omega;
  return m;
}

PolaritonState to_polariton(const ModeState& state, const ModeMixing& mix) {
  const double c = mix.cos_theta();
  const double s = mix.sin_theta();
  PolaritonState p;
  p.dark = state.a * c - state.ex_c * s;
  p.bright = state.a * s + state.ex_c * c;
  p.ex_a = state.ex_a;
  return p;
}

ModeState from_polariton(const PolaritonState& p, const ModeMixing& mix) {
  const double c = mix.cos_theta();
  const double s = mix.sin_theta();
  ModeState st;
  st.a = p.dark * c + p.bright * s;
  st.ex_c = -p.dark * s + p.bright * c;
  st.ex_a = p.ex_a;
  return st;
}

QLadderState to_q_ladder(const ModeState& state, const ModeMixing& mix) {
  const PolaritonState p = to_polariton(state, mix);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  QLadderState q;
  q.q_plus = (p.ex_a + p.bright) * inv_sqrt2;
  q.q_minus = (p.ex_a - p.bright) * inv_sqrt2;
  return q;
}

ModeState evolve_exact(const ModeState& state, const ModeMixing& mix, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("evolve_exact: t must be finite");
  PolaritonState p = to_polariton(state, mix);
  const double phase = mix.big_theta * t;
  const double cp = std::cos(phase);
  const double sp = std::sin(phase);
  // (bright, ex_a) precess as a two-level pair at big_theta; dark is frozen.
  const Complex b = p.bright * cp - kImag * p.ex_a * sp;
  const Complex ea = p.ex_a * cp - kImag * p.bright * sp;
  p.bright = b;
  p.ex_a = ea;
  return from_polariton(p, mix);
}

ModeState evolve_numeric(const ModeState& state, const ModeMixing& mix, double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_numeric: dt must be > 0");
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("evolve_numeric: t must be finite and >= 0");

  const Eigen::Matrix3cd m = evolution_matrix(mix);
  Eigen::Vector3cd y(state.a, state.ex_a, state.ex_c);

  double remaining = t;
  while (remaining > 0.0) {
    const double h = std::min(dt, remaining);
    const Eigen::Vector3cd k1 = m * y;
    const Eigen::Vector3cd k2 = m * (y + 0.5 * h * k1);
    const Eigen::Vector3cd k3 = m * (y + 0.5 * h * k2);
    const Eigen::Vector3cd k4 = m * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite())
      throw std::runtime_error("evolve_numeric: non-finite state encountered");
    remaining -= h;
  }
  return ModeState{y(0), y(1), y(2)};
}

Complex mean_photon_amplitude(Complex a0, const ModeMixing& mix, double t) {
  const double c = mix.cos_theta();
  const double s = mix.sin_theta();
  return a0 * (c * c + s * s * std::cos(mix.big_theta * t));
}

}  // namespace eitprop
