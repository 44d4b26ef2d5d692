#ifndef EITPROP_POLARITON_HPP
#define EITPROP_POLARITON_HPP

#include <complex>

#include <Eigen/Dense>

#include "eitprop/medium.hpp"

namespace eitprop {

using Complex = std::complex<double>;

/// Expectation amplitudes of one optical mode and its two collective
/// excitations. Basis order is (photon, A-exciton, C-exciton) everywhere.
struct ModeState {
  Complex a{0.0, 0.0};     ///< <a_k>
  Complex ex_a{0.0, 0.0};  ///< <A_k>
  Complex ex_c{0.0, 0.0};  ///< <C_k>

  double norm2() const;
};

/// Same state expressed in the dark/bright polariton basis.
/// The dark amplitude is a constant of the motion; (bright, ex_a) rotate
/// at the dressed Rabi frequency.
struct PolaritonState {
  Complex dark{0.0, 0.0};
  Complex bright{0.0, 0.0};
  Complex ex_a{0.0, 0.0};
};

/// Ladder amplitudes q_pm = (<A_k> +- <B_k>)/sqrt(2); each evolves as a
/// pure phase exp(-+ i big_theta t).
struct QLadderState {
  Complex q_plus{0.0, 0.0};
  Complex q_minus{0.0, 0.0};
};

/// Generator M of the per-mode equations d(state)/dt = M state,
/// M = -i [[0, g, 0], [g, 0, omega], [0, omega, 0]] with g = g_k sqrt(N).
/// M is skew-Hermitian, so evolution is norm-preserving.
Eigen::Matrix3cd evolution_matrix(const ModeMixing& mix);

/// Closed-form propagation through the polariton basis. Exact for any t
/// (negative allowed) and satisfies the group property
/// evolve(t1 + t2) = evolve(t2) after evolve(t1).
ModeState evolve_exact(const ModeState& state, const ModeMixing& mix, double t);

/// Fixed-step RK4 integration of the same generator; exists as an
/// independent cross-check of evolve_exact and as the shared scheme for
/// time-dependent drives. Aborts on non-finite intermediates.
ModeState evolve_numeric(const ModeState& state, const ModeMixing& mix, double t, double dt);

/// Rotation by theta in the (photon, C-exciton) plane; the A amplitude
/// passes through. Round trip is the identity to rounding.
PolaritonState to_polariton(const ModeState& state, const ModeMixing& mix);
ModeState from_polariton(const PolaritonState& p, const ModeMixing& mix);

QLadderState to_q_ladder(const ModeState& state, const ModeMixing& mix);

/// <a_k(t)> for a coherent input on a medium in its collective ground
/// state: a0 (cos^2 theta + sin^2 theta cos big_theta t).
Complex mean_photon_amplitude(Complex a0, const ModeMixing& mix, double t);

}  // namespace eitprop

#endif
