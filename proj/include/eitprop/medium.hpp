#ifndef EITPROP_MEDIUM_HPP
#define EITPROP_MEDIUM_HPP

#include <string>

namespace eitprop {

/// How the collective coupling g_k^2 N is evaluated away from the packet
/// center k0: either frozen at its k0 value or scaled linearly in k
/// (the physical k-dependence of the dipole coupling).
enum class CouplingForm { ConstantAtK0, LinearInK };

enum class SplitRegime { Subluminal, NegativeVelocity };

/// Medium and drive parameters. Everything downstream consumes these as
/// immutable values; the default unit system is c = 1, k0 = 1.
struct MediumParams {
  double omega = 0.0;         ///< classical drive Rabi frequency (>= 0)
  double coupling_g2n = 0.0;  ///< g_{k0}^2 N, collective coupling squared at k0 (>= 0)
  CouplingForm coupling_form = CouplingForm::LinearInK;
  double k0 = 1.0;            ///< packet center wave number (> 0)
  double c = 1.0;             ///< phase speed of the host medium (> 0)
  /// Modulation frequency scale for number-state intensities at zero drive,
  /// evaluated per mode as omega_m0 * k / k0. Defaults to coupling_g2n when
  /// left negative (callers wanting a different convention set it explicitly).
  double omega_m0 = -1.0;

  /// Throws std::invalid_argument when a field is out of range or when
  /// omega and coupling_g2n are both zero (mixing angle undefined).
  void validate() const;

  /// g_k^2 N evaluated at wave number k under coupling_form.
  double coupling_at(double k) const;

  double omega_m_at(double k) const;
};

/// Per-mode derived quantities of the dressed three-level system.
struct ModeMixing {
  double k = 0.0;
  double theta = 0.0;       ///< mixing angle in [0, pi/2]
  double big_theta = 0.0;   ///< dressed Rabi frequency sqrt(g_k^2 N + omega^2)
  double n_dimensionless = 0.0;  ///< g_k^2 N / omega^2; +inf at zero drive
  double g_root_n = 0.0;    ///< g_k sqrt(N)
  double omega = 0.0;       ///< drive Rabi frequency (copied for convenience)

  double cos_theta() const;
  double sin_theta() const;
};

/// Gaussian spectral envelope exp(-f^2 (k - k0)^2), amplitude-scaled.
/// f is the spatial width parameter: the packet envelope is
/// exp(-x^2 / 4 f^2), so larger f means a spatially wider, spectrally
/// narrower pulse.
struct GaussianPulse {
  double k0 = 1.0;
  double f = 1.0;
  double amplitude = 1.0;

  void validate() const;

  /// Spectral amplitude at wave number k.
  double alpha(double k) const;

  /// Std-deviation of the spectral amplitude envelope, 1/(sqrt(2) f).
  double spectral_sigma() const;
};

struct GroupVelocities {
  double v_plus = 0.0;
  double v_zero = 0.0;
  double v_minus = 0.0;
  double shift_fraction = 0.0;  ///< F: v_pm = c (1 +- F)
};

/// Coefficients of the closed-form Gaussian-packet approximation of the
/// three field components, valid for a narrow spectral window around k0.
struct AnalyticCoefficients {
  double coupling_ratio = 0.0;   ///< A = G^2 / omega^2
  double dressed_omega0 = 0.0;   ///< omega0 = omega sqrt(1 + A k0)
  double chirp_split = 0.0;      ///< D0, imaginary-part slope of the split envelopes
  double velocity_shift = 0.0;   ///< E0: split packets move at c +- E0
  double chirp_normal = 0.0;     ///< F0, imaginary-part slope of the normal envelope
  double carrier_v_plus = 0.0;   ///< c + omega0 / k0 (carrier phase velocity, + branch)
  double carrier_v_minus = 0.0;  ///< c - omega0 / k0
};

/// Mixing angle, dressed Rabi frequency and dimensionless coupling at k.
/// Rejects k <= 0 and the degenerate omega = coupling = 0 case.
ModeMixing mixing(const MediumParams& params, double k);

/// Group velocities of the three split components: (c(1+F), c, c(1-F)).
/// At omega = 0 the shift is the analytic limit g sqrt(N) / (2 k0 c).
GroupVelocities group_velocities(const MediumParams& params);

/// Requires omega > 0 (A = G^2/omega^2 is singular otherwise) and the
/// linear-in-k coupling form the closed forms are derived for.
AnalyticCoefficients analytic_coefficients(const MediumParams& params);

/// NegativeVelocity iff F > 1. The F = 1 boundary (the slow packet stops)
/// is assigned to Subluminal.
SplitRegime split_regime(const MediumParams& params);

const char* to_string(SplitRegime regime);

/// Peak-amplitude ratio of each split component to the normal one, n/2
/// evaluated at k0. Requires omega > 0.
double amplitude_ratio(const MediumParams& params);

}  // namespace eitprop

#endif
