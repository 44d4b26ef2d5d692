#ifndef EITPROP_SYNTHESIS_HPP
#define EITPROP_SYNTHESIS_HPP

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "eitprop/kernels.hpp"
#include "eitprop/medium.hpp"
#include "eitprop/polariton.hpp"

namespace eitprop {

/// Uniform sampling of wave numbers for the mode-sum quadrature.
struct ModeGrid {
  double k_min = 0.0;
  double k_max = 0.0;
  int count = 0;

  void validate() const;
  double dk() const { return (k_max - k_min) / (count - 1); }
  double k_at(int j) const { return k_min + j * dk(); }

  /// Grid centered on the pulse spectrum, half_width_sigmas spectral
  /// standard deviations to each side, clipped to positive k.
  static ModeGrid around(const GaussianPulse& pulse, int count,
                         double half_width_sigmas = 8.0);
};

/// Throws when the grid misses part of the pulse spectrum or when the
/// pulse is so spectrally broad that it has appreciable amplitude at
/// k <= 0 (the model needs k > 0 for the sqrt(k) prefactor and the
/// linear-in-k coupling).
void check_coverage(const ModeGrid& grid, const GaussianPulse& pulse);

/// The three field components on a spatial grid at a fixed time.
struct FieldSnapshot {
  double t = 0.0;
  std::vector<double> x;
  std::vector<Complex> e0;       ///< normal component, moves at c
  std::vector<Complex> e_plus;   ///< fast component, c (1 + F)
  std::vector<Complex> e_minus;  ///< slow (possibly backward) component, c (1 - F)

  Complex total(std::size_t i) const { return e0[i] + e_plus[i] + e_minus[i]; }
};

/// Peak-tracking record over a snapshot sequence: per-component envelope
/// maxima per time, a least-squares velocity through them, and the rms
/// residual of the fit.
struct PacketTrack {
  std::vector<double> times;
  // index 0: e0, 1: e_plus, 2: e_minus
  std::array<std::vector<double>, 3> peak_positions;
  std::array<std::vector<double>, 3> peak_heights;
  std::array<double, 3> fitted_velocity{};
  std::array<double, 3> fit_residual_rms{};
  std::vector<std::string> warnings;
};

/// Synthesizes the mean probe field from the per-mode solution. The
/// quadrature path evaluates the exact dressed frequency per mode; the
/// analytic path evaluates the closed-form Gaussian packets. Both share
/// one overall scale, fixed by normalize() so the total field has unit
/// peak magnitude at t = 0 (only shapes and ratios are physical).
class FieldSynthesizer {
 public:
  FieldSynthesizer(const MediumParams& params, const GaussianPulse& pulse,
                   const ModeGrid& grid,
                   kernels::Backend backend = kernels::Backend::Auto);

  /// Trapezoidal mode-sum of the three component integrands.
  FieldSnapshot quadrature(std::span<const double> x, double t) const;

  /// Mode-sum of the undecomposed integrand (weight
  /// 2 cos^2 + 2 sin^2 cos big_theta t); equals e0 + e_plus + e_minus of
  /// quadrature() to rounding on the same grid.
  std::vector<Complex> undecomposed(std::span<const double> x, double t) const;

  /// Closed-form Gaussian packets. Requires omega > 0.
  FieldSnapshot analytic(std::span<const double> x, double t) const;

  /// Pointwise |e0 + e_plus + e_minus|^2, interference terms included.
  std::vector<double> intensity(std::span<const double> x, double t) const;

  /// Fix the overall scale so max_x |total| = 1 at t = 0 on the given grid.
  void normalize(std::span<const double> x);

  double scale() const { return scale_; }
  void set_scale(double s) { scale_ = s; }
  void set_threads(int n) { threads_ = n > 0 ? n : 1; }
  kernels::Backend backend() const { return backend_; }

  const MediumParams& params() const { return params_; }
  const GaussianPulse& pulse() const { return pulse_; }
  const ModeGrid& grid() const { return grid_; }

 private:
  void component_weights(int component, double t, std::vector<double>& w_re,
                         std::vector<double>& w_im) const;
  std::vector<Complex> sum_over_modes(std::span<const double> x,
                                      const std::vector<double>& w_re,
                                      const std::vector<double>& w_im) const;

  MediumParams params_;
  GaussianPulse pulse_;
  ModeGrid grid_;
  kernels::Backend backend_;
  double scale_ = 1.0;
  int threads_ = 1;

  // per-mode precomputation
  std::vector<double> weight_normal_;  // sqrt(k/k0) alpha_k 2 cos^2 theta dmeasure
  std::vector<double> weight_split_;   // sqrt(k/k0) alpha_k sin^2 theta dmeasure
  std::vector<double> kc_;             // k c
  std::vector<double> big_theta_;
};

/// Fit per-component velocities from envelope maxima. Needs >= 3
/// snapshots on a common x grid. A component with negligible amplitude
/// (identically dark, e.g. zero coupling) inherits the total-field track.
/// Throws when a peak sits on the window edge or has no curvature.
PacketTrack track_velocities(const std::vector<FieldSnapshot>& snapshots);

}  // namespace eitprop

#endif
