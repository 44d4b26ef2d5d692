#ifndef EITPROP_FLUCTUATIONS_HPP
#define EITPROP_FLUCTUATIONS_HPP

#include <complex>
#include <span>
#include <vector>

#include "eitprop/kernels.hpp"
#include "eitprop/medium.hpp"
#include "eitprop/polariton.hpp"
#include "eitprop/synthesis.hpp"

namespace eitprop {

/// Per-mode occupation of a number-state (Fock) input.
struct NumberDistribution {
  ModeGrid grid;
  std::vector<double> mean_n;

  void validate() const;

  /// Gaussian occupation exp(-2 f^2 (k - k0)^2) scaled by peak — the
  /// squared spectral envelope of the coherent-pulse convention.
  static NumberDistribution gaussian(const ModeGrid& grid, double k0, double f,
                                     double peak = 1.0);
};

/// Two-time field correlation <E-(t) E+(t+tau)>; position-independent.
/// Each mode contributes (k/k0) <n>_k e^{i k c tau} times the squared
/// transient factor (cos^2 + sin^2 cos big_theta t)^2. At zero drive the
/// factor is cos^2(omega_m t) with the configured modulation frequency.
Complex correlation(const MediumParams& params, const NumberDistribution& dist,
                    double t, double tau);

/// Equal-time correlation: the mean probe intensity.
double mean_intensity(const MediumParams& params, const NumberDistribution& dist, double t);

struct SpectrumOptions {
  /// Half-length of the symmetric tau window. 0 = auto-sized from the
  /// requested omega resolution (Hann mainlobe needs >= 4 pi / d_omega).
  double window_half_length = 0.0;
  /// Samples per oscillation period of the fastest integrand component.
  double oversample = 8.0;
  kernels::Backend backend = kernels::Backend::Auto;
};

/// Hann-windowed transform of the correlation over tau, evaluated on
/// omega_grid. Negative excursions are bounded by the Hann sidelobe level
/// (about 2.7% of a line peak). Throws when a user-pinned window is too
/// short for the requested resolution.
std::vector<double> intensity_spectrum(const MediumParams& params,
                                       const NumberDistribution& dist, double t,
                                       std::span<const double> omega_grid,
                                       const SpectrumOptions& options = {});

/// Closed-form transform of one Hann-windowed phase factor,
/// integral of 0.5 (1 + cos(pi tau / T)) e^{i (nu) tau} over [-T, T].
/// Exposed as the independent check for the sampled transform.
double hann_window_transform(double nu, double half_length);

}  // namespace eitprop

#endif
