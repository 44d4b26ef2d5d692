#ifndef EITPROP_KERNELS_HPP
#define EITPROP_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <string>

namespace eitprop::kernels {

/// Backend for the phase-sum inner loop. Auto picks the widest variant the
/// CPU supports at runtime; Scalar is the reference implementation every
/// variant is equivalence-tested against.
enum class Backend { Auto, Scalar, Avx2 };

/// Resolve Auto to the backend that will actually run.
Backend active_backend(Backend requested = Backend::Auto);

const char* backend_name(Backend backend);

Backend backend_from_name(const std::string& name);

/// Weighted sum of complex phase factors on a uniform wave-number grid,
///
///   out[i] = sum_j (w_re[j] + i w_im[j]) * exp(i (k_first + j dk) x[i]),
///
/// the inner loop of every field-synthesis quadrature. w_re/w_im carry the
/// full per-mode weight (spectral envelope, mixing weight, time phase,
/// quadrature measure).
void phase_sum(double k_first, double dk,
               std::span<const double> w_re, std::span<const double> w_im,
               std::span<const double> x, std::span<std::complex<double>> out,
               Backend backend = Backend::Auto);

/// Single-point variant.
std::complex<double> phase_sum_point(double k_first, double dk,
                                     std::span<const double> w_re,
                                     std::span<const double> w_im, double x,
                                     Backend backend = Backend::Auto);

// Individual variants, exposed for equivalence testing. The AVX2 entry
// point exists on every build; calling it on a CPU without AVX2 support is
// undefined, so go through phase_sum unless testing.
std::complex<double> phase_sum_scalar(double k_first, double dk,
                                      std::span<const double> w_re,
                                      std::span<const double> w_im, double x);
#ifdef __x86_64__
std::complex<double> phase_sum_avx2(double k_first, double dk,
                                    std::span<const double> w_re,
                                    std::span<const double> w_im, double x);
#endif

}  // namespace eitprop::kernels

#endif
