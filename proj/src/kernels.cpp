#include "eitprop/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eitprop::kernels {

std::complex<double> phase_sum_scalar(double k_first, double dk,
                                      std::span<const double> w_re,
                                      std::span<const double> w_im, double x) {
  double acc_re = 0.0;
  double acc_im = 0.0;
  const std::size_t n = w_re.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double phase = (k_first + static_cast<double>(j) * dk) * x;
    const double cs = std::cos(phase);
    const double sn = std::sin(phase);
    acc_re += w_re[j] * cs - w_im[j] * sn;
    acc_im += w_re[j] * sn + w_im[j] * cs;
  }
  return {acc_re, acc_im};
}

Backend active_backend(Backend requested) {
  if (requested == Backend::Scalar) return Backend::Scalar;
#if defined(__x86_64__) && defined(EITPROP_HAVE_AVX2_TU)
  const bool have_avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  if (requested == Backend::Avx2) {
    if (!have_avx2) throw std::runtime_error("avx2 backend requested but not supported by this CPU");
    return Backend::Avx2;
  }
  return have_avx2 ? Backend::Avx2 : Backend::Scalar;
#else
  if (requested == Backend::Avx2)
    throw std::runtime_error("avx2 backend not available in this build");
  return Backend::Scalar;
#endif
}

const char* backend_name(Backend backend) {
  switch (backend) {
    case Backend::Auto: return "auto";
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

Backend backend_from_name(const std::string& name) {
  if (name == "auto") return Backend::Auto;
  if (name == "scalar") return Backend::Scalar;
  if (name == "avx2") return Backend::Avx2;
  throw std::invalid_argument("unknown kernel backend '" + name + "'");
}

std::complex<double> phase_sum_point(double k_first, double dk,
                                     std::span<const double> w_re,
                                     std::span<const double> w_im, double x,
                                     Backend backend) {
  if (w_re.size() != w_im.size())
    throw std::invalid_argument("phase_sum: weight arrays must have equal length");
  switch (active_backend(backend)) {
#if defined(__x86_64__) && defined(EITPROP_HAVE_AVX2_TU)
    case Backend::Avx2:
      return phase_sum_avx2(k_first, dk, w_re, w_im, x);
#endif
    default:
      return phase_sum_scalar(k_first, dk, w_re, w_im, x);
  }
}

void phase_sum(double k_first, double dk,
               std::span<const double> w_re, std::span<const double> w_im,
               std::span<const double> x, std::span<std::complex<double>> out,
               Backend backend) {
  if (x.size() != out.size())
    throw std::invalid_argument("phase_sum: output length must match x length");
  const Backend resolved = active_backend(backend);
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = phase_sum_point(k_first, dk, w_re, w_im, x[i], resolved);
}

}  // namespace eitprop::kernels
