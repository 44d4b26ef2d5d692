#include "eitprop/memory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eitprop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kExpRate = 5.0;  // decay constant of the exponential shape

// y = (Re psi, Im psi) packed as 6 doubles; the coupling matrix is real
// tridiagonal, so d(Re)/dt = H Im and d(Im)/dt = -H Re.
struct RealState {
  double v[6];
};

inline void apply_h(double g, double omega, const double* in, double* out) {
  out[0] = g * in[1];
  out[1] = g * in[0] + omega * in[2];
  out[2] = omega * in[1];
}

inline void derivative(double g, double omega, const RealState& y, RealState& dy) {
  apply_h(g, omega, y.v + 3, dy.v);      // d(Re)/dt =  H Im
  apply_h(g, omega, y.v, dy.v + 3);      // d(Im)/dt = -H Re
  for (int i = 3; i < 6; ++i) dy.v[i] = -dy.v[i];
}

}  // namespace

BitRegister encode(std::uint64_t n, int length) {
  if (length < 0 || length > 63) throw std::invalid_argument("encode: length must be in [0, 63]");
  if (length < 63 && n >= (std::uint64_t{1} << length))
    throw std::invalid_argument("encode: value does not fit in the register");
  BitRegister reg;
  reg.bits.resize(length);
  for (int i = 0; i < length; ++i) reg.bits[i] = static_cast<std::uint8_t>((n >> i) & 1u);
  return reg;
}

std::uint64_t decode(const BitRegister& reg) {
  std::uint64_t n = 0;
  for (int i = 0; i < reg.length(); ++i)
    if (reg.bits[i]) n |= std::uint64_t{1} << i;
  return n;
}

SweepShape sweep_shape_from_name(const std::string& name) {
  if (name == "linear") return SweepShape::Linear;
  if (name == "cosine") return SweepShape::Cosine;
  if (name == "exponential") return SweepShape::Exponential;
  throw std::invalid_argument("unknown sweep shape '" + name + "'");
}

const char* to_string(SweepShape shape) {
  switch (shape) {
    case SweepShape::Linear: return "linear";
    case SweepShape::Cosine: return "cosine";
    case SweepShape::Exponential: return "exponential";
  }
  return "unknown";
}

void SweepProfile::validate() const {
  if (!(std::isfinite(omega_start) && omega_start >= 0.0))
    throw std::invalid_argument("sweep.omega_start must be finite and >= 0");
  if (!(std::isfinite(omega_end) && omega_end >= 0.0))
    throw std::invalid_argument("sweep.omega_end must be finite and >= 0");
  if (!(std::isfinite(duration) && duration > 0.0))
    throw std::invalid_argument("sweep.duration must be > 0");
}

double SweepProfile::omega_at(double t) const {
  const double s = std::clamp(t / duration, 0.0, 1.0);
  switch (shape) {
    case SweepShape::Linear:
      return omega_start + (omega_end - omega_start) * s;
    case SweepShape::Cosine:
      return omega_start + (omega_end - omega_start) * 0.5 * (1.0 - std::cos(kPi * s));
    case SweepShape::Exponential: {
      const double floor = std::exp(-kExpRate);
      const double frac = (std::exp(-kExpRate * s) - floor) / (1.0 - floor);
      return omega_end + (omega_start - omega_end) * frac;
    }
  }
  return omega_end;
}

std::array<Complex, 3> sweep_mode(const std::array<Complex, 3>& psi0, double g_root_n,
                                  const SweepProfile& sweep, double dt, double* max_leakage,
                                  SweepTrace* trace, int trace_stride) {
  sweep.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("sweep_mode: dt must be > 0");
  const double omega_max = std::max(sweep.omega_start, sweep.omega_end);
  const double theta_max = std::hypot(g_root_n, omega_max);
  if (theta_max * dt >= 0.1)
    throw std::invalid_argument("sweep_mode: dt too coarse; need big_theta_max * dt < 0.1");

  RealState y;
  for (int i = 0; i < 3; ++i) {
    y.v[i] = psi0[i].real();
    y.v[i + 3] = psi0[i].imag();
  }

  const auto leak = [&]() { return y.v[1] * y.v[1] + y.v[4] * y.v[4]; };
  double worst_leak = leak();

  const auto record = [&](double t) {
    if (!trace) return;
    trace->t.push_back(t);
    trace->populations.push_back({y.v[0] * y.v[0] + y.v[3] * y.v[3],
                                  y.v[1] * y.v[1] + y.v[4] * y.v[4],
                                  y.v[2] * y.v[2] + y.v[5] * y.v[5]});
    const double theta = std::atan2(g_root_n, sweep.omega_at(t));
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);
    const double re = cs * y.v[0] - sn * y.v[2];
    const double im = cs * y.v[3] - sn * y.v[5];
    trace->dark_overlap.push_back(re * re + im * im);
  };

  const std::size_t n_steps = static_cast<std::size_t>(std::ceil(sweep.duration / dt));
  const double h = sweep.duration / static_cast<double>(n_steps);
  const std::size_t stride =
      trace_stride > 0 ? static_cast<std::size_t>(trace_stride)
                       : std::max<std::size_t>(1, n_steps / 2000);

  record(0.0);
  RealState k1, k2, k3, k4, tmp;
  for (std::size_t s = 0; s < n_steps; ++s) {
    const double t = static_cast<double>(s) * h;
    const double om0 = sweep.omega_at(t);
    const double om_half = sweep.omega_at(t + 0.5 * h);
    const double om1 = sweep.omega_at(t + h);

    derivative(g_root_n, om0, y, k1);
    for (int i = 0; i < 6; ++i) tmp.v[i] = y.v[i] + 0.5 * h * k1.v[i];
    derivative(g_root_n, om_half, tmp, k2);
    for (int i = 0; i < 6; ++i) tmp.v[i] = y.v[i] + 0.5 * h * k2.v[i];
    derivative(g_root_n, om_half, tmp, k3);
    for (int i = 0; i < 6; ++i) tmp.v[i] = y.v[i] + h * k3.v[i];
    derivative(g_root_n, om1, tmp, k4);
    for (int i = 0; i < 6; ++i)
      y.v[i] += h / 6.0 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);

    worst_leak = std::max(worst_leak, leak());
    if ((s + 1) % stride == 0 || s + 1 == n_steps) record(static_cast<double>(s + 1) * h);
  }

  for (int i = 0; i < 6; ++i)
    if (!std::isfinite(y.v[i])) throw std::runtime_error("sweep_mode: non-finite state");

  if (max_leakage) *max_leakage = worst_leak;
  return {Complex(y.v[0], y.v[3]), Complex(y.v[1], y.v[4]), Complex(y.v[2], y.v[5])};
}

namespace {

TransferReport run_register_sweep(const BitRegister& reg, const MediumParams& params,
                                  const SweepProfile& sweep, double dt,
                                  const RegisterLayout& layout, bool write,
                                  std::vector<SweepTrace>* traces, int trace_stride) {
  params.validate();
  sweep.validate();
  if (write && sweep.omega_end != 0.0)
    throw std::invalid_argument("write_sweep: omega_end must be 0");
  if (!write && sweep.omega_start != 0.0)
    throw std::invalid_argument("read_sweep: omega_start must be 0");

  TransferReport report;
  if (traces) traces->assign(reg.length(), SweepTrace{});

  for (int bit = 0; bit < reg.length(); ++bit) {
    ModeTransfer mt;
    mt.bit = bit;
    mt.k = layout.k_of_bit(params, bit);
    if (!reg.bits[bit]) {
      report.per_mode.push_back(mt);  // vacuum: exactly stationary
      continue;
    }
    const double g = std::sqrt(params.coupling_at(mt.k));
    const std::array<Complex, 3> psi0 =
        write ? std::array<Complex, 3>{Complex(1.0), Complex(0.0), Complex(0.0)}
              : std::array<Complex, 3>{Complex(0.0), Complex(0.0), Complex(1.0)};
    SweepTrace* trace = traces ? &(*traces)[bit] : nullptr;
    const std::array<Complex, 3> psi =
        sweep_mode(psi0, g, sweep, dt, &mt.leakage_a, trace, trace_stride);
    // target: C-excitation after a write, photon after a read
    mt.fidelity = write ? std::norm(psi[2]) : std::norm(psi[0]);
    mt.norm_drift =
        std::abs(std::norm(psi[0]) + std::norm(psi[1]) + std::norm(psi[2]) - 1.0);
    report.per_mode.push_back(mt);
  }

  for (const ModeTransfer& mt : report.per_mode) {
    report.fidelity *= mt.fidelity;
    report.leakage_a = std::max(report.leakage_a, mt.leakage_a);
  }
  return report;
}

}  // namespace

TransferReport write_sweep(const BitRegister& reg, const MediumParams& params,
                           const SweepProfile& sweep, double dt, const RegisterLayout& layout,
                           std::vector<SweepTrace>* traces, int trace_stride) {
  return run_register_sweep(reg, params, sweep, dt, layout, true, traces, trace_stride);
}

TransferReport read_sweep(const BitRegister& reg, const MediumParams& params,
                          const SweepProfile& sweep, double dt, const RegisterLayout& layout,
                          std::vector<SweepTrace>* traces, int trace_stride) {
  return run_register_sweep(reg, params, sweep, dt, layout, false, traces, trace_stride);
}

double dark_state_overlap(const std::array<Complex, 3>& state, const ModeMixing& mix) {
  const double norm =
      std::norm(state[0]) + std::norm(state[1]) + std::norm(state[2]);
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::invalid_argument("dark_state_overlap: state must be normalized");
  const double cs = mix.cos_theta();
  const double sn = mix.sin_theta();
  const Complex overlap = cs * state[0] - sn * state[2];
  return std::norm(overlap);
}

}  // namespace eitprop
