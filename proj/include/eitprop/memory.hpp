#ifndef EITPROP_MEMORY_HPP
#define EITPROP_MEMORY_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "eitprop/polariton.hpp"

namespace eitprop {

/// Little-endian bit register: bit i carries weight 2^i.
struct BitRegister {
  std::vector<std::uint8_t> bits;

  int length() const { return static_cast<int>(bits.size()); }
};

/// Binary encoding of n into L bits; rejects n >= 2^L.
BitRegister encode(std::uint64_t n, int length);
std::uint64_t decode(const BitRegister& reg);

enum class SweepShape { Linear, Cosine, Exponential };

SweepShape sweep_shape_from_name(const std::string& name);
const char* to_string(SweepShape shape);

/// Monotone drive schedule omega(t) between omega_start and omega_end.
/// The exponential shape decays with rate 5/duration and is shifted to hit
/// its endpoints exactly.
struct SweepProfile {
  double omega_start = 0.0;
  double omega_end = 0.0;
  double duration = 0.0;
  SweepShape shape = SweepShape::Cosine;

  void validate() const;
  double omega_at(double t) const;
};

/// Wave-number layout of the register modes: bit i lives at
/// k0 (1 + i * mode_spacing).
struct RegisterLayout {
  double mode_spacing = 0.02;

  double k_of_bit(const MediumParams& params, int bit) const {
    return params.k0 * (1.0 + mode_spacing * bit);
  }
};

struct ModeTransfer {
  int bit = 0;
  double k = 0.0;
  double fidelity = 1.0;   ///< squared overlap with the per-mode target state
  double leakage_a = 0.0;  ///< max excited-state population during the sweep
  double norm_drift = 0.0;
};

/// Aggregate of the per-mode transfers. fidelity is the product over
/// occupied modes (the multi-mode state fidelity); unoccupied modes are
/// vacuum, exactly stationary, and contribute 1.
struct TransferReport {
  std::vector<ModeTransfer> per_mode;
  double fidelity = 1.0;
  double leakage_a = 0.0;
};

/// Optional dense record of one mode's sweep, for CSV output.
struct SweepTrace {
  std::vector<double> t;
  std::vector<std::array<double, 3>> populations;  // photon, A-exciton, C-exciton
  std::vector<double> dark_overlap;
};

/// Integrate one mode's amplitudes through the drive schedule with the
/// fixed-step RK4 scheme (omega sampled at substeps). The state is the
/// single-excitation 3-vector in (photon, A, C) order.
std::array<Complex, 3> sweep_mode(const std::array<Complex, 3>& psi0, double g_root_n,
                                  const SweepProfile& sweep, double dt,
                                  double* max_leakage = nullptr,
                                  SweepTrace* trace = nullptr, int trace_stride = 0);

/// Store the register: each occupied mode starts as one photon and is
/// carried to the collective C-excitation by sweeping omega to zero.
/// Requires sweep.omega_end == 0 and dt fine enough that
/// big_theta_max * dt < 0.1.
TransferReport write_sweep(const BitRegister& reg, const MediumParams& params,
                           const SweepProfile& sweep, double dt,
                           const RegisterLayout& layout = {},
                           std::vector<SweepTrace>* traces = nullptr, int trace_stride = 0);

/// Retrieve the register: reverse sweep from omega = 0, C-excitation back
/// to a photon. Requires sweep.omega_start == 0.
TransferReport read_sweep(const BitRegister& reg, const MediumParams& params,
                          const SweepProfile& sweep, double dt,
                          const RegisterLayout& layout = {},
                          std::vector<SweepTrace>* traces = nullptr, int trace_stride = 0);

/// Squared overlap of a normalized per-mode state with the instantaneous
/// dark direction (cos theta, 0, -sin theta). Rejects unnormalized input.
double dark_state_overlap(const std::array<Complex, 3>& state, const ModeMixing& mix);

}  // namespace eitprop

#endif
