#include "eitprop/medium.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace eitprop {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void MediumParams::validate() const {
  require(std::isfinite(omega) && omega >= 0.0, "medium.omega must be finite and >= 0");
  require(std::isfinite(coupling_g2n) && coupling_g2n >= 0.0,
          "medium.coupling_g2n must be finite and >= 0");
  require(omega > 0.0 || coupling_g2n > 0.0,
          "medium.omega and medium.coupling_g2n cannot both be zero (mixing angle undefined)");
  require(std::isfinite(k0) && k0 > 0.0, "medium.k0 must be finite and > 0");
  require(std::isfinite(c) && c > 0.0, "medium.c must be finite and > 0");
}

double MediumParams::coupling_at(double k) const {
  if (coupling_form == CouplingForm::ConstantAtK0) return coupling_g2n;
  return coupling_g2n * (k / k0);
}

double MediumParams::omega_m_at(double k) const {
  const double base = omega_m0 >= 0.0 ? omega_m0 : coupling_g2n;
  return base * (k / k0);
}

void GaussianPulse::validate() const {
  require(std::isfinite(k0) && k0 > 0.0, "pulse.k0 must be finite and > 0");
  require(std::isfinite(f) && f > 0.0, "pulse.f must be finite and > 0");
  require(std::isfinite(amplitude) && amplitude > 0.0, "pulse.amplitude must be finite and > 0");
}

double GaussianPulse::alpha(double k) const {
  const double d = k - k0;
  return amplitude * std::exp(-f * f * d * d);
}

double GaussianPulse::spectral_sigma() const { return 1.0 / (std::sqrt(2.0) * f); }

double ModeMixing::cos_theta() const { return std::cos(theta); }
double ModeMixing::sin_theta() const { return std::sin(theta); }

ModeMixing mixing(const MediumParams& params, double k) {
  params.validate();
  if (!(std::isfinite(k) && k > 0.0)) throw std::invalid_argument("mixing: k must be > 0");

  const double g2n = params.coupling_at(k);
  if (params.omega == 0.0 && g2n == 0.0)
    throw std::invalid_argument("mixing: omega = 0 with vanishing coupling at k");

  ModeMixing m;
  m.k = k;
  m.omega = params.omega;
  m.g_root_n = std::sqrt(g2n);
  // atan2 covers the omega = 0 limit (theta = pi/2) without branching.
  m.theta = std::atan2(m.g_root_n, params.omega);
  m.big_theta = std::hypot(m.g_root_n, params.omega);
  m.n_dimensionless = params.omega > 0.0 ? g2n / (params.omega * params.omega)
                                         : std::numeric_limits<double>::infinity();
  return m;
}

GroupVelocities group_velocities(const MediumParams& params) {
  params.validate();
  const ModeMixing m = mixing(params, params.k0);
  double shift;  // d big_theta / dk at k0 for the linear-in-k coupling
  if (params.omega > 0.0) {
    const double n = m.n_dimensionless;
    shift = params.omega / (2.0 * params.k0 * params.c) * n / std::sqrt(1.0 + n);
  } else {
    // limit of omega * n / sqrt(1+n) as n -> inf
    shift = m.g_root_n / (2.0 * params.k0 * params.c);
  }
  GroupVelocities v;
  v.shift_fraction = shift;
  v.v_plus = params.c * (1.0 + shift);
  v.v_zero = params.c;
  v.v_minus = params.c * (1.0 - shift);
  return v;
}

AnalyticCoefficients analytic_coefficients(const MediumParams& params) {
  params.validate();
  if (params.omega <= 0.0)
    throw std::invalid_argument("analytic_coefficients: requires omega > 0");
  if (params.coupling_form != CouplingForm::LinearInK)
    throw std::invalid_argument(
        "analytic_coefficients: closed forms assume the linear-in-k coupling form");

  const double k0 = params.k0;
  const double a = params.coupling_g2n / (params.omega * params.omega * k0);  // G^2/omega^2
  const double ak0 = a * k0;
  const double one_p = 1.0 + ak0;

  AnalyticCoefficients out;
  out.coupling_ratio = a;
  out.dressed_omega0 = params.omega * std::sqrt(one_p);
  out.chirp_split = (3.0 + ak0) / (2.0 * k0 * one_p);
  out.velocity_shift = out.dressed_omega0 * a / (2.0 * one_p);
  out.chirp_normal = (1.0 - ak0) / (2.0 * k0 * one_p);
  out.carrier_v_plus = params.c + out.dressed_omega0 / k0;
  out.carrier_v_minus = params.c - out.dressed_omega0 / k0;
  return out;
}

SplitRegime split_regime(const MediumParams& params) {
  const GroupVelocities v = group_velocities(params);
  return v.shift_fraction > 1.0 ? SplitRegime::NegativeVelocity : SplitRegime::Subluminal;
}

const char* to_string(SplitRegime regime) {
  return regime == SplitRegime::Subluminal ? "subluminal" : "negative_velocity";
}

double amplitude_ratio(const MediumParams& params) {
  params.validate();
  if (params.omega <= 0.0)
    throw std::invalid_argument("amplitude_ratio: diverges at omega = 0");
  const ModeMixing m = mixing(params, params.k0);
  return m.n_dimensionless / 2.0;
}

}  // namespace eitprop
