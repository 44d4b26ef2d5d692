#include "eitprop/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace eitprop::fock {

namespace {

long ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

void FockSpace::validate() const {
  if (modes < 1) throw std::invalid_argument("fock.modes must be >= 1");
  if (cutoff < 1) throw std::invalid_argument("fock.cutoff must be >= 1");
  if (dim() > 10000)
    throw std::invalid_argument("fock space dimension exceeds the desk-scale bound of 10^4");
}

long FockSpace::dim() const { return ipow(cutoff + 1, species_count()); }

int FockSpace::occupation(long state, int species_index) const {
  return static_cast<int>((state / ipow(cutoff + 1, species_index)) % (cutoff + 1));
}

bool FockSpace::interior(long state, int depth) const {
  for (int s = 0; s < species_count(); ++s)
    if (occupation(state, s) > cutoff - depth) return false;
  return true;
}

FockModel::FockModel(const FockSpace& space, const MediumParams& params,
                     std::vector<double> per_mode_g)
    : space_(space), omega_(params.omega), per_mode_g_(std::move(per_mode_g)) {
  space_.validate();
  if (static_cast<int>(per_mode_g_.size()) != space_.modes)
    throw std::invalid_argument("per_mode_g length must equal the mode count");
  for (double g : per_mode_g_)
    if (!(std::isfinite(g) && g >= 0.0))
      throw std::invalid_argument("per_mode_g entries must be finite and >= 0");
  if (!(std::isfinite(omega_) && omega_ >= 0.0))
    throw std::invalid_argument("omega must be finite and >= 0");

  annihilators_.reserve(space_.species_count());
  for (int s = 0; s < space_.species_count(); ++s) annihilators_.push_back(build_annihilator(s));
  build_hamiltonian();
}

SpMat FockModel::build_annihilator(int species_index) const {
  const long n = space_.dim();
  const long stride = ipow(space_.cutoff + 1, species_index);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(n);
  for (long col = 0; col < n; ++col) {
    const int occ = space_.occupation(col, species_index);
    if (occ > 0) entries.emplace_back(col - stride, col, std::sqrt(static_cast<double>(occ)));
  }
  SpMat m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

const SpMat& FockModel::annihilator(int mode, Species s) const {
  return annihilators_[3 * mode + static_cast<int>(s)];
}

SpMat FockModel::creator(int mode, Species s) const {
  return SpMat(annihilator(mode, s).transpose());
}

double FockModel::big_theta(int mode) const { return std::hypot(per_mode_g_[mode], omega_); }

double FockModel::theta(int mode) const { return std::atan2(per_mode_g_[mode], omega_); }

SpMat FockModel::dark(int mode) const {
  const double th = theta(mode);
  return SpMat(std::cos(th) * annihilator(mode, Species::Photon) -
               std::sin(th) * annihilator(mode, Species::ExcitonC));
}

SpMat FockModel::bright(int mode) const {
  const double th = theta(mode);
  return SpMat(std::sin(th) * annihilator(mode, Species::Photon) +
               std::cos(th) * annihilator(mode, Species::ExcitonC));
}

SpMat FockModel::q_ladder(int mode, int sign) const {
  const double s = sign >= 0 ? 1.0 : -1.0;
  return SpMat((annihilator(mode, Species::ExcitonA) + s * bright(mode)) / std::sqrt(2.0));
}

SpMat FockModel::flip_raise() const {
  SpMat t(dim(), dim());
  for (int mode = 0; mode < space_.modes; ++mode)
    t += SpMat(creator(mode, Species::ExcitonA) * annihilator(mode, Species::ExcitonC));
  return t;
}

void FockModel::build_hamiltonian() {
  const long n = space_.dim();
  h_ = SpMat(n, n);
  for (int mode = 0; mode < space_.modes; ++mode) {
    const SpMat hop_a(creator(mode, Species::ExcitonA) * annihilator(mode, Species::Photon));
    const SpMat hop_c(creator(mode, Species::ExcitonA) * annihilator(mode, Species::ExcitonC));
    h_ += per_mode_g_[mode] * SpMat(hop_a + SpMat(hop_a.transpose()));
    h_ += omega_ * SpMat(hop_c + SpMat(hop_c.transpose()));
  }
  h_.makeCompressed();
}

double FockModel::interior_max(const SpMat& m, int depth) const {
  double worst = 0.0;
  for (int outer = 0; outer < m.outerSize(); ++outer) {
    if (!space_.interior(outer, depth)) continue;
    for (SpMat::InnerIterator it(m, outer); it; ++it) {
      if (!space_.interior(it.row(), depth)) continue;
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

double FockModel::masked_fraction(int depth) const {
  long masked = 0;
  for (long i = 0; i < dim(); ++i)
    if (!space_.interior(i, depth)) ++masked;
  return static_cast<double>(masked) / static_cast<double>(dim());
}

std::vector<IdentityCheck> FockModel::check_commutators(double tolerance) const {
  std::vector<IdentityCheck> checks;
  const SpMat identity = SpMat(Eigen::VectorXd::Ones(dim()).asDiagonal());

  const auto add = [&](const std::string& name, const SpMat& residual_matrix, int depth) {
    IdentityCheck c;
    c.name = name;
    c.residual = interior_max(residual_matrix, depth);
    c.tolerance = tolerance;
    c.masked_fraction = masked_fraction(depth);
    c.pass = c.residual < tolerance;
    checks.push_back(std::move(c));
  };

  // adjoint pairing and hermiticity
  add("H - H^T = 0", SpMat(h_ - SpMat(h_.transpose())), 0);

  const SpMat t_plus = flip_raise();
  for (int m = 0; m < space_.modes; ++m) {
    const std::string km = "_k" + std::to_string(m);
    const SpMat& a = annihilator(m, Species::Photon);
    const SpMat& ea = annihilator(m, Species::ExcitonA);
    const SpMat& ec = annihilator(m, Species::ExcitonC);

    add("[a, a+]" + km + " = 1", SpMat(commutator(a, SpMat(a.transpose())) - identity), 1);
    add("[A, A+]" + km + " = 1", SpMat(commutator(ea, SpMat(ea.transpose())) - identity), 1);
    add("[C, C+]" + km + " = 1", SpMat(commutator(ec, SpMat(ec.transpose())) - identity), 1);
    add("[A, C+]" + km + " = 0", commutator(ea, SpMat(ec.transpose())), 1);

    const double g = per_mode_g_[m];
    const double theta_k = big_theta(m);

    add("[C, H]" + km + " = omega A", SpMat(commutator(ec, h_) - omega_ * ea), 1);
    add("[a, H]" + km + " = g A", SpMat(commutator(a, h_) - g * ea), 1);
    // full form; the g a term is forced by the Heisenberg equations
    add("[A, H]" + km + " = g a + omega C",
        SpMat(commutator(ea, h_) - g * a - omega_ * ec), 1);
    add("[D, H]" + km + " = 0", commutator(dark(m), h_), 1);

    const SpMat b_dag(bright(m).transpose());
    const SpMat a_dag(ea.transpose());
    add("[H, B+]" + km + " = Theta A+", SpMat(commutator(h_, b_dag) - theta_k * a_dag), 1);
    add("[H, A+]" + km + " = Theta B+", SpMat(commutator(h_, a_dag) - theta_k * b_dag), 1);

    const SpMat qp_dag(q_ladder(m, +1).transpose());
    const SpMat qm_dag(q_ladder(m, -1).transpose());
    add("[H, Q+^+]" + km + " = +Theta Q+^+", SpMat(commutator(h_, qp_dag) - theta_k * qp_dag), 1);
    add("[H, Q-^+]" + km + " = -Theta Q-^+", SpMat(commutator(h_, qm_dag) + theta_k * qm_dag), 1);
    // double raising: exact only two levels inside the boundary
    add("[H, Q+^+ Q-^+]" + km + " = 0", commutator(h_, SpMat(qp_dag * qm_dag)), 2);

    add("[T+, C+]" + km + " = A+", SpMat(commutator(t_plus, SpMat(ec.transpose())) - a_dag), 1);
    add("[T-, A+]" + km + " = C+",
        SpMat(commutator(SpMat(t_plus.transpose()), a_dag) - SpMat(ec.transpose())), 1);
    add("[T+, A]" + km + " = -C", SpMat(commutator(t_plus, ea) + ec), 1);
    add("[T-, C]" + km + " = -A", SpMat(commutator(SpMat(t_plus.transpose()), ec) + ea), 1);
  }

  // cross-mode commutators vanish
  for (int m1 = 0; m1 < space_.modes; ++m1)
    for (int m2 = 0; m2 < space_.modes; ++m2) {
      if (m1 == m2) continue;
      const std::string suffix = "_k" + std::to_string(m1) + "k" + std::to_string(m2);
      add("[a, a+]" + suffix + " = 0",
          commutator(annihilator(m1, Species::Photon),
                     SpMat(annihilator(m2, Species::Photon).transpose())), 1);
      add("[A, A+]" + suffix + " = 0",
          commutator(annihilator(m1, Species::ExcitonA),
                     SpMat(annihilator(m2, Species::ExcitonA).transpose())), 1);
      add("[C, C+]" + suffix + " = 0",
          commutator(annihilator(m1, Species::ExcitonC),
                     SpMat(annihilator(m2, Species::ExcitonC).transpose())), 1);
    }

  // block structure: H conserves the per-mode excitation number
  {
    double worst = 0.0;
    for (int outer = 0; outer < h_.outerSize(); ++outer)
      for (SpMat::InnerIterator it(h_, outer); it; ++it) {
        for (int m = 0; m < space_.modes; ++m) {
          int row_exc = 0, col_exc = 0;
          for (int s = 0; s < 3; ++s) {
            row_exc += space_.occupation(it.row(), 3 * m + s);
            col_exc += space_.occupation(it.col(), 3 * m + s);
          }
          if (row_exc != col_exc) worst = std::max(worst, std::abs(it.value()));
        }
      }
    IdentityCheck c;
    c.name = "H conserves per-mode excitation number";
    c.residual = worst;
    c.tolerance = tolerance;
    c.masked_fraction = 0.0;
    c.pass = worst < tolerance;
    checks.push_back(std::move(c));
  }

  return checks;
}

SpectrumReport FockModel::verify_spectrum(double tolerance) const {
  SpectrumReport report;
  const long n = dim();

  // --- ladder states Q+^m Q-^s D+^n |0>
  std::vector<SpMat> qp_dag, qm_dag, d_dag;
  for (int m = 0; m < space_.modes; ++m) {
    qp_dag.emplace_back(q_ladder(m, +1).transpose());
    qm_dag.emplace_back(q_ladder(m, -1).transpose());
    d_dag.emplace_back(dark(m).transpose());
  }

  // enumerate per-mode tuples (m, s, n) with m + s + n <= cutoff
  std::vector<std::array<int, 3>> tuples;
  for (int m = 0; m <= space_.cutoff; ++m)
    for (int s = 0; m + s <= space_.cutoff; ++s)
      for (int nq = 0; m + s + nq <= space_.cutoff; ++nq) tuples.push_back({m, s, nq});

  std::vector<std::size_t> pick(space_.modes, 0);
  const std::function<void(int)> recurse = [&](int mode) {
    if (mode == space_.modes) {
      bool trivial = true;
      bool boundary = false;
      for (int m = 0; m < space_.modes; ++m) {
        const auto& tp = tuples[pick[m]];
        if (tp[0] + tp[1] + tp[2] > 0) trivial = false;
        if (tp[0] + tp[1] + tp[2] > space_.cutoff - 1) boundary = true;
      }
      if (trivial) return;
      if (boundary) {
        ++report.ladder_exclusions;
        return;
      }
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      v(0) = 1.0;  // vacuum
      double energy = 0.0;
      std::string name;
      for (int m = 0; m < space_.modes; ++m) {
        const auto& tp = tuples[pick[m]];
        for (int i = 0; i < tp[0]; ++i) v = qp_dag[m] * v;
        for (int i = 0; i < tp[1]; ++i) v = qm_dag[m] * v;
        for (int i = 0; i < tp[2]; ++i) v = d_dag[m] * v;
        energy += (tp[0] - tp[1]) * big_theta(m);
        name += "(m=" + std::to_string(tp[0]) + ",s=" + std::to_string(tp[1]) +
                ",n=" + std::to_string(tp[2]) + ")";
      }
      v.normalize();
      const double residual = (h_ * v - energy * v).cwiseAbs().maxCoeff();
      IdentityCheck c;
      c.name = "H |" + name + "> = " + std::to_string(energy) + " |...>";
      c.residual = residual;
      c.tolerance = tolerance * (1.0 + std::abs(energy));
      c.pass = residual < c.tolerance;
      report.ladder_states.push_back(std::move(c));
      return;
    }
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      pick[mode] = i;
      recurse(mode + 1);
    }
  };
  recurse(0);

  // --- dense diagonalization of the exact excitation blocks
  std::vector<int> excitation(space_.modes);
  std::vector<std::vector<long>> block_members;
  std::vector<std::vector<int>> block_keys;
  {
    // group basis states by their per-mode excitation vector; blocks with
    // any excitation above the cutoff are truncated and skipped
    std::vector<std::vector<int>> keys(n, std::vector<int>(space_.modes));
    for (long i = 0; i < n; ++i) {
      bool usable = true;
      for (int m = 0; m < space_.modes; ++m) {
        int exc = 0;
        for (int s = 0; s < 3; ++s) exc += space_.occupation(i, 3 * m + s);
        keys[i][m] = exc;
        if (exc > space_.cutoff) usable = false;
      }
      if (!usable) continue;
      auto it = std::find(block_keys.begin(), block_keys.end(), keys[i]);
      if (it == block_keys.end()) {
        block_keys.push_back(keys[i]);
        block_members.push_back({i});
      } else {
        block_members[static_cast<std::size_t>(it - block_keys.begin())].push_back(i);
      }
    }
  }

  int dark_dim = 0;
  for (std::size_t b = 0; b < block_keys.size(); ++b) {
    const std::vector<long>& members = block_members[b];
    const long bd = static_cast<long>(members.size());
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(bd, bd);
    for (long r = 0; r < bd; ++r)
      for (long c = 0; c < bd; ++c) block(r, c) = h_.coeff(members[r], members[c]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
    Eigen::VectorXd eigs = solver.eigenvalues();

    // predicted multiset: per mode, all (m - s) Theta with m + s + n = N
    std::vector<double> predicted{0.0};
    for (int m = 0; m < space_.modes; ++m) {
      std::vector<double> next;
      for (int mm = 0; mm <= block_keys[b][m]; ++mm)
        for (int ss = 0; mm + ss <= block_keys[b][m]; ++ss)
          for (double base : predicted) next.push_back(base + (mm - ss) * big_theta(m));
      predicted = std::move(next);
    }
    std::sort(predicted.begin(), predicted.end());

    SpectrumBlockResult res;
    res.excitations = block_keys[b];
    res.dim = bd;
    if (static_cast<long>(predicted.size()) != bd) {
      res.max_deviation = std::numeric_limits<double>::infinity();
    } else {
      for (long i = 0; i < bd; ++i)
        res.max_deviation = std::max(res.max_deviation, std::abs(eigs(i) - predicted[i]));
    }
    // ladder structure makes each block spectrum symmetric about zero
    for (long i = 0; i < bd; ++i)
      res.symmetry_deviation =
          std::max(res.symmetry_deviation, std::abs(eigs(i) + eigs(bd - 1 - i)));
    const double scale = 1.0 + eigs.cwiseAbs().maxCoeff();
    res.pass = res.max_deviation < tolerance * scale &&
               res.symmetry_deviation < tolerance * scale;
    report.blocks.push_back(std::move(res));

    int total_exc = 0;
    for (int e : block_keys[b]) total_exc += e;
    if (total_exc == 1)
      for (long i = 0; i < bd; ++i)
        if (std::abs(eigs(i)) < tolerance) ++dark_dim;
  }
  report.dark_dimension = dark_dim;

  report.pass = report.dark_dimension == space_.modes;
  for (const auto& c : report.ladder_states) report.pass = report.pass && c.pass;
  for (const auto& b : report.blocks) report.pass = report.pass && b.pass;
  return report;
}

std::vector<SubdynamicsCheck> FockModel::verify_subdynamics(double tolerance,
                                                            unsigned seed) const {
  // basis of the closed subalgebra: every a_k, A_k, C_k, their adjoints,
  // and the identity
  std::vector<std::string> names;
  std::vector<SpMat> basis;
  for (int m = 0; m < space_.modes; ++m) {
    const std::string km = "_k" + std::to_string(m);
    const char* species[] = {"a", "A", "C"};
    for (int s = 0; s < 3; ++s) {
      basis.push_back(annihilators_[3 * m + s]);
      names.push_back(species[s] + km);
      basis.emplace_back(annihilators_[3 * m + s].transpose());
      names.push_back(std::string(species[s]) + "+" + km);
    }
  }
  basis.push_back(SpMat(Eigen::VectorXd::Ones(dim()).asDiagonal()));
  names.push_back("1");

  const auto mask = [&](const SpMat& m) {
    SpMat out = m;
    for (int outer = 0; outer < out.outerSize(); ++outer)
      for (SpMat::InnerIterator it(out, outer); it; ++it)
        if (!space_.interior(it.row(), 1) || !space_.interior(it.col(), 1)) it.valueRef() = 0.0;
    out.prune(0.0, 0.0);
    return out;
  };

  std::vector<SpMat> masked_basis;
  masked_basis.reserve(basis.size());
  for (const SpMat& b : basis) masked_basis.push_back(mask(b));

  const auto frob = [](const SpMat& a, const SpMat& b) {
    return SpMat(a.cwiseProduct(b)).sum();
  };

  const std::size_t nb = basis.size();
  Eigen::MatrixXd gram(nb, nb);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) gram(i, j) = frob(masked_basis[i], masked_basis[j]);

  const auto expand = [&](const std::string& name, const SpMat& target) {
    const SpMat y = mask(target);
    Eigen::VectorXd rhs(nb);
    for (std::size_t i = 0; i < nb; ++i) rhs(i) = frob(masked_basis[i], y);
    const Eigen::VectorXd coef = gram.ldlt().solve(rhs);

    SpMat approx(dim(), dim());
    for (std::size_t i = 0; i < nb; ++i) approx += coef(i) * masked_basis[i];
    const double y_norm = std::sqrt(frob(y, y));
    const SpMat diff(y - approx);
    const double res = std::sqrt(std::max(0.0, frob(diff, diff)));

    SubdynamicsCheck check;
    check.name = name;
    check.residual = y_norm > tolerance ? res / y_norm : res;
    check.pass = check.residual < tolerance;
    for (std::size_t i = 0; i < nb; ++i)
      if (std::abs(coef(i)) > 1e-8) check.terms.push_back({names[i], coef(i)});
    return check;
  };

  std::vector<SubdynamicsCheck> checks;
  for (std::size_t i = 0; i + 1 < nb; ++i)
    checks.push_back(expand("[" + names[i] + ", H]", commutator(basis[i], h_)));

  // a random combination within the subalgebra closes too
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  SpMat combo(dim(), dim());
  for (std::size_t i = 0; i + 1 < nb; ++i) combo += unif(rng) * basis[i];
  checks.push_back(expand("[random combination, H]", commutator(combo, h_)));
  return checks;
}

Eigen::Vector3cd FockModel::evolve_single_excitation(int mode, const Eigen::Vector3cd& amplitudes,
                                                     double t) const {
  // single-excitation block of one mode in (photon, A, C) order
  Eigen::Matrix3d block;
  const double g = per_mode_g_[mode];
  block << 0.0, g, 0.0, g, 0.0, omega_, 0.0, omega_, 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(block);
  const Eigen::Matrix3d& vec = solver.eigenvectors();
  const Eigen::Vector3d& val = solver.eigenvalues();
  Eigen::Vector3cd phases;
  for (int i = 0; i < 3; ++i) phases(i) = std::exp(std::complex<double>(0.0, -val(i) * t));
  return vec.cast<std::complex<double>>() * phases.asDiagonal() *
         vec.transpose().cast<std::complex<double>>() * amplitudes;
}

}  // namespace eitprop::fock
