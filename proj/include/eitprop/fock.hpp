#ifndef EITPROP_FOCK_HPP
#define EITPROP_FOCK_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "eitprop/medium.hpp"

namespace eitprop::fock {

using SpMat = Eigen::SparseMatrix<double>;

enum class Species { Photon = 0, ExcitonA = 1, ExcitonC = 2 };

/// Truncated multimode boson space: three species per mode, each with
/// occupation 0..cutoff. Desk scale only (dim <= 10^4 enforced).
struct FockSpace {
  int modes = 1;
  int cutoff = 1;

  void validate() const;
  int species_count() const { return 3 * modes; }
  long dim() const;

  int occupation(long state, int species_index) const;
  /// true when every occupation is at least `depth` below the cutoff;
  /// ladder identities are only exact away from the truncation boundary.
  bool interior(long state, int depth) const;
};

struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  double masked_fraction = 0.0;  ///< share of basis states excluded as boundary
  bool pass = false;
};

struct SpectrumBlockResult {
  std::vector<int> excitations;  ///< per-mode total excitation of the block
  long dim = 0;
  double max_deviation = 0.0;    ///< eigenvalues vs predicted multiset
  double symmetry_deviation = 0.0;  ///< spectrum vs its negation
  bool pass = false;
};

struct SpectrumReport {
  std::vector<IdentityCheck> ladder_states;  ///< H v = E v residuals per (m, s, n)
  long ladder_exclusions = 0;                ///< boundary tuples skipped
  std::vector<SpectrumBlockResult> blocks;
  int dark_dimension = 0;  ///< zero modes in the single-excitation sector
  bool pass = false;
};

struct ExpansionTerm {
  std::string name;
  double coefficient = 0.0;
};

struct SubdynamicsCheck {
  std::string name;                  ///< the commutator being expanded
  std::vector<ExpansionTerm> terms;  ///< least-squares expansion over the subalgebra
  double residual = 0.0;             ///< relative Frobenius residual of the expansion
  bool pass = false;
};

/// Operator matrices of the bosonized model on a truncated space, plus the
/// verification battery. Couplings are real, so every matrix is real and
/// adjoints are plain transposes.
class FockModel {
 public:
  /// per_mode_g holds g_k sqrt(N) per mode; omega comes from params.
  FockModel(const FockSpace& space, const MediumParams& params,
            std::vector<double> per_mode_g);

  const FockSpace& space() const { return space_; }
  long dim() const { return space_.dim(); }
  double omega() const { return omega_; }
  double g(int mode) const { return per_mode_g_[mode]; }
  double big_theta(int mode) const;
  double theta(int mode) const;

  const SpMat& annihilator(int mode, Species s) const;
  SpMat creator(int mode, Species s) const;

  SpMat dark(int mode) const;     ///< D_k = cos a_k - sin C_k
  SpMat bright(int mode) const;   ///< B_k = sin a_k + cos C_k
  SpMat q_ladder(int mode, int sign) const;  ///< (A_k +- B_k)/sqrt(2)
  SpMat flip_raise() const;       ///< bosonized T_+: sum_k A_k^dag C_k

  const SpMat& hamiltonian() const { return h_; }

  /// max |entry| of m restricted to rows and columns `depth` inside the
  /// truncation boundary.
  double interior_max(const SpMat& m, int depth) const;
  double masked_fraction(int depth) const;

  std::vector<IdentityCheck> check_commutators(double tolerance = 1e-10) const;
  SpectrumReport verify_spectrum(double tolerance = 1e-10) const;
  std::vector<SubdynamicsCheck> verify_subdynamics(double tolerance = 1e-10,
                                                   unsigned seed = 12345) const;

  /// Dense eigen-decomposition propagation of a single-excitation state of
  /// one mode; cross-checks the closed-form mode evolution.
  Eigen::Vector3cd evolve_single_excitation(int mode, const Eigen::Vector3cd& amplitudes,
                                            double t) const;

 private:
  SpMat build_annihilator(int species_index) const;
  void build_hamiltonian();

  FockSpace space_;
  double omega_ = 0.0;
  std::vector<double> per_mode_g_;
  std::vector<SpMat> annihilators_;  // indexed by 3 * mode + species
  SpMat h_;
};

inline SpMat commutator(const SpMat& a, const SpMat& b) {
  return SpMat(a * b) - SpMat(b * a);
}

}  // namespace eitprop::fock

#endif
