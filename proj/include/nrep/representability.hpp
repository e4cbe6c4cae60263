#pragma once

// Pure-state N-representability checks and pre-image constructors.
//
// Checkers take sorted spectra and return structured reports; they never
// throw on a failed condition, only on malformed input. Constructors throw
// NotRepresentable when the requested spectrum has no pre-image.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nrep/config.hpp"
#include "nrep/fermion.hpp"
#include "nrep/spectrum.hpp"

namespace nrep {

using Matrix2c = Eigen::Matrix2cd;
using Pair = std::array<double, 2>;

struct Residual {
  std::string name;
  double value = 0.0;
};

struct CheckReport {
  std::string check;
  bool pass = false;
  std::vector<Residual> residuals;
  std::string note;
};

/// Borland-Dennis conditions for N = 3, rank 6.
struct BDReport {
  std::array<double, 3> equality_residuals{};  // |lambda_k + lambda_{7-k} - 1|, k = 1..3
  double inequality_slack = 0.0;               // lambda_3 + 1 - lambda_1 - lambda_2
  bool pass = false;
};

/// Squared moduli of the four amplitudes of the sufficiency pre-image
///   a [1,2,3] + b [1,4,5] + s [6,2,4] + t [6,5,3].
struct PreimageCoefficients {
  double a2 = 0.0;
  double b2 = 0.0;
  double s2 = 0.0;
  double t2 = 0.0;
};

/// Coefficients x_abc of the eight determinants [p_a, q_b, r_c] with
/// p = (1, 6), q = (2, 5), r = (3, 4). The coefficient multiplies the
/// ordered product in that slot order, not the canonical sorted determinant.
struct EightCoefficients {
  std::array<Complex, 8> x{};

  Complex& operator()(int a, int b, int c) { return x[static_cast<std::size_t>(4 * a + 2 * b + c)]; }
  Complex operator()(int a, int b, int c) const { return x[static_cast<std::size_t>(4 * a + 2 * b + c)]; }
  /// The three orbitals of slot (a, b, c), in slot order.
  static std::array<int, 3> orbitals(int a, int b, int c);
};

/// Natural-orbital canonical form of a 3-particle state on 6 orbitals.
struct NaturalForm {
  EightCoefficients coefficients;
  double leakage = 0.0;     // norm of the 12 amplitudes outside the eight-term form
  Spectrum spectrum;        // occupations of the natural orbitals, non-increasing
  MatrixXc orbitals;        // column k is natural orbital k+1
};

struct SplitDecomposition {
  VectorXc phi1;                       // top natural orbital
  double lambda1 = 0.0;
  FermionState Phi1;                   // normalized (n-1)-particle state
  std::optional<FermionState> Phi2;    // normalized n-particle state; absent when lambda1 = 1
  std::array<double, 2> strong_orth_residuals{};  // ||<phi1,Phi2>_1||, ||<Phi1,Phi2>_{2..N}||
  double reconstruction_residual = 0.0;
};

struct WeylBlocks {
  Matrix2c s_matrix;
  Matrix2c t_matrix;
  Matrix2c w1;
  Matrix2c w2;
  Matrix2c w3;
  double sigma = 0.0;  // larger eigenvalue of S S^H
  double tau = 0.0;    // larger eigenvalue of T T^H
  /// max |W_i - (matching 2x2 block of the state's 1-RDM)|, i = 1..3
  std::array<double, 3> consistency{};
};

/// Slacks of sigma + tau >= l2, l1 - sigma + tau >= l4, sigma + l6 - tau >= l4.
struct WeylChain {
  std::array<double, 3> slack{};
  bool holds(double tol) const;
};

// --- spectral checks --------------------------------------------------------

CheckReport check_pauli(const Spectrum& spec, double tol = kDefaultTolerances.assertion);

/// Requires six entries and n = 3.
BDReport check_bd(const Spectrum& spec, double tol = kDefaultTolerances.assertion);

/// Requires n = 2.
CheckReport check_two_rep(const Spectrum& spec, double tol = kDefaultTolerances.assertion);

/// Requires n odd and n + 2 entries.
CheckReport check_rank_n_plus_2(const Spectrum& spec, double tol = kDefaultTolerances.assertion);

/// Weyl's inequalities for A + B = C with 2x2 Hermitian matrices. Throws on
/// unsorted pairs or mismatched traces.
CheckReport check_weyl_2x2(const Pair& a, const Pair& b, const Pair& c,
                           double tol = kDefaultTolerances.assertion);

// --- constructors -----------------------------------------------------------

/// Squared moduli solving the sufficiency form for a sorted BD spectrum.
PreimageCoefficients bd_preimage_coefficients(const Spectrum& spec,
                                              double tol = kDefaultTolerances.assertion);

/// Pre-image with one_rdm = diag(spec). All amplitudes of the canonical
/// (sorted) determinants are real non-negative.
std::pair<PreimageCoefficients, FermionState> construct_bd_preimage(
    const Spectrum& spec, double tol = kDefaultTolerances.assertion);

/// sum_k exp(i theta_k) sqrt(lambda_2k) [2k-1, 2k] over the non-zero pairs.
FermionState construct_two_preimage(const Spectrum& spec, std::span<const double> phases,
                                    double tol = kDefaultTolerances.assertion);

// --- canonical forms --------------------------------------------------------

SplitDecomposition coleman_split(const FermionState& psi, const Tolerances& tol = kDefaultTolerances);

NaturalForm natural_form(const FermionState& psi, const Tolerances& tol = kDefaultTolerances);

/// The (3, 6) state sum x_abc [p_a, q_b, r_c].
FermionState eight_term_state(const EightCoefficients& coeffs);

WeylBlocks weyl_blocks(const EightCoefficients& coeffs, const Tolerances& tol = kDefaultTolerances);

WeylChain weyl_chain(const WeylBlocks& blocks, const Spectrum& spec);

/// Occupation bookkeeping of a (3, 6) Coleman split in the natural basis:
/// lambda_k = lambda_1 n1(k) + (1 - lambda_1) n2(k), with n1, n2 the
/// occupations of phi_k in Phi1, Phi2.
struct SplitRelations {
  double eigenvalue_relation = 0.0;  // max_k |lambda_k - lambda_1 n1(k) - (1 - lambda_1) n2(k)|, k = 2..5
  double pair_closure = 0.0;         // max |n_i(k) + n_i(7-k) - 1|, k = 2, 3
  double g1_occupation = 0.0;        // |n2(6) - 1|
  double pair_sums = 0.0;            // max(|l2 + l5 - 1|, |l3 + l4 - 1|)
  double max() const;
};

SplitRelations split_relations(const SplitDecomposition& split, const NaturalForm& form);

}  // namespace nrep
