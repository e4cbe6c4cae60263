#pragma once

// Antisymmetric N-particle states over R orthonormal orbitals.
//
// A state is a dense amplitude vector over Slater determinants [k1,...,kN]
// (1-based, strictly increasing) in lexicographic order. The sign convention
// for inserting orbital p into an (N-1)-set J is
//
//   sign(p, J) = (-1)^(number of elements of J smaller than p),
//
// i.e. cofactor expansion along the first row. partial_inner carries a
// 1/sqrt(N) so that gamma_pp = N * ||partial_inner(p, psi)||^2.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "nrep/config.hpp"
#include "nrep/numerics.hpp"

namespace nrep {

/// 1-based orbital label.
class OrbitalIndex {
 public:
  constexpr explicit OrbitalIndex(int value) : value_(value) {}
  constexpr int value() const { return value_; }
  constexpr auto operator<=>(const OrbitalIndex&) const = default;

 private:
  int value_;
};

/// Strictly increasing list of 1-based orbitals labelling one determinant.
class DetIndex {
 public:
  DetIndex() = default;
  /// Throws InvalidArgument unless strictly increasing and >= 1.
  explicit DetIndex(std::vector<int> orbitals);
  DetIndex(std::initializer_list<int> orbitals) : DetIndex(std::vector<int>(orbitals)) {}

  /// Sorts an arbitrary list of distinct orbitals and returns the permutation sign.
  static std::pair<DetIndex, int> canonicalize(std::span<const int> orbitals);

  std::span<const int> orbitals() const { return orbitals_; }
  int size() const { return static_cast<int>(orbitals_.size()); }
  int operator[](int i) const { return orbitals_[static_cast<std::size_t>(i)]; }
  bool contains(int orbital) const;
  std::uint64_t mask() const;

  auto operator<=>(const DetIndex&) const = default;

 private:
  std::vector<int> orbitals_;
};

std::uint64_t binomial(int n, int k);

/// Lexicographic enumeration of all n-subsets of [1, r].
std::vector<DetIndex> basis_index(int n, int r, std::size_t cap = kDefaultDimensionCap);

/// Position of a determinant within basis_index(n, r).
std::size_t det_rank(const DetIndex& det, int r);
std::size_t det_rank(std::uint64_t mask, int n, int r);

/// (-1)^{#(J below p)}; J is given as an orbital bitmask (bit p-1 = orbital p).
int insertion_sign(int p, std::uint64_t set_mask);

/// Amplitude vector over the lexicographic determinant basis of (n, r).
class FermionState {
 public:
  /// Zero state. Throws DimensionError for n > r or C(r, n) > cap.
  FermionState(int n, int r, std::size_t cap = kDefaultDimensionCap);
  FermionState(int n, int r, VectorXc amplitudes, std::size_t cap = kDefaultDimensionCap);

  int n() const { return n_; }
  int r() const { return r_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }

  const VectorXc& amplitudes() const { return amplitudes_; }
  VectorXc& amplitudes() { return amplitudes_; }

  Complex amplitude(const DetIndex& det) const;
  void set_amplitude(const DetIndex& det, Complex value);
  /// Adds `value` times the ordered product [orbitals...], absorbing the sort sign.
  void add_ordered(std::span<const int> orbitals, Complex value);

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = kDefaultTolerances.normalization) const;
  FermionState normalized() const;

  FermionState& operator+=(const FermionState& other);
  FermionState& operator-=(const FermionState& other);
  FermionState& operator*=(Complex factor);

 private:
  int n_;
  int r_;
  VectorXc amplitudes_;
};

FermionState operator+(FermionState lhs, const FermionState& rhs);
FermionState operator-(FermionState lhs, const FermionState& rhs);
FermionState operator*(Complex factor, FermionState state);

/// Hermitian PSD matrix with trace n, gamma_pq = <a_q^+ a_p>.
struct OneRDM {
  int n = 0;
  MatrixXc entries;

  int r() const { return static_cast<int>(entries.rows()); }
};

FermionState slater(const DetIndex& orbitals, int n, int r);

/// <psi1|psi2>, conjugate-linear in the first argument.
Complex inner(const FermionState& psi1, const FermionState& psi2);

/// <e_p, psi>_1 as an (n-1)-particle state.
FermionState partial_inner(OrbitalIndex p, const FermionState& psi);

/// <phi, psi>_1 for an arbitrary one-particle vector phi (length r).
FermionState partial_inner(const VectorXc& phi, const FermionState& psi);

/// Normalized antisymmetrized product A(phi (x) Phi), an (n+1)-particle state.
FermionState wedge(const VectorXc& phi, const FermionState& Phi);

/// One-particle function <Phi_small, Phi>_{2..N} obtained by contracting an
/// (N-1)-particle state against the last N-1 slots of an N-particle state.
VectorXc contract_complement(const FermionState& small, const FermionState& big);

/// One-particle reduced density matrix. Rejects states whose norm deviates
/// from 1 by more than tol.normalization.
OneRDM one_rdm(const FermionState& psi, const Tolerances& tol = kDefaultTolerances);

/// Same contraction without the normalization gate; trace is n * ||psi||^2.
OneRDM one_rdm_unchecked(const FermionState& psi);

/// Applies the one-particle unitary U to every particle (N-th compound of U).
/// one_rdm(rotate(psi, U)) = U gamma U^H.
FermionState rotate(const FermionState& psi, const MatrixXc& u,
                    const Tolerances& tol = kDefaultTolerances);

/// Hole density matrix I - gamma for the r - n hole system.
OneRDM particle_hole_rdm(const OneRDM& gamma, const Tolerances& tol = kDefaultTolerances);

/// Validates the OneRDM invariants (Hermitian, PSD, trace n); throws NumericalError.
void validate_rdm(const OneRDM& gamma, const Tolerances& tol = kDefaultTolerances);

}  // namespace nrep
