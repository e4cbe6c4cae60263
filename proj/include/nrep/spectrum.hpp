#pragma once

#include <span>
#include <vector>

#include "nrep/config.hpp"
#include "nrep/fermion.hpp"

namespace nrep {

/// Occupation numbers in non-increasing order, tagged with the particle count.
/// Only the ordering is enforced here; Pauli bounds and the trace are what
/// check_pauli() reports on.
class Spectrum {
 public:
  /// Throws InvalidArgument on empty, non-finite or increasing input.
  Spectrum(std::vector<double> lambdas, int n);

  /// Sorts into non-increasing order (stable on ties) before validating.
  static Spectrum sorted(std::vector<double> lambdas, int n);

  std::span<const double> lambdas() const { return lambdas_; }
  /// 1-based access, matching lambda_1 >= lambda_2 >= ...
  double operator()(int k) const { return lambdas_.at(static_cast<std::size_t>(k - 1)); }
  int size() const { return static_cast<int>(lambdas_.size()); }
  int n() const { return n_; }
  double sum() const;

 private:
  std::vector<double> lambdas_;
  int n_;
};

/// Eigenvalues of a one-particle density matrix.
Spectrum spectrum_of(const OneRDM& gamma, const Tolerances& tol = kDefaultTolerances);

/// Largest |lambda_{2k-1} - lambda_{2k}| over consecutive pairs of `values`; an
/// odd leftover entry contributes its own magnitude.
double pairing_residual(std::span<const double> values);

/// Largest absolute difference between two multisets of equal size.
double multiset_distance(std::vector<double> a, std::vector<double> b);

}  // namespace nrep
