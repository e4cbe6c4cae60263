#include <algorithm>
#include <cmath>
#include <string>

#include "nrep/errors.hpp"
#include "nrep/representability.hpp"

namespace nrep {

namespace {

bool nearly_equal(double x, double y, double rel_tol) {
  return std::abs(x - y) <= rel_tol * std::max({1.0, std::abs(x), std::abs(y)});
}

double occupation(const OneRDM& gamma, const VectorXc& orbital) {
  return orbital.dot(gamma.entries * orbital).real();
}

}  // namespace

std::array<int, 3> EightCoefficients::orbitals(int a, int b, int c) {
  return {a == 0 ? 1 : 6, b == 0 ? 2 : 5, c == 0 ? 3 : 4};
}

SplitDecomposition coleman_split(const FermionState& psi, const Tolerances& tol) {
  const int n = psi.n();
  if (n < 2) throw InvalidArgument("coleman_split: need at least two particles");
  const OneRDM gamma = one_rdm(psi, tol);
  const auto eig = eigh(gamma.entries, tol);
  const double lambda1 = eig.values(0);
  if (lambda1 <= tol.assertion) throw InvalidArgument("coleman_split: largest occupation vanishes");

  const bool saturated = 1.0 - lambda1 <= tol.unit_occupation;
  if (!saturated && eig.values.size() > 1 && nearly_equal(lambda1, eig.values(1), tol.degeneracy)) {
    throw DegeneracyError("coleman_split: largest occupation " + std::to_string(lambda1) +
                          " is degenerate, top natural orbital is ambiguous");
  }

  const VectorXc phi1 = eig.vectors.col(0);
  FermionState Phi1 = partial_inner(phi1, psi).normalized();
  const FermionState head = std::sqrt(lambda1) * wedge(phi1, Phi1);
  const FermionState rest = psi - head;

  SplitDecomposition out{phi1, lambda1, std::move(Phi1), std::nullopt, {}, 0.0};
  if (saturated) {
    out.reconstruction_residual = rest.norm();
    return out;
  }

  FermionState Phi2 = rest.normalized();
  const double weight2 = std::sqrt(1.0 - lambda1);
  out.reconstruction_residual = (psi - head - weight2 * Phi2).norm();
  out.strong_orth_residuals[0] = partial_inner(phi1, Phi2).norm();
  out.strong_orth_residuals[1] = contract_complement(out.Phi1, Phi2).norm();
  out.Phi2 = std::move(Phi2);
  return out;
}

NaturalForm natural_form(const FermionState& psi, const Tolerances& tol) {
  if (psi.n() != 3 || psi.r() != 6) throw InvalidArgument("natural_form: need a 3-particle state on 6 orbitals");
  const OneRDM gamma = one_rdm(psi, tol);
  const auto eig = eigh(gamma.entries, tol);
  for (Eigen::Index k = 0; k + 1 < eig.values.size(); ++k) {
    if (nearly_equal(eig.values(k), eig.values(k + 1), tol.degeneracy)) {
      throw DegeneracyError("natural_form: occupations " + std::to_string(k + 1) + " and " +
                            std::to_string(k + 2) +
                            " coincide; perturb the state or accept an ambiguous natural basis");
    }
  }

  const FermionState rotated = rotate(psi, eig.vectors.adjoint(), tol);
  EightCoefficients coeffs;
  VectorXc outside = rotated.amplitudes();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        const auto orbs = EightCoefficients::orbitals(a, b, c);
        const auto [det, sign] = DetIndex::canonicalize(orbs);
        const auto slot = static_cast<Eigen::Index>(det_rank(det, 6));
        coeffs(a, b, c) = static_cast<double>(sign) * rotated.amplitudes()(slot);
        outside(slot) = 0.0;
      }

  return NaturalForm{coeffs, outside.norm(),
                     Spectrum(std::vector<double>(eig.values.begin(), eig.values.end()), 3), eig.vectors};
}

FermionState eight_term_state(const EightCoefficients& coeffs) {
  FermionState psi(3, 6);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) psi.add_ordered(EightCoefficients::orbitals(a, b, c), coeffs(a, b, c));
  return psi;
}

double SplitRelations::max() const {
  return std::max({eigenvalue_relation, pair_closure, g1_occupation, pair_sums});
}

SplitRelations split_relations(const SplitDecomposition& split, const NaturalForm& form) {
  if (split.Phi1.n() != 2 || split.Phi1.r() != 6)
    throw InvalidArgument("split_relations: need the split of a 3-particle state on 6 orbitals");
  const Spectrum& l = form.spectrum;
  const OneRDM g1 = one_rdm_unchecked(split.Phi1);
  const OneRDM g2 = split.Phi2 ? one_rdm_unchecked(*split.Phi2) : OneRDM{3, MatrixXc::Zero(6, 6)};

  std::array<double, 7> n1{};
  std::array<double, 7> n2{};
  for (int k = 1; k <= 6; ++k) {
    const VectorXc v = form.orbitals.col(k - 1);
    n1[static_cast<std::size_t>(k)] = occupation(g1, v);
    n2[static_cast<std::size_t>(k)] = occupation(g2, v);
  }

  SplitRelations rel;
  const double l1 = split.lambda1;
  for (int k = 2; k <= 5; ++k) {
    const auto i = static_cast<std::size_t>(k);
    rel.eigenvalue_relation = std::max(rel.eigenvalue_relation, std::abs(l(k) - l1 * n1[i] - (1.0 - l1) * n2[i]));
  }
  for (int k = 2; k <= 3; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const auto j = static_cast<std::size_t>(7 - k);
    rel.pair_closure = std::max(rel.pair_closure, std::abs(n1[i] + n1[j] - 1.0));
    if (split.Phi2) rel.pair_closure = std::max(rel.pair_closure, std::abs(n2[i] + n2[j] - 1.0));
  }
  rel.g1_occupation = split.Phi2 ? std::abs(n2[6] - 1.0) : 0.0;
  rel.pair_sums = std::max(std::abs(l(2) + l(5) - 1.0), std::abs(l(3) + l(4) - 1.0));
  return rel;
}

}  // namespace nrep
