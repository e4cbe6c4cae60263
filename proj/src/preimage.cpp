#include <algorithm>
#include <cmath>
#include <string>

#include "nrep/errors.hpp"
#include "nrep/representability.hpp"

namespace nrep {

namespace {

double safe_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

}  // namespace

PreimageCoefficients bd_preimage_coefficients(const Spectrum& spec, double tol) {
  const BDReport bd = check_bd(spec, tol);
  if (!bd.pass) {
    throw NotRepresentable("spectrum violates the Borland-Dennis conditions (slack " +
                           std::to_string(bd.inequality_slack) + ")");
  }
  PreimageCoefficients c;
  c.a2 = 0.5 * (spec(2) + spec(3) - spec(6));
  c.b2 = 0.5 * (spec(1) - spec(2) + spec(4));
  c.s2 = 0.5 * (spec(2) - spec(3) + spec(6));
  c.t2 = 0.5 * (spec(6) - spec(2) + spec(3));
  if (c.a2 < -tol || c.b2 < -tol || c.s2 < -tol || c.t2 < -tol)
    throw NotRepresentable("negative squared modulus in sufficiency construction");
  return c;
}

std::pair<PreimageCoefficients, FermionState> construct_bd_preimage(const Spectrum& spec, double tol) {
  const PreimageCoefficients c = bd_preimage_coefficients(spec, tol);
  FermionState psi(3, 6);
  psi.set_amplitude({1, 2, 3}, safe_sqrt(c.a2));
  psi.set_amplitude({1, 4, 5}, safe_sqrt(c.b2));
  psi.set_amplitude({2, 4, 6}, safe_sqrt(c.s2));
  psi.set_amplitude({3, 5, 6}, safe_sqrt(c.t2));
  return {c, std::move(psi)};
}

FermionState construct_two_preimage(const Spectrum& spec, std::span<const double> phases, double tol) {
  const CheckReport pauli = check_pauli(spec, tol);
  if (!pauli.pass) throw NotRepresentable("construct_two_preimage: " + pauli.note);
  const CheckReport paired = check_two_rep(spec, tol);
  if (!paired.pass) throw NotRepresentable("construct_two_preimage: " + paired.note);

  const int r = spec.size();
  std::vector<int> pairs;  // 1-based index of the first orbital of each occupied pair
  for (int k = 1; k + 1 <= r; k += 2)
    if (spec(k + 1) > tol) pairs.push_back(k);
  if (phases.size() != pairs.size()) {
    throw InvalidArgument("construct_two_preimage: expected " + std::to_string(pairs.size()) +
                          " phases, got " + std::to_string(phases.size()));
  }

  FermionState psi(2, r);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const int k = pairs[i];
    psi.set_amplitude({k, k + 1}, std::polar(safe_sqrt(spec(k + 1)), phases[i]));
  }
  return psi;
}

}  // namespace nrep
