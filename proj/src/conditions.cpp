#include <algorithm>
#include <cmath>
#include <string>

#include "nrep/errors.hpp"
#include "nrep/representability.hpp"

namespace nrep {

CheckReport check_pauli(const Spectrum& spec, double tol) {
  double bound = 0.0;
  for (double l : spec.lambdas()) bound = std::max({bound, l - 1.0, -l});
  const double trace = std::abs(spec.sum() - spec.n());
  CheckReport rep{"pauli", bound <= tol && trace <= tol, {{"bound_violation", bound}, {"trace", trace}}, {}};
  if (bound > tol) rep.note = "occupation outside [0, 1]";
  else if (trace > tol) rep.note = "occupations do not sum to n";
  return rep;
}

BDReport check_bd(const Spectrum& spec, double tol) {
  if (spec.size() != 6) throw InvalidArgument("check_bd: need exactly 6 occupations");
  if (spec.n() != 3) throw InvalidArgument("check_bd: need n = 3");
  BDReport rep;
  for (int k = 1; k <= 3; ++k)
    rep.equality_residuals[static_cast<std::size_t>(k - 1)] = std::abs(spec(k) + spec(7 - k) - 1.0);
  rep.inequality_slack = spec(3) + 1.0 - spec(1) - spec(2);
  rep.pass = std::ranges::all_of(rep.equality_residuals, [tol](double r) { return r <= tol; }) &&
             rep.inequality_slack >= -tol;
  return rep;
}

CheckReport check_two_rep(const Spectrum& spec, double tol) {
  if (spec.n() != 2) throw InvalidArgument("check_two_rep: need n = 2");
  const double pairing = pairing_residual(spec.lambdas());
  CheckReport rep{"two_rep", pairing <= tol, {{"pairing", pairing}}, {}};
  if (!rep.pass) rep.note = "non-zero occupations are not doubly degenerate";
  return rep;
}

CheckReport check_rank_n_plus_2(const Spectrum& spec, double tol) {
  const int n = spec.n();
  if (n % 2 == 0) throw InvalidArgument("check_rank_n_plus_2: need odd n");
  if (spec.size() != n + 2)
    throw InvalidArgument("check_rank_n_plus_2: need n + 2 = " + std::to_string(n + 2) + " occupations");
  const double top = std::abs(spec(1) - 1.0);
  const double pairing = pairing_residual(spec.lambdas().subspan(1));
  CheckReport rep{"rank_n_plus_2", top <= tol && pairing <= tol, {{"top_occupation", top}, {"pairing", pairing}}, {}};
  if (top > tol) rep.note = "largest occupation is not 1";
  else if (pairing > tol) rep.note = "remaining occupations are not doubly degenerate";
  return rep;
}

CheckReport check_weyl_2x2(const Pair& a, const Pair& b, const Pair& c, double tol) {
  if (a[0] < a[1] || b[0] < b[1] || c[0] < c[1])
    throw InvalidArgument("check_weyl_2x2: each pair must be non-increasing");
  const double trace = a[0] + a[1] + b[0] + b[1] - c[0] - c[1];
  if (std::abs(trace) > tol)
    throw InvalidArgument("check_weyl_2x2: traces differ by " + std::to_string(trace));
  const double s1 = a[0] + b[0] - c[0];
  const double s2 = a[1] + b[0] - c[1];
  const double s3 = a[0] + b[1] - c[1];
  CheckReport rep{"weyl_2x2", s1 >= -tol && s2 >= -tol && s3 >= -tol,
                  {{"a1+b1-c1", s1}, {"a2+b1-c2", s2}, {"a1+b2-c2", s3}}, {}};
  if (!rep.pass) rep.note = "no Hermitian A, B with these spectra sum to a matrix with spectrum c";
  return rep;
}

}  // namespace nrep
