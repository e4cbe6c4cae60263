#include "nrep/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "nrep/errors.hpp"

namespace nrep {

Spectrum::Spectrum(std::vector<double> lambdas, int n) : lambdas_(std::move(lambdas)), n_(n) {
  if (lambdas_.empty()) throw InvalidArgument("spectrum is empty");
  if (n < 0) throw InvalidArgument("particle count must be non-negative");
  for (std::size_t i = 0; i < lambdas_.size(); ++i) {
    if (!std::isfinite(lambdas_[i])) throw InvalidArgument("spectrum contains a non-finite value");
    if (i > 0 && lambdas_[i] > lambdas_[i - 1])
      throw InvalidArgument("spectrum must be sorted in non-increasing order");
  }
}

Spectrum Spectrum::sorted(std::vector<double> lambdas, int n) {
  std::stable_sort(lambdas.begin(), lambdas.end(), std::greater<>{});
  return Spectrum(std::move(lambdas), n);
}

double Spectrum::sum() const { return std::accumulate(lambdas_.begin(), lambdas_.end(), 0.0); }

Spectrum spectrum_of(const OneRDM& gamma, const Tolerances& tol) {
  const auto eig = eigh(gamma.entries, tol);
  return Spectrum(std::vector<double>(eig.values.begin(), eig.values.end()), gamma.n);
}

double pairing_residual(std::span<const double> values) {
  double worst = 0.0;
  std::size_t i = 0;
  for (; i + 1 < values.size(); i += 2) worst = std::max(worst, std::abs(values[i] - values[i + 1]));
  if (i < values.size()) worst = std::max(worst, std::abs(values[i]));
  return worst;
}

double multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) throw InvalidArgument("multiset_distance: size mismatch");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace nrep
