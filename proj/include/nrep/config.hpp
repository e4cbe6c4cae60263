#pragma once

#include <complex>
#include <cstddef>

namespace nrep {

using Complex = std::complex<double>;

inline constexpr const char* kVersion = "1.0.0";

/// Largest admissible C(r, n); anything above is rejected with DimensionError.
inline constexpr std::size_t kDefaultDimensionCap = 100000;

/// Every numerical threshold in one place.
struct Tolerances {
  double hermiticity = 1e-8;        // eigh input check
  double convergence = 1e-13;       // Jacobi off-diagonal stop, relative to ||H||_F
  double assertion = 1e-10;         // default pass/fail threshold of checkers
  double normalization = 1e-8;      // allowed | ||psi|| - 1 | at public RDM entry points
  double unitarity = 1e-10;         // ||U^H U - I||_max for basis rotations
  double degeneracy = 1e-7;         // relative eigenvalue clustering
  double unit_occupation = 1e-12;   // 1 - lambda_1 below this means "fully occupied"
  double campaign = 1e-8;           // default Monte-Carlo violation threshold
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace nrep
