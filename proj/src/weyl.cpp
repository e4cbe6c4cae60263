#include <algorithm>
#include <cmath>
#include <string>

#include "nrep/errors.hpp"
#include "nrep/representability.hpp"

namespace nrep {

namespace {

double top_eigenvalue(const Matrix2c& h, const Tolerances& tol) { return eigh(h, tol).values(0); }

Matrix2c block(const MatrixXc& g, int p, int q) {
  Matrix2c out;
  out << g(p - 1, p - 1), g(p - 1, q - 1), g(q - 1, p - 1), g(q - 1, q - 1);
  return out;
}

}  // namespace

WeylBlocks weyl_blocks(const EightCoefficients& coeffs, const Tolerances& tol) {
  double norm2 = 0.0;
  for (const Complex& z : coeffs.x) norm2 += std::norm(z);
  if (std::abs(std::sqrt(norm2) - 1.0) > tol.normalization)
    throw NumericalError("weyl_blocks: coefficients are not normalized (norm^2 = " + std::to_string(norm2) + ")");

  WeylBlocks w;
  w.s_matrix << coeffs(0, 0, 0), coeffs(0, 0, 1), coeffs(0, 1, 0), coeffs(0, 1, 1);
  w.t_matrix << coeffs(1, 0, 0), coeffs(1, 0, 1), coeffs(1, 1, 0), coeffs(1, 1, 1);
  const Matrix2c& s = w.s_matrix;
  const Matrix2c& t = w.t_matrix;

  w.w1 << (s * s.adjoint()).trace(), (s * t.adjoint()).trace(), (t * s.adjoint()).trace(),
      (t * t.adjoint()).trace();
  w.w2 = s * s.adjoint() + t * t.adjoint();
  w.w3 = s.adjoint() * s + t.adjoint() * t;
  w.sigma = top_eigenvalue(s * s.adjoint(), tol);
  w.tau = top_eigenvalue(t * t.adjoint(), tol);

  // W1, W2 are the (1,6) and (2,5) blocks of gamma; W3 is the transposed (3,4) block.
  const MatrixXc gamma = one_rdm_unchecked(eight_term_state(coeffs)).entries;
  w.consistency[0] = (w.w1 - block(gamma, 1, 6)).cwiseAbs().maxCoeff();
  w.consistency[1] = (w.w2 - block(gamma, 2, 5)).cwiseAbs().maxCoeff();
  w.consistency[2] = (w.w3 - block(gamma, 3, 4).transpose()).cwiseAbs().maxCoeff();
  return w;
}

bool WeylChain::holds(double tol) const {
  return std::ranges::all_of(slack, [tol](double s) { return s >= -tol; });
}

WeylChain weyl_chain(const WeylBlocks& blocks, const Spectrum& spec) {
  if (spec.size() != 6) throw InvalidArgument("weyl_chain: need six occupations");
  const double sigma = blocks.sigma;
  const double tau = blocks.tau;
  return WeylChain{{sigma + tau - spec(2), spec(1) - sigma + tau - spec(4), sigma + spec(6) - tau - spec(4)}};
}

}  // namespace nrep
