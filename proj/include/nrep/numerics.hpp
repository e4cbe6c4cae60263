#pragma once

// Small dense Hermitian eigensolver and SVD with deterministic ordering.
//
// eigh() is a cyclic Jacobi sweep built on Eigen::JacobiRotation. For inputs
// up to 64x64 it is accurate to a few ulps of ||H|| and, having a fixed sweep
// order, bit-reproducible. svd_small() wraps Eigen::JacobiSVD and only adds
// ordering/phase conventions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "nrep/config.hpp"
#include "nrep/errors.hpp"

namespace nrep {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXc = Mat<Complex>;
using VectorXc = Vec<Complex>;

inline constexpr int kMaxEighDimension = 64;
inline constexpr int kMaxSvdDimension = 8;

template <typename Scalar>
struct EigenDecomposition {
  Eigen::VectorXd values;  // non-increasing
  Mat<Scalar> vectors;     // column k pairs with values(k)
};

template <typename Scalar>
struct SVDResult {
  Mat<Scalar> u;
  Eigen::VectorXd singulars;  // non-increasing, >= 0
  Mat<Scalar> v;
};

namespace detail {

template <typename Scalar>
double real_part(const Scalar& z) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return z;
  } else {
    return z.real();
  }
}

/// Make the first component with |v_i| > threshold real and positive.
template <typename Derived>
void fix_phase(Eigen::MatrixBase<Derived>&& column) {
  using Scalar = typename Derived::Scalar;
  const double threshold = 1e-12 * std::max(1.0, column.norm());
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    const double mag = std::abs(column(i));
    if (mag > threshold) {
      const Scalar phase = column(i) / mag;
      column /= phase;
      column(i) = Scalar(mag);
      return;
    }
  }
}

}  // namespace detail

/// Largest entry of |H - H^H|.
template <typename Derived>
double hermiticity_residual(const Eigen::MatrixBase<Derived>& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

/// Largest entry of |U^H U - I|.
template <typename Derived>
double unitarity_residual(const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  const Mat<Scalar> gram = u.adjoint() * u;
  return (gram - Mat<Scalar>::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

/// Eigendecomposition of a Hermitian (or real symmetric) matrix.
///
/// Values come out non-increasing; exact ties keep the order in which the
/// Jacobi sweep left them, so diagonal inputs map to unit vectors in index
/// order. Each eigenvector is phase-fixed so its first non-negligible entry
/// is real positive. Inside a degenerate cluster the basis is arbitrary.
template <typename Derived>
EigenDecomposition<typename Derived::Scalar> eigh(const Eigen::MatrixBase<Derived>& h,
                                                  const Tolerances& tol = kDefaultTolerances) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index dim = h.rows();
  if (h.rows() != h.cols()) throw InvalidArgument("eigh: matrix is not square");
  if (dim == 0) throw InvalidArgument("eigh: empty matrix");
  if (dim > kMaxEighDimension) {
    throw DimensionError("eigh: dimension " + std::to_string(dim) + " exceeds " +
                         std::to_string(kMaxEighDimension));
  }
  if (!h.allFinite()) throw NumericalError("eigh: non-finite entries");
  const double herm = hermiticity_residual(h);
  if (herm > tol.hermiticity) {
    throw NumericalError("eigh: hermiticity residual " + std::to_string(herm) +
                         " exceeds tolerance");
  }

  Mat<Scalar> a = (h + h.adjoint()) / 2.0;
  Mat<Scalar> v = Mat<Scalar>::Identity(dim, dim);
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index q = 0; q < dim; ++q)
      for (Eigen::Index p = 0; p < q; ++p) s += std::norm(std::complex<double>(a(p, q)));
    return std::sqrt(2.0 * s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() > tol.convergence * scale; ++sweep) {
    for (Eigen::Index p = 0; p < dim - 1; ++p) {
      for (Eigen::Index q = p + 1; q < dim; ++q) {
        Eigen::JacobiRotation<Scalar> rot;
        if (!rot.makeJacobi(detail::real_part(a(p, p)), a(p, q), detail::real_part(a(q, q))))
          continue;
        a.applyOnTheLeft(p, q, rot.adjoint());
        a.applyOnTheRight(p, q, rot);
        v.applyOnTheRight(p, q, rot);
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
      }
    }
  }
  if (off_norm() > 1e3 * tol.convergence * scale) {
    throw NumericalError("eigh: Jacobi iteration did not converge");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return detail::real_part(a(i, i)) > detail::real_part(a(j, j));
  });

  EigenDecomposition<Scalar> out;
  out.values.resize(dim);
  out.vectors.resize(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = detail::real_part(a(src, src));
    out.vectors.col(k) = v.col(src);
    detail::fix_phase(out.vectors.col(k));
  }
  return out;
}

/// Full SVD of a small matrix: X = U diag(singulars) V^H.
template <typename Derived>
SVDResult<typename Derived::Scalar> svd_small(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() == 0) throw InvalidArgument("svd_small: empty matrix");
  if (x.rows() > kMaxSvdDimension || x.cols() > kMaxSvdDimension) {
    throw DimensionError("svd_small: at most " + std::to_string(kMaxSvdDimension) +
                         " rows and columns");
  }
  if (!x.allFinite()) throw NumericalError("svd_small: non-finite entries");

  const Mat<Scalar> dense = x;
  Eigen::JacobiSVD<Mat<Scalar>> svd(dense, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

/// Singular matrix of an SVD as a rows x cols rectangle.
template <typename Scalar>
Mat<Scalar> singular_matrix(const SVDResult<Scalar>& svd) {
  Mat<Scalar> sigma = Mat<Scalar>::Zero(svd.u.cols(), svd.v.cols());
  for (Eigen::Index i = 0; i < svd.singulars.size(); ++i) sigma(i, i) = svd.singulars(i);
  return sigma;
}

}  // namespace nrep
