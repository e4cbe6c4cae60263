#include "nrep/fermion.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "nrep/errors.hpp"

namespace nrep {

namespace {

constexpr int kMaxOrbitals = 64;

using BinomialTable = std::array<std::array<std::uint64_t, kMaxOrbitals + 1>, kMaxOrbitals + 1>;

constexpr BinomialTable make_binomials() {
  BinomialTable t{};
  for (int n = 0; n <= kMaxOrbitals; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
  }
  return t;
}

constexpr BinomialTable kBinomials = make_binomials();

constexpr std::uint64_t bit(int orbital) { return std::uint64_t{1} << (orbital - 1); }

void check_dims(int n, int r, std::size_t cap) {
  if (n < 0 || r < 1) throw InvalidArgument("need n >= 0 and r >= 1");
  if (r > kMaxOrbitals) throw DimensionError("at most 64 orbitals are supported");
  if (n > r) {
    throw DimensionError("particle count " + std::to_string(n) + " exceeds orbital count " +
                         std::to_string(r));
  }
  if (kBinomials[r][n] > cap) {
    throw DimensionError("C(" + std::to_string(r) + "," + std::to_string(n) + ") = " +
                         std::to_string(kBinomials[r][n]) + " exceeds dimension cap " +
                         std::to_string(cap));
  }
}

void check_same_shape(const FermionState& a, const FermionState& b, const char* what) {
  if (a.n() != b.n() || a.r() != b.r()) throw InvalidArgument(std::string(what) + ": shape mismatch");
}

std::vector<int> orbitals_of(std::uint64_t mask) {
  std::vector<int> out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return out;
}

/// All masks of basis_index(n, r), in lexicographic order.
std::vector<std::uint64_t> basis_masks(int n, int r) {
  std::vector<std::uint64_t> masks;
  masks.reserve(kBinomials[r][n]);
  std::vector<int> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    std::uint64_t m = 0;
    for (int o : c) m |= bit(o);
    masks.push_back(m);
    int i = n - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == r - n + i + 1) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return masks;
}

}  // namespace

DetIndex::DetIndex(std::vector<int> orbitals) : orbitals_(std::move(orbitals)) {
  for (std::size_t i = 0; i < orbitals_.size(); ++i) {
    if (orbitals_[i] < 1 || orbitals_[i] > kMaxOrbitals)
      throw InvalidArgument("orbital index out of range: " + std::to_string(orbitals_[i]));
    if (i > 0 && orbitals_[i] <= orbitals_[i - 1])
      throw InvalidArgument("determinant orbitals must be strictly increasing");
  }
}

std::pair<DetIndex, int> DetIndex::canonicalize(std::span<const int> orbitals) {
  std::vector<int> v(orbitals.begin(), orbitals.end());
  int sign = 1;
  // insertion sort; each swap flips the sign
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  }
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw InvalidArgument("repeated orbital in determinant");
  return {DetIndex(std::move(v)), sign};
}

bool DetIndex::contains(int orbital) const {
  return std::binary_search(orbitals_.begin(), orbitals_.end(), orbital);
}

std::uint64_t DetIndex::mask() const {
  std::uint64_t m = 0;
  for (int o : orbitals_) m |= bit(o);
  return m;
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n || n > kMaxOrbitals) return 0;
  return kBinomials[n][k];
}

std::vector<DetIndex> basis_index(int n, int r, std::size_t cap) {
  if (n < 1) throw InvalidArgument("basis_index: need n >= 1");
  check_dims(n, r, cap);
  std::vector<DetIndex> out;
  for (std::uint64_t m : basis_masks(n, r)) out.emplace_back(orbitals_of(m));
  return out;
}

std::size_t det_rank(std::uint64_t mask, int n, int r) {
  std::size_t rank = 0;
  int prev = 0;
  int i = 0;
  while (mask != 0) {
    const int c = std::countr_zero(mask) + 1;
    mask &= mask - 1;
    ++i;
    for (int j = prev + 1; j < c; ++j) rank += kBinomials[r - j][n - i];
    prev = c;
  }
  return rank;
}

std::size_t det_rank(const DetIndex& det, int r) {
  if (det.size() > 0 && det[det.size() - 1] > r) throw InvalidArgument("orbital exceeds r");
  return det_rank(det.mask(), det.size(), r);
}

int insertion_sign(int p, std::uint64_t set_mask) {
  return (std::popcount(set_mask & (bit(p) - 1)) & 1) ? -1 : 1;
}

// --- FermionState -----------------------------------------------------------

FermionState::FermionState(int n, int r, std::size_t cap) : n_(n), r_(r) {
  check_dims(n, r, cap);
  amplitudes_ = VectorXc::Zero(static_cast<Eigen::Index>(kBinomials[r][n]));
}

FermionState::FermionState(int n, int r, VectorXc amplitudes, std::size_t cap)
    : n_(n), r_(r), amplitudes_(std::move(amplitudes)) {
  check_dims(n, r, cap);
  if (static_cast<std::uint64_t>(amplitudes_.size()) != kBinomials[r][n])
    throw InvalidArgument("amplitude vector length does not match C(r, n)");
}

Complex FermionState::amplitude(const DetIndex& det) const {
  if (det.size() != n_) throw InvalidArgument("determinant has wrong particle count");
  return amplitudes_(static_cast<Eigen::Index>(det_rank(det, r_)));
}

void FermionState::set_amplitude(const DetIndex& det, Complex value) {
  if (det.size() != n_) throw InvalidArgument("determinant has wrong particle count");
  amplitudes_(static_cast<Eigen::Index>(det_rank(det, r_))) = value;
}

void FermionState::add_ordered(std::span<const int> orbitals, Complex value) {
  const auto [det, sign] = DetIndex::canonicalize(orbitals);
  if (det.size() != n_) throw InvalidArgument("determinant has wrong particle count");
  amplitudes_(static_cast<Eigen::Index>(det_rank(det, r_))) += static_cast<double>(sign) * value;
}

bool FermionState::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

FermionState FermionState::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw NumericalError("cannot normalize the zero state");
  FermionState out = *this;
  out.amplitudes_ /= nrm;
  return out;
}

FermionState& FermionState::operator+=(const FermionState& other) {
  check_same_shape(*this, other, "operator+=");
  amplitudes_ += other.amplitudes_;
  return *this;
}

FermionState& FermionState::operator-=(const FermionState& other) {
  check_same_shape(*this, other, "operator-=");
  amplitudes_ -= other.amplitudes_;
  return *this;
}

FermionState& FermionState::operator*=(Complex factor) {
  amplitudes_ *= factor;
  return *this;
}

FermionState operator+(FermionState lhs, const FermionState& rhs) { return lhs += rhs; }
FermionState operator-(FermionState lhs, const FermionState& rhs) { return lhs -= rhs; }
FermionState operator*(Complex factor, FermionState state) { return state *= factor; }

// --- operations -------------------------------------------------------------

FermionState slater(const DetIndex& orbitals, int n, int r) {
  if (orbitals.size() != n) throw InvalidArgument("slater: determinant must list exactly n orbitals");
  if (n > 0 && orbitals[n - 1] > r) throw InvalidArgument("slater: orbital exceeds r");
  FermionState out(n, r);
  out.set_amplitude(orbitals, 1.0);
  return out;
}

Complex inner(const FermionState& psi1, const FermionState& psi2) {
  check_same_shape(psi1, psi2, "inner");
  return psi1.amplitudes().dot(psi2.amplitudes());
}

FermionState partial_inner(OrbitalIndex p, const FermionState& psi) {
  VectorXc e = VectorXc::Zero(psi.r());
  if (p.value() < 1 || p.value() > psi.r()) throw InvalidArgument("partial_inner: orbital out of range");
  e(p.value() - 1) = 1.0;
  return partial_inner(e, psi);
}

FermionState partial_inner(const VectorXc& phi, const FermionState& psi) {
  const int n = psi.n();
  const int r = psi.r();
  if (n < 2) throw InvalidArgument("partial_inner: need at least two particles");
  if (phi.size() != r) throw InvalidArgument("partial_inner: orbital vector has wrong length");

  FermionState out(n - 1, r);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const auto masks = basis_masks(n, r);
  for (std::size_t k = 0; k < masks.size(); ++k) {
    const Complex x = psi.amplitudes()(static_cast<Eigen::Index>(k));
    if (x == Complex{}) continue;
    for (std::uint64_t rest = masks[k]; rest != 0; rest &= rest - 1) {
      const int p = std::countr_zero(rest) + 1;
      if (phi(p - 1) == Complex{}) continue;
      const std::uint64_t j = masks[k] & ~bit(p);
      out.amplitudes()(static_cast<Eigen::Index>(det_rank(j, n - 1, r))) +=
          scale * static_cast<double>(insertion_sign(p, j)) * std::conj(phi(p - 1)) * x;
    }
  }
  return out;
}

FermionState wedge(const VectorXc& phi, const FermionState& Phi) {
  const int m = Phi.n();
  const int r = Phi.r();
  if (phi.size() != r) throw InvalidArgument("wedge: orbital vector has wrong length");
  if (m + 1 > r) throw DimensionError("wedge: no room for another particle");

  FermionState out(m + 1, r);
  const auto masks = basis_masks(m, r);
  for (std::size_t j = 0; j < masks.size(); ++j) {
    const Complex y = Phi.amplitudes()(static_cast<Eigen::Index>(j));
    if (y == Complex{}) continue;
    for (int p = 1; p <= r; ++p) {
      if ((masks[j] & bit(p)) != 0 || phi(p - 1) == Complex{}) continue;
      const std::uint64_t k = masks[j] | bit(p);
      out.amplitudes()(static_cast<Eigen::Index>(det_rank(k, m + 1, r))) +=
          static_cast<double>(insertion_sign(p, masks[j])) * phi(p - 1) * y;
    }
  }
  return out;
}

VectorXc contract_complement(const FermionState& small, const FermionState& big) {
  const int n = big.n();
  const int r = big.r();
  if (small.r() != r || small.n() != n - 1)
    throw InvalidArgument("contract_complement: need an (N-1)-particle and an N-particle state");

  VectorXc f = VectorXc::Zero(r);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const auto masks = basis_masks(n - 1, r);
  for (std::size_t j = 0; j < masks.size(); ++j) {
    const Complex y = small.amplitudes()(static_cast<Eigen::Index>(j));
    if (y == Complex{}) continue;
    for (int p = 1; p <= r; ++p) {
      if ((masks[j] & bit(p)) != 0) continue;
      const Complex x = big.amplitudes()(static_cast<Eigen::Index>(det_rank(masks[j] | bit(p), n, r)));
      f(p - 1) += scale * static_cast<double>(insertion_sign(p, masks[j])) * std::conj(y) * x;
    }
  }
  return f;
}

OneRDM one_rdm_unchecked(const FermionState& psi) {
  const int n = psi.n();
  const int r = psi.r();
  OneRDM gamma{n, MatrixXc::Zero(r, r)};
  const auto masks = basis_masks(n, r);
  const VectorXc& x = psi.amplitudes();
  for (std::size_t k = 0; k < masks.size(); ++k) {
    const Complex xk = x(static_cast<Eigen::Index>(k));
    if (xk == Complex{}) continue;
    for (std::uint64_t rest = masks[k]; rest != 0; rest &= rest - 1) {
      const int q = std::countr_zero(rest) + 1;
      const std::uint64_t j = masks[k] & ~bit(q);
      const int sq = insertion_sign(q, j);
      for (int p = 1; p <= r; ++p) {
        if ((j & bit(p)) != 0) continue;
        const Complex xp = x(static_cast<Eigen::Index>(det_rank(j | bit(p), n, r)));
        if (xp == Complex{}) continue;
        gamma.entries(p - 1, q - 1) += static_cast<double>(sq * insertion_sign(p, j)) * xp * std::conj(xk);
      }
    }
  }
  return gamma;
}

OneRDM one_rdm(const FermionState& psi, const Tolerances& tol) {
  if (psi.n() < 1) throw InvalidArgument("one_rdm: need at least one particle");
  if (!psi.is_normalized(tol.normalization)) {
    throw NumericalError("one_rdm: state norm " + std::to_string(psi.norm()) +
                         " deviates from 1 beyond tolerance");
  }
  return one_rdm_unchecked(psi);
}

FermionState rotate(const FermionState& psi, const MatrixXc& u, const Tolerances& tol) {
  const int n = psi.n();
  const int r = psi.r();
  if (u.rows() != r || u.cols() != r) throw InvalidArgument("rotate: unitary has wrong shape");
  const double res = unitarity_residual(u);
  if (!(res <= tol.unitarity))
    throw NumericalError("rotate: matrix is not unitary (residual " + std::to_string(res) + ")");

  const auto masks = basis_masks(n, r);
  std::vector<std::vector<int>> orbs;
  orbs.reserve(masks.size());
  for (std::uint64_t m : masks) orbs.push_back(orbitals_of(m));

  FermionState out(n, r);
  MatrixXc minor(n, n);
  for (std::size_t j = 0; j < masks.size(); ++j) {
    const Complex xj = psi.amplitudes()(static_cast<Eigen::Index>(j));
    if (xj == Complex{}) continue;
    for (std::size_t k = 0; k < masks.size(); ++k) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          minor(a, b) = u(orbs[k][static_cast<std::size_t>(a)] - 1, orbs[j][static_cast<std::size_t>(b)] - 1);
      out.amplitudes()(static_cast<Eigen::Index>(k)) += minor.determinant() * xj;
    }
  }
  return out;
}

void validate_rdm(const OneRDM& gamma, const Tolerances& tol) {
  const MatrixXc& g = gamma.entries;
  if (g.rows() != g.cols() || g.rows() == 0) throw InvalidArgument("density matrix must be square and non-empty");
  if (hermiticity_residual(g) > tol.hermiticity) throw NumericalError("density matrix is not Hermitian");
  const double trace = g.trace().real();
  if (std::abs(trace - gamma.n) > tol.normalization)
    throw NumericalError("density matrix trace " + std::to_string(trace) + " differs from n = " +
                         std::to_string(gamma.n));
  const auto eig = eigh(g, tol);
  if (eig.values(eig.values.size() - 1) < -tol.normalization)
    throw NumericalError("density matrix is not positive semidefinite");
}

OneRDM particle_hole_rdm(const OneRDM& gamma, const Tolerances& tol) {
  validate_rdm(gamma, tol);
  const int r = gamma.r();
  return OneRDM{r - gamma.n, MatrixXc::Identity(r, r) - gamma.entries};
}

}  // namespace nrep
