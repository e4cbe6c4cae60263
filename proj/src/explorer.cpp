#include "nrep/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "nrep/errors.hpp"
#include "nrep/io.hpp"
#include "nrep/spectrum.hpp"

namespace nrep {

namespace {

constexpr std::size_t kMaxAnomalyFiles = 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
}

Spectrum sorted_spectrum(const FermionState& psi) { return spectrum_of(one_rdm(psi)); }

double top_and_pairs(const Spectrum& spec) {
  return std::max(std::abs(spec(1) - 1.0), pairing_residual(spec.lambdas().subspan(1)));
}

}  // namespace

std::string campaign_name(CampaignKind kind) {
  switch (kind) {
    case CampaignKind::bd_necessity: return "bd_necessity";
    case CampaignKind::hole_duality: return "hole_duality";
    case CampaignKind::conjecture: return "conjecture";
  }
  return "unknown";
}

std::optional<CampaignKind> parse_campaign(const std::string& name) {
  if (name == "bd" || name == "bd_necessity") return CampaignKind::bd_necessity;
  if (name == "hole" || name == "hole_duality") return CampaignKind::hole_duality;
  if (name == "conjecture") return CampaignKind::conjecture;
  return std::nullopt;
}

FermionState random_state(int n, int r, std::uint64_t seed) {
  FermionState psi(n, r);
  std::mt19937_64 engine(splitmix64(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    const double re = normal(engine);
    const double im = normal(engine);
    psi.amplitudes()(i) = Complex(re, im);
  }
  return psi.normalized();
}

bool campaign_applicable(CampaignKind kind, int n, int r) {
  switch (kind) {
    case CampaignKind::bd_necessity: return n == 3 && r == 6;
    case CampaignKind::hole_duality: return n == 2 || (n % 2 == 1 && r == n + 2);
    case CampaignKind::conjecture: return n % 2 == 1 && r == n + 3;
  }
  return false;
}

void validate_campaign(CampaignKind kind, const CampaignConfig& config) {
  if (config.samples < 1) throw InvalidArgument("campaign needs at least one sample");
  if (!(config.tolerance >= 0.0)) throw InvalidArgument("campaign tolerance must be non-negative");
  if (config.n < 1 || config.r < config.n) throw DimensionError("campaign needs 1 <= n <= r");
  FermionState probe(config.n, config.r);  // enforces the dimension cap
  if (kind == CampaignKind::bd_necessity && !campaign_applicable(kind, config.n, config.r))
    throw InvalidArgument("bd campaign needs n = 3, r = 6");
  if (kind == CampaignKind::conjecture && !campaign_applicable(kind, config.n, config.r))
    throw InvalidArgument("conjecture campaign needs odd n and r = n + 3");
  if (kind == CampaignKind::hole_duality && config.n < 2)
    throw InvalidArgument("hole campaign needs n >= 2");
}

SampleOutcome evaluate_sample(CampaignKind kind, const FermionState& psi) {
  const Spectrum spec = sorted_spectrum(psi);
  switch (kind) {
    case CampaignKind::bd_necessity: {
      const BDReport bd = check_bd(spec);
      const double worst = std::max({bd.equality_residuals[0], bd.equality_residuals[1],
                                     bd.equality_residuals[2], -bd.inequality_slack, 0.0});
      return {worst, worst};
    }
    case CampaignKind::hole_duality: {
      const double stat = psi.n() == 2 ? pairing_residual(spec.lambdas()) : top_and_pairs(spec);
      return {stat, stat};
    }
    case CampaignKind::conjecture: {
      const double stat = spec(1) + spec(spec.size());
      return {stat, std::max(0.0, stat - 1.0)};
    }
  }
  return {};
}

SampleOutcome replay_sample(CampaignKind kind, const CampaignConfig& config, std::uint64_t offset) {
  return evaluate_sample(kind, random_state(config.n, config.r, sample_seed(config.seed, offset)));
}

CampaignReport run_campaign(CampaignKind kind, const CampaignConfig& config) {
  validate_campaign(kind, config);

  std::vector<SampleOutcome> outcomes(config.samples);
  parallel_for(config.samples, config.threads,
               [&](std::size_t i) { outcomes[i] = replay_sample(kind, config, i); });

  CampaignReport rep;
  rep.campaign = campaign_name(kind);
  rep.n = config.n;
  rep.r = config.r;
  rep.samples_run = config.samples;
  rep.seed = config.seed;
  rep.tolerance = config.tolerance;
  rep.applicable = campaign_applicable(kind, config.n, config.r);
  rep.stat.min = std::numeric_limits<double>::infinity();
  rep.stat.max = -std::numeric_limits<double>::infinity();

  double sum = 0.0;
  double gap = 0.0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SampleOutcome& o = outcomes[i];
    rep.stat.min = std::min(rep.stat.min, o.statistic);
    rep.stat.max = std::max(rep.stat.max, o.statistic);
    sum += o.statistic;
    gap = std::max(gap, std::abs(o.statistic - 1.0));
    rep.worst_residual = std::max(rep.worst_residual, o.residual);
    if (o.residual > config.tolerance) {
      ++rep.violations;
      rep.violation_payloads.push_back({i, o.residual});
    }
  }
  rep.stat.mean = sum / static_cast<double>(outcomes.size());
  if (kind == CampaignKind::conjecture) rep.max_gap = gap;

  if (config.anomaly_dir && rep.applicable && rep.violations > 0) {
    std::filesystem::create_directories(*config.anomaly_dir);
    for (std::size_t k = 0; k < std::min(kMaxAnomalyFiles, rep.violation_payloads.size()); ++k) {
      const std::uint64_t offset = rep.violation_payloads[k].offset;
      const auto path = *config.anomaly_dir / (rep.campaign + "_seed" + std::to_string(config.seed) +
                                               "_offset" + std::to_string(offset) + ".json");
      save_state(path, random_state(config.n, config.r, sample_seed(config.seed, offset)));
      rep.anomaly_files.push_back(path.string());
    }
  }
  return rep;
}

CampaignReport campaign_bd_necessity(const CampaignConfig& config) {
  return run_campaign(CampaignKind::bd_necessity, config);
}

CampaignReport campaign_hole_duality(const CampaignConfig& config) {
  return run_campaign(CampaignKind::hole_duality, config);
}

CampaignReport campaign_conjecture(const CampaignConfig& config) {
  return run_campaign(CampaignKind::conjecture, config);
}

// --- probes -------------------------------------------------------------------

VectorXc locate_g1(const SplitDecomposition& split, const Tolerances& tol) {
  if (!split.Phi2) throw InvalidArgument("locate_g1: split has no Phi2 component");
  const OneRDM gamma2 = one_rdm(*split.Phi2, tol);
  const auto eig = eigh(gamma2.entries, tol);
  if (std::abs(eig.values(0) - 1.0) > tol.campaign) {
    throw AnomalyError("Phi2 has no unit-occupation orbital (largest occupation " +
                       std::to_string(eig.values(0)) + ")");
  }
  Eigen::Index cluster = 1;
  while (cluster < eig.values.size() && std::abs(eig.values(cluster) - 1.0) <= tol.degeneracy) ++cluster;
  if (cluster == 1) return eig.vectors.col(0);

  const MatrixXc q = eig.vectors.leftCols(cluster);
  const MatrixXc gamma1 = one_rdm_unchecked(split.Phi1).entries;
  const MatrixXc restricted = q.adjoint() * gamma1 * q;
  const auto inner_eig = eigh(restricted, tol);
  VectorXc g1 = q * inner_eig.vectors.col(cluster - 1);
  return g1.normalized();
}

StrongOrthProbe probe_strong_orthogonality(const FermionState& psi, const Tolerances& tol) {
  if (psi.n() % 2 == 0 || psi.r() != psi.n() + 3)
    throw InvalidArgument("probe_strong_orthogonality: need odd n and r = n + 3");
  const SplitDecomposition split = coleman_split(psi, tol);

  StrongOrthProbe probe;
  probe.lambda1 = split.lambda1;
  if (!split.Phi2) {
    probe.status = ProbeStatus::saturated;
    return probe;
  }
  probe.g1 = locate_g1(split, tol);
  const OneRDM gamma = one_rdm(psi, tol);
  const OneRDM gamma2 = one_rdm(*split.Phi2, tol);
  const double l1 = split.lambda1;
  probe.g1_occupation_defect = 1.0 - probe.g1.dot(gamma2.entries * probe.g1).real();
  probe.partial_residual = partial_inner(probe.g1, split.Phi1).norm();
  probe.eigen_residual = (gamma.entries * probe.g1 - (1.0 - l1) * probe.g1).norm();
  probe.pauli_gap = std::abs(probe.g1.dot(gamma.entries * probe.g1).real() + l1 - 1.0);
  return probe;
}

MatrixXc antisymmetric_unfolding(const FermionState& state) {
  const int m = state.n();
  const int r = state.r();
  if (m < 1) throw InvalidArgument("antisymmetric_unfolding: need at least one particle");
  Eigen::Index cols = 1;
  for (int i = 1; i < m; ++i) cols *= r;

  double factorial = 1.0;
  for (int i = 2; i < m; ++i) factorial *= i;
  const double scale = 1.0 / std::sqrt(factorial);

  MatrixXc unfolded = MatrixXc::Zero(r, cols);
  const auto dets = basis_index(m, r);
  std::vector<int> perm(static_cast<std::size_t>(m));
  for (std::size_t j = 0; j < dets.size(); ++j) {
    const Complex x = state.amplitudes()(static_cast<Eigen::Index>(j));
    if (x == Complex{}) continue;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      int inversions = 0;
      for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) inversions += perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)];
      const double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
      const int row = dets[j][perm[0]] - 1;
      Eigen::Index col = 0;
      for (int a = 1; a < m; ++a) col = col * r + (dets[j][perm[static_cast<std::size_t>(a)]] - 1);
      unfolded(row, col) = sign * scale * x;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return unfolded;
}

ConstrainedWeylRecord verify_constrained_weyl(const FermionState& psi, const SplitDecomposition& split,
                                              const Tolerances& tol) {
  ConstrainedWeylRecord rec;
  if (!split.Phi2) {
    rec.applicable = false;
    return rec;
  }
  if (split.strong_orth_residuals[0] > tol.campaign || split.strong_orth_residuals[1] > tol.campaign)
    throw InvalidArgument("verify_constrained_weyl: split is not strongly orthogonal");

  const double l1 = split.lambda1;
  const VectorXc g1 = locate_g1(split, tol);
  const FermionState G1 = partial_inner(g1, *split.Phi2).normalized();

  const MatrixXc x = std::sqrt(l1) * antisymmetric_unfolding(split.Phi1);
  const MatrixXc y = std::sqrt(1.0 - l1) * antisymmetric_unfolding(G1);
  const MatrixXc gamma = one_rdm(psi, tol).entries;
  const MatrixXc lhs = gamma - l1 * split.phi1 * split.phi1.adjoint() - (1.0 - l1) * g1 * g1.adjoint();
  rec.residual = (lhs - x * x.adjoint() - y * y.adjoint()).cwiseAbs().maxCoeff();
  rec.trace_xy = std::abs((x.array() * y.array().conjugate()).sum());
  return rec;
}

}  // namespace nrep
