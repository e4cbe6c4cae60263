#pragma once

// Seeded Monte-Carlo campaigns over random pure states.
//
// Sample i of a campaign with seed s is random_state(n, r, s ^ i), so any
// sample can be replayed on its own and parallel and serial runs agree.
// Aggregation happens serially in sample order after the parallel phase,
// which keeps reports bit-identical for a given config.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nrep/config.hpp"
#include "nrep/fermion.hpp"
#include "nrep/representability.hpp"

namespace nrep {

enum class CampaignKind { bd_necessity, hole_duality, conjecture };

std::string campaign_name(CampaignKind kind);
/// Accepts "bd", "hole", "conjecture" and the full report names.
std::optional<CampaignKind> parse_campaign(const std::string& name);

struct CampaignConfig {
  int n = 3;
  int r = 6;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  double tolerance = kDefaultTolerances.campaign;
  /// When set, the first few violating states are written here as state files.
  std::optional<std::filesystem::path> anomaly_dir;
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct SampleOutcome {
  double statistic = 0.0;  // campaign-specific per-sample quantity
  double residual = 0.0;   // amount by which the checked condition is violated (>= 0)
};

struct Violation {
  std::uint64_t offset = 0;  // replay with random_state(n, r, seed ^ offset)
  double residual = 0.0;
};

struct StatSummary {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct CampaignReport {
  std::string campaign;
  int n = 0;
  int r = 0;
  std::size_t samples_run = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool applicable = true;   // false when the theorem being probed does not cover (n, r)
  std::size_t violations = 0;
  double worst_residual = 0.0;
  StatSummary stat;
  std::optional<double> max_gap;  // conjecture only: max |lambda_1 + lambda_R - 1|
  std::vector<Violation> violation_payloads;
  std::vector<std::string> anomaly_files;
};

/// Complex Gaussian amplitudes, normalized. Deterministic in seed.
FermionState random_state(int n, int r, std::uint64_t seed);

/// Seed of sample `offset` in a campaign seeded with `seed`.
constexpr std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t offset) { return seed ^ offset; }

/// Throws InvalidArgument if (n, r) is outside the campaign's domain.
void validate_campaign(CampaignKind kind, const CampaignConfig& config);

/// Whether the theorem behind a campaign applies to (n, r).
bool campaign_applicable(CampaignKind kind, int n, int r);

SampleOutcome evaluate_sample(CampaignKind kind, const FermionState& psi);
SampleOutcome replay_sample(CampaignKind kind, const CampaignConfig& config, std::uint64_t offset);

CampaignReport run_campaign(CampaignKind kind, const CampaignConfig& config);

/// n = 3, r = 6: statistic = max(BD equality residuals, -inequality slack, 0).
CampaignReport campaign_bd_necessity(const CampaignConfig& config);
/// n odd with r = n + 2 (or n = 2): top occupation 1 and paired remainder.
CampaignReport campaign_hole_duality(const CampaignConfig& config);
/// n odd, r = n + 3: statistic = lambda_1 + lambda_R; only lambda_1 + lambda_R <= 1 is checked.
CampaignReport campaign_conjecture(const CampaignConfig& config);

// --- probes of the split structure --------------------------------------------

enum class ProbeStatus { ok, saturated };

struct StrongOrthProbe {
  ProbeStatus status = ProbeStatus::ok;
  double lambda1 = 0.0;
  VectorXc g1;                      // unit-occupation orbital of Phi2
  double g1_occupation_defect = 0.0;  // 1 - <g1, gamma(Phi2) g1>
  double partial_residual = 0.0;    // || <g1, Phi1>_1 ||
  double eigen_residual = 0.0;      // || gamma g1 - (1 - lambda1) g1 ||
  double pauli_gap = 0.0;           // | <g1, gamma g1> + lambda1 - 1 |
};

/// For n odd and r = n + 3. Throws AnomalyError if Phi2 has no orbital of occupation 1.
StrongOrthProbe probe_strong_orthogonality(const FermionState& psi, const Tolerances& tol = kDefaultTolerances);

struct ConstrainedWeylRecord {
  bool applicable = true;        // false when lambda1 = 1
  double residual = 0.0;         // max entry of gamma - l1 P_phi1 - (1-l1) P_g1 - XX^H - YY^H
  double trace_xy = 0.0;         // |Tr X Y^H|
};

/// Throws InvalidArgument when the split is not strongly orthogonal.
ConstrainedWeylRecord verify_constrained_weyl(const FermionState& psi, const SplitDecomposition& split,
                                              const Tolerances& tol = kDefaultTolerances);

/// The unit-occupation orbital g1 of Phi2. Inside a degenerate unit cluster the
/// vector least occupied in Phi1 is chosen.
VectorXc locate_g1(const SplitDecomposition& split, const Tolerances& tol = kDefaultTolerances);

/// Dense antisymmetric coefficient tensor of an m-particle state, unfolded as
/// an r x r^(m-1) matrix (first index = rows), scaled so that T T^H = gamma.
MatrixXc antisymmetric_unfolding(const FermionState& state);

}  // namespace nrep
