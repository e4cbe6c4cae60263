// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any unexpected failure.
//
// `--known-unattainable K` (repeatable) declares criterion K as expected to
// fail. Its FAIL line is still printed; the exit code is 0 only if the set of
// failing criteria equals the declared set exactly.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "nrep/errors.hpp"
#include "nrep/explorer.hpp"
#include "nrep/io.hpp"
#include "nrep/representability.hpp"
#include "oracles.hpp"

using namespace nrep;

namespace {

// Pinned tolerances.
constexpr double kCampaignTol = 1e-8;
constexpr double kRoundTripTol = 1e-10;
constexpr double kPhaseTol = 1e-12;
constexpr double kLeakageTol = 1e-8;
constexpr double kWeylTol = 1e-9;
constexpr double kReconstructionTol = 1e-9;
constexpr double kStrongOrthTol = 1e-8;
constexpr double kRelationTol = 1e-9;
constexpr double kCriterion1Seconds = 30.0;
constexpr double kCriterion8Seconds = 120.0;
constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

CampaignConfig config(int n, int r, std::size_t samples) {
  CampaignConfig c;
  c.n = n;
  c.r = r;
  c.samples = samples;
  c.seed = kSeed;
  c.tolerance = kCampaignTol;
  return c;
}

std::vector<double> occupations(const FermionState& psi) {
  const Spectrum s = spectrum_of(one_rdm(psi));
  return {s.lambdas().begin(), s.lambdas().end()};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome bd_necessity() {
  const auto t0 = std::chrono::steady_clock::now();
  const CampaignReport rep = campaign_bd_necessity(config(3, 6, 10000));
  const double secs = seconds_since(t0);
  return {rep.violations == 0 && secs < kCriterion1Seconds,
          fmt("10000 (3,6) states, violations=%zu, worst=%.2e, %.2fs", rep.violations, rep.worst_residual, secs)};
}

Outcome sufficiency_round_trip() {
  std::mt19937_64 rng(2);
  std::exponential_distribution<double> expo(1.0);
  std::size_t failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double w[4];
    double total = 0.0;
    for (double& x : w) total += (x = expo(rng));
    for (double& x : w) x /= total;
    const double a = w[0], b = w[1], s = w[2], t = w[3];
    const std::vector<double> lambdas{a + b, a + s, a + t, b + s, b + t, s + t};
    try {
      const auto [coeffs, psi] = construct_bd_preimage(Spectrum::sorted(lambdas, 3));
      const double d = multiset_distance(occupations(psi), lambdas);
      worst = std::max(worst, d);
      failures += d >= kRoundTripTol;
    } catch (const Error&) {
      ++failures;
    }
  }
  return {failures == 0, fmt("1000 simplex spectra, failures=%zu, worst=%.2e", failures, worst)};
}

Outcome two_particle() {
  const CampaignReport rep = campaign_hole_duality(config(2, 6, 1000));

  std::mt19937_64 rng(3);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::size_t failures = 0;
  double worst_spec = 0.0;
  double worst_phase = 0.0;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> w(3);
    double total = 0.0;
    for (double& x : w) total += (x = expo(rng));
    std::ranges::sort(w, std::greater<>{});
    std::vector<double> lambdas;
    for (double x : w) {
      lambdas.push_back(x / total);
      lambdas.push_back(x / total);
    }
    const Spectrum spec(lambdas, 2);
    const std::vector<double> flat(3, 0.0);
    const std::vector<double> phases{angle(rng), angle(rng), angle(rng)};
    const FermionState ref = construct_two_preimage(spec, flat);
    const FermionState rotated = construct_two_preimage(spec, phases);
    const double ds = multiset_distance(occupations(rotated), lambdas);
    const double dp = (one_rdm(rotated).entries - one_rdm(ref).entries).cwiseAbs().maxCoeff();
    worst_spec = std::max(worst_spec, ds);
    worst_phase = std::max(worst_phase, dp);
    failures += ds >= kRoundTripTol || dp >= kPhaseTol;
  }
  return {rep.violations == 0 && failures == 0,
          fmt("1000 (2,6) states violations=%zu worst=%.2e; 50 constructions failures=%zu spec=%.2e phase=%.2e",
              rep.violations, rep.worst_residual, failures, worst_spec, worst_phase)};
}

Outcome particle_hole() {
  const CampaignReport rep = campaign_hole_duality(config(3, 5, 1000));
  return {rep.violations == 0,
          fmt("1000 (3,5) states, violations=%zu, worst=%.2e", rep.violations, rep.worst_residual)};
}

Outcome canonical_form() {
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    try {
      const NaturalForm form = natural_form(random_state(3, 6, sample_seed(5, i)));
      worst = std::max(worst, form.leakage);
      failures += form.leakage >= kLeakageTol;
    } catch (const Error&) {
      ++failures;
    }
  }
  return {failures == 0, fmt("1000 (3,6) states, failures=%zu, worst leakage=%.2e", failures, worst)};
}

Outcome weyl_machinery() {
  std::size_t failures = 0;
  double worst_diag = 0.0;
  double worst_slack = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < 1000; ++i) {
    try {
      const NaturalForm form = natural_form(random_state(3, 6, sample_seed(6, i)));
      const WeylBlocks w = weyl_blocks(form.coefficients);
      const Spectrum& l = form.spectrum;
      const double diag = std::max({std::abs(w.w1(0, 0).real() - l(1)), std::abs(w.w1(1, 1).real() - l(6)),
                                    std::abs(w.w2(0, 0).real() - l(2)), std::abs(w.w2(1, 1).real() - l(5)),
                                    std::abs(w.w3(0, 0).real() - l(3)), std::abs(w.w3(1, 1).real() - l(4))});
      const WeylChain chain = weyl_chain(w, l);
      const double slack = std::min({chain.slack[0], chain.slack[1], chain.slack[2]});
      worst_diag = std::max(worst_diag, diag);
      worst_slack = std::min(worst_slack, slack);
      failures += diag >= kWeylTol || !chain.holds(kWeylTol);
    } catch (const Error&) {
      ++failures;
    }
  }
  std::size_t panel_mismatch = 0;
  std::uint64_t seed = 100;
  const auto panel = oracle::weyl_panel();
  for (const auto& wc : panel) {
    const bool checker = check_weyl_2x2(wc.a, wc.b, wc.c).pass;
    panel_mismatch += checker != oracle::weyl_orbit_feasible(wc.a, wc.b, wc.c, seed++);
  }
  return {failures == 0 && panel_mismatch == 0,
          fmt("1000 eight-term states failures=%zu diag=%.2e min slack=%.2e; panel %zu/%zu agree", failures,
              worst_diag, worst_slack, panel.size() - panel_mismatch, panel.size())};
}

Outcome coleman() {
  std::size_t failures = 0;
  double worst_rec = 0.0;
  double worst_orth = 0.0;
  double worst_rel = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    try {
      const FermionState psi = random_state(3, 6, sample_seed(7, i));
      const SplitDecomposition split = coleman_split(psi);
      const double orth = std::max(split.strong_orth_residuals[0], split.strong_orth_residuals[1]);
      const double rel = split_relations(split, natural_form(psi)).max();
      worst_rec = std::max(worst_rec, split.reconstruction_residual);
      worst_orth = std::max(worst_orth, orth);
      worst_rel = std::max(worst_rel, rel);
      failures += !split.Phi2 || split.reconstruction_residual >= kReconstructionTol || orth >= kStrongOrthTol ||
                  rel >= kRelationTol;
    } catch (const Error&) {
      ++failures;
    }
  }
  return {failures == 0, fmt("1000 (3,6) states failures=%zu reconstruction=%.2e orth=%.2e relations=%.2e",
                             failures, worst_rec, worst_orth, worst_rel)};
}

Outcome conjecture_probe() {
  const auto t0 = std::chrono::steady_clock::now();
  const CampaignReport rep = campaign_conjecture(config(5, 8, 1000));
  const double secs = seconds_since(t0);
  return {rep.violations == 0 && secs < kCriterion8Seconds,
          fmt("1000 (5,8) states, l1+l8 in [%.4f, %.4f], violations of <= 1+1e-8: %zu, max|l1+l8-1|=%.4f, %.2fs",
              rep.stat.min, rep.stat.max, rep.violations, rep.max_gap.value_or(0.0), secs)};
}

Outcome determinism() {
  struct Run {
    CampaignKind kind;
    int n;
    int r;
    std::size_t samples;
  };
  const Run runs[] = {{CampaignKind::bd_necessity, 3, 6, 2000},
                      {CampaignKind::hole_duality, 3, 5, 1000},
                      {CampaignKind::hole_duality, 2, 6, 1000},
                      {CampaignKind::conjecture, 5, 8, 200}};
  std::size_t mismatches = 0;
  for (const Run& run : runs) {
    CampaignConfig c = config(run.n, run.r, run.samples);
    c.threads = 1;
    const std::string first = to_json(run_campaign(run.kind, c)).dump();
    c.threads = 4;
    mismatches += first != to_json(run_campaign(run.kind, c)).dump();
    c.threads = 0;
    mismatches += first != to_json(run_campaign(run.kind, c)).dump();
  }
  return {mismatches == 0, fmt("4 campaigns x 3 runs, mismatching reports=%zu", mismatches)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> declared;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--known-unattainable") == 0 && i + 1 < argc) {
      declared.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--known-unattainable K]...\n");
      return 2;
    }
  }
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"bd_necessity", bd_necessity},   {"sufficiency_round_trip", sufficiency_round_trip},
      {"two_particle", two_particle},   {"particle_hole", particle_hole},
      {"canonical_form", canonical_form}, {"weyl_machinery", weyl_machinery},
      {"coleman_split", coleman},       {"conjecture_probe", conjecture_probe},
      {"determinism", determinism},
  };
  std::set<int> failing;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) failing.insert(index - 1);
  }
  std::printf("%zu/%zu criteria passed\n", std::size(criteria) - failing.size(), std::size(criteria));
  if (!declared.empty()) {
    std::printf("declared unattainable:");
    for (int k : declared) std::printf(" %d", k);
    std::printf(" -> %s\n", failing == declared ? "failing set matches" : "failing set differs");
  }
  return failing == declared ? 0 : 1;
}
