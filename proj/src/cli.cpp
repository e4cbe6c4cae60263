#include "nrep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nrep/errors.hpp"
#include "nrep/explorer.hpp"
#include "nrep/io.hpp"
#include "nrep/representability.hpp"

namespace nrep::cli {

namespace {

const char* kAnomalyDir = "nrep_anomalies";

Json report_header(const std::string& command) {
  return {{"tool", "nrep"}, {"version", kVersion}, {"command", command}, {"tolerances", to_json(kDefaultTolerances)}};
}

Pair parse_pair(const std::string& text, const char* flag) {
  std::stringstream ss(text);
  std::string first;
  std::string second;
  if (!std::getline(ss, first, ',') || !std::getline(ss, second) || second.find(',') != std::string::npos)
    throw InvalidArgument(std::string(flag) + " expects two comma-separated numbers");
  try {
    std::size_t used1 = 0;
    std::size_t used2 = 0;
    const Pair p{std::stod(first, &used1), std::stod(second, &used2)};
    if (used1 != first.size() || used2 != second.size()) throw std::invalid_argument("trailing characters");
    return p;
  } catch (const std::logic_error&) {
    throw InvalidArgument(std::string(flag) + ": cannot parse \"" + text + "\"");
  }
}

struct ResolvedSpectrum {
  Spectrum spectrum;
  std::vector<std::string> notes;
};

ResolvedSpectrum resolve_spectrum(const SpectrumInput& in, std::optional<int> n_flag) {
  std::vector<std::string> notes;
  int n = 0;
  if (n_flag) {
    n = *n_flag;
  } else if (in.n) {
    n = *in.n;
  } else if (in.lambdas.size() == 6) {
    n = 3;
    notes.emplace_back("n inferred as 3 from six occupations (Borland-Dennis mode)");
  } else {
    double sum = 0.0;
    for (double l : in.lambdas) sum += l;
    n = static_cast<int>(std::lround(sum));
    notes.push_back("n inferred as " + std::to_string(n) + " from the occupation sum");
  }
  if (n < 1) throw InvalidArgument("particle count must be positive");
  if (!std::is_sorted(in.lambdas.begin(), in.lambdas.end(), std::greater<>{}))
    notes.emplace_back("occupations sorted into non-increasing order");
  return {Spectrum::sorted(in.lambdas, n), std::move(notes)};
}

/// Applicable spectral checks; returns overall pass.
bool spectral_checks(const Spectrum& spec, Json& checks) {
  bool pass = true;
  auto add = [&](const Json& j, bool ok) {
    checks.push_back(j);
    pass = pass && ok;
  };
  const CheckReport pauli = check_pauli(spec);
  add(to_json(pauli), pauli.pass);
  if (spec.n() == 3 && spec.size() == 6) {
    const BDReport bd = check_bd(spec);
    add(to_json(bd), bd.pass);
  }
  if (spec.n() == 2) {
    const CheckReport two = check_two_rep(spec);
    add(to_json(two), two.pass);
  }
  if (spec.n() % 2 == 1 && spec.size() == spec.n() + 2) {
    const CheckReport rank = check_rank_n_plus_2(spec);
    add(to_json(rank), rank.pass);
  }
  return pass;
}

int emit(std::ostream& out, Json report, bool pass) {
  report["pass"] = pass;
  out << report.dump(2) << '\n';
  return pass ? kPass : kCheckFailed;
}

int cmd_check_spectrum(const std::string& file, std::optional<int> n_flag, std::ostream& out) {
  const ResolvedSpectrum rs = resolve_spectrum(load_spectrum_input(file), n_flag);
  Json report = report_header("check-spectrum");
  report["n"] = rs.spectrum.n();
  report["lambdas"] = spectrum_to_json(rs.spectrum)["lambdas"];
  report["notes"] = rs.notes;
  Json checks = Json::array();
  const bool pass = spectral_checks(rs.spectrum, checks);
  report["checks"] = checks;
  return emit(out, report, pass);
}

int cmd_construct(const std::string& file, const std::string& out_path, std::ostream& out) {
  const ResolvedSpectrum rs = resolve_spectrum(load_spectrum_input(file), std::nullopt);
  if (rs.spectrum.n() != 3 || rs.spectrum.size() != 6)
    throw InvalidArgument("construct needs six occupations with n = 3");
  Json report = report_header("construct");
  report["lambdas"] = spectrum_to_json(rs.spectrum)["lambdas"];
  report["notes"] = rs.notes;
  Json checks = Json::array();
  if (!spectral_checks(rs.spectrum, checks)) {
    report["checks"] = checks;
    return emit(out, report, false);
  }
  const auto [coeffs, psi] = construct_bd_preimage(rs.spectrum);
  save_state(out_path, psi);
  report["checks"] = checks;
  report["coefficients"] = to_json(coeffs);
  report["out"] = out_path;
  return emit(out, report, true);
}

int cmd_verify_state(const std::string& file, std::ostream& out) {
  const FermionState psi = load_state(file);
  Json report = report_header("verify-state");
  report["n"] = psi.n();
  report["r"] = psi.r();
  report["norm"] = psi.norm();
  Json checks = Json::array();
  if (!psi.is_normalized()) {
    checks.push_back({{"check", "normalization"}, {"pass", false}, {"residuals", {std::abs(psi.norm() - 1.0)}}});
    report["checks"] = checks;
    return emit(out, report, false);
  }

  const OneRDM gamma = one_rdm(psi);
  const Spectrum spec = spectrum_of(gamma);
  report["rdm"] = matrix_to_json(gamma.entries);
  report["spectrum"] = spectrum_to_json(spec)["lambdas"];
  bool pass = spectral_checks(spec, checks);

  if (psi.n() == 3 && psi.r() == 6) {
    try {
      const NaturalForm form = natural_form(psi);
      const bool ok = form.leakage <= kDefaultTolerances.campaign;
      checks.push_back({{"check", "natural_form"}, {"pass", ok}, {"residuals", {form.leakage}}, {"labels", {"leakage"}}});
      pass = pass && ok;
    } catch (const DegeneracyError& e) {
      report["notes"].push_back(std::string("natural form skipped: ") + e.what());
    }
  }
  report["checks"] = checks;
  return emit(out, report, pass);
}

int cmd_sample(int n, int r, std::size_t count, std::uint64_t seed, const std::string& campaign, std::ostream& out) {
  CampaignKind kind;
  if (!campaign.empty()) {
    const auto parsed = parse_campaign(campaign);
    if (!parsed) throw InvalidArgument("unknown campaign \"" + campaign + "\" (expected bd, hole or conjecture)");
    kind = *parsed;
  } else if (campaign_applicable(CampaignKind::bd_necessity, n, r)) {
    kind = CampaignKind::bd_necessity;
  } else if (campaign_applicable(CampaignKind::conjecture, n, r)) {
    kind = CampaignKind::conjecture;
  } else {
    kind = CampaignKind::hole_duality;
  }
  CampaignConfig config;
  config.n = n;
  config.r = r;
  config.samples = count;
  config.seed = seed;
  config.anomaly_dir = kAnomalyDir;
  const CampaignReport rep = run_campaign(kind, config);

  Json report = report_header("sample");
  report.update(to_json(rep));
  return emit(out, report, rep.violations == 0);
}

int cmd_weyl(const std::string& a, const std::string& b, const std::string& c, std::ostream& out) {
  const CheckReport rep = check_weyl_2x2(parse_pair(a, "--a"), parse_pair(b, "--b"), parse_pair(c, "--c"));
  Json report = report_header("weyl");
  report["checks"] = Json::array({to_json(rep)});
  return emit(out, report, rep.pass);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pure-state N-representability checks for one-particle density matrices", "nrep"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string file;
  std::string out_path;
  std::optional<int> n_flag;
  auto* check = app.add_subcommand("check-spectrum", "Check a spectrum file against the applicable conditions");
  check->add_option("--file", file, "Spectrum JSON file")->required();
  check->add_option("--n", n_flag, "Particle count (default: from file, or inferred)");

  auto* construct = app.add_subcommand("construct", "Build a Borland-Dennis pre-image for a spectrum");
  construct->add_option("--file", file, "Spectrum JSON file")->required();
  construct->add_option("--out", out_path, "Output state file")->required();

  auto* verify = app.add_subcommand("verify-state", "Report norm, 1-RDM, spectrum and checks of a state file");
  verify->add_option("--file", file, "State JSON file")->required();

  int n = 0;
  int r = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::string campaign;
  auto* sample = app.add_subcommand("sample", "Run a seeded Monte-Carlo campaign");
  sample->add_option("--n", n, "Particle count")->required();
  sample->add_option("--r", r, "Orbital count")->required();
  sample->add_option("--count", count, "Number of samples")->required();
  sample->add_option("--seed", seed, "64-bit seed")->required();
  sample->add_option("--campaign", campaign, "bd | hole | conjecture")
      ->check(CLI::IsMember({"bd", "hole", "conjecture"}));

  std::string a;
  std::string b;
  std::string c;
  auto* weyl = app.add_subcommand("weyl", "Weyl inequalities for 2x2 Hermitian A + B = C");
  weyl->add_option("--a", a, "Eigenvalues of A, e.g. 0.7,0.3")->required();
  weyl->add_option("--b", b, "Eigenvalues of B")->required();
  weyl->add_option("--c", c, "Eigenvalues of C")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  try {
    if (check->parsed()) return cmd_check_spectrum(file, n_flag, out);
    if (construct->parsed()) return cmd_construct(file, out_path, out);
    if (verify->parsed()) return cmd_verify_state(file, out);
    if (sample->parsed()) return cmd_sample(n, r, count, seed, campaign, out);
    if (weyl->parsed()) return cmd_weyl(a, b, c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace nrep::cli
