#include "nrep/io.hpp"

#include <fstream>
#include <set>
#include <string>

#include "nrep/errors.hpp"

namespace nrep {

namespace {

template <typename T>
T require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("field \"") + key + "\": " + e.what());
  }
}

int require_int(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field \"") + key + "\"");
  if (!j.at(key).is_number_integer()) throw InvalidArgument(std::string("field \"") + key + "\" must be an integer");
  return j.at(key).get<int>();
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

Json state_to_json(const FermionState& psi) {
  Json amps = Json::array();
  const auto dets = basis_index(psi.n(), psi.r());
  for (std::size_t k = 0; k < dets.size(); ++k) {
    const Complex z = psi.amplitudes()(static_cast<Eigen::Index>(k));
    if (z == Complex{}) continue;
    const auto orbs = dets[k].orbitals();
    amps.push_back({{"orbitals", std::vector<int>(orbs.begin(), orbs.end())}, {"re", z.real()}, {"im", z.imag()}});
  }
  return {{"n", psi.n()}, {"r", psi.r()}, {"amplitudes", amps}};
}

FermionState state_from_json(const Json& j) {
  const int n = require_int(j, "n");
  const int r = require_int(j, "r");
  if (n < 1 || r < 1) throw InvalidArgument("state needs n >= 1 and r >= 1");
  FermionState psi(n, r);
  const Json& amps = j.contains("amplitudes") ? j.at("amplitudes") : Json::array();
  if (!amps.is_array()) throw InvalidArgument("\"amplitudes\" must be an array");

  std::set<std::vector<int>> seen;
  for (const Json& entry : amps) {
    auto orbs = require<std::vector<int>>(entry, "orbitals");
    const double re = entry.contains("re") ? require<double>(entry, "re") : 0.0;
    const double im = entry.contains("im") ? require<double>(entry, "im") : 0.0;
    if (static_cast<int>(orbs.size()) != n) throw InvalidArgument("determinant does not list exactly n orbitals");
    for (int o : orbs)
      if (o < 1 || o > r) throw InvalidArgument("orbital " + std::to_string(o) + " outside [1, r]");
    if (!seen.insert(orbs).second) throw InvalidArgument("determinant listed twice");
    psi.set_amplitude(DetIndex(std::move(orbs)), Complex(re, im));
  }
  return psi;
}

FermionState load_state(const std::filesystem::path& path) { return state_from_json(read_json_file(path)); }

void save_state(const std::filesystem::path& path, const FermionState& psi) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << state_to_json(psi).dump(2) << '\n';
}

SpectrumInput spectrum_input_from_json(const Json& j) {
  SpectrumInput in;
  in.lambdas = require<std::vector<double>>(j, "lambdas");
  if (in.lambdas.empty()) throw InvalidArgument("\"lambdas\" is empty");
  if (j.contains("n")) in.n = require_int(j, "n");
  return in;
}

SpectrumInput load_spectrum_input(const std::filesystem::path& path) {
  return spectrum_input_from_json(read_json_file(path));
}

Json spectrum_to_json(const Spectrum& spec) {
  return {{"n", spec.n()}, {"lambdas", std::vector<double>(spec.lambdas().begin(), spec.lambdas().end())}};
}

Json to_json(const Tolerances& tol) {
  return {{"hermiticity", tol.hermiticity}, {"convergence", tol.convergence},
          {"assertion", tol.assertion},     {"normalization", tol.normalization},
          {"degeneracy", tol.degeneracy},   {"campaign", tol.campaign}};
}

Json to_json(const CheckReport& rep) {
  Json residuals = Json::array();
  Json labels = Json::array();
  for (const Residual& r : rep.residuals) {
    residuals.push_back(r.value);
    labels.push_back(r.name);
  }
  Json j{{"check", rep.check}, {"pass", rep.pass}, {"residuals", residuals}, {"labels", labels}};
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

Json to_json(const BDReport& rep) {
  return {{"check", "bd"},
          {"pass", rep.pass},
          {"residuals", std::vector<double>(rep.equality_residuals.begin(), rep.equality_residuals.end())},
          {"slack", rep.inequality_slack}};
}

Json to_json(const PreimageCoefficients& c) {
  return {{"a2", c.a2}, {"b2", c.b2}, {"s2", c.s2}, {"t2", c.t2}};
}

Json to_json(const CampaignReport& rep) {
  Json offsets = Json::array();
  for (const Violation& v : rep.violation_payloads) offsets.push_back({{"offset", v.offset}, {"residual", v.residual}});
  Json j{{"campaign", rep.campaign},
         {"n", rep.n},
         {"r", rep.r},
         {"samples", rep.samples_run},
         {"seed", rep.seed},
         {"tolerance", rep.tolerance},
         {"applicable", rep.applicable},
         {"violations", rep.violations},
         {"worst_residual", rep.worst_residual},
         {"stat", {{"min", rep.stat.min}, {"max", rep.stat.max}, {"mean", rep.stat.mean}}},
         {"violation_payloads", offsets}};
  if (rep.max_gap) j["max_gap"] = *rep.max_gap;
  if (!rep.anomaly_files.empty()) j["anomaly_files"] = rep.anomaly_files;
  return j;
}

Json matrix_to_json(const MatrixXc& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row_re = Json::array();
    Json row_im = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row_re.push_back(m(i, k).real());
      row_im.push_back(m(i, k).imag());
    }
    re.push_back(row_re);
    im.push_back(row_im);
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace nrep
