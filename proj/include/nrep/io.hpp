#pragma once

// JSON file formats.
//
//   state:    {"n":3,"r":6,"amplitudes":[{"orbitals":[1,2,3],"re":0.7,"im":0.0}, ...]}
//   spectrum: {"n":3,"lambdas":[0.9,0.8,0.7,0.3,0.2,0.1]}
//
// Orbitals are 1-based and strictly increasing; omitted determinants are zero.
// Malformed input raises InvalidArgument.

#include <filesystem>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "nrep/config.hpp"
#include "nrep/explorer.hpp"
#include "nrep/fermion.hpp"
#include "nrep/representability.hpp"

namespace nrep {

using Json = nlohmann::json;

Json state_to_json(const FermionState& psi);
FermionState state_from_json(const Json& j);
FermionState load_state(const std::filesystem::path& path);
void save_state(const std::filesystem::path& path, const FermionState& psi);

struct SpectrumInput {
  std::vector<double> lambdas;  // as given, possibly unsorted
  std::optional<int> n;
};

SpectrumInput spectrum_input_from_json(const Json& j);
SpectrumInput load_spectrum_input(const std::filesystem::path& path);
Json spectrum_to_json(const Spectrum& spec);

Json read_json_file(const std::filesystem::path& path);

Json to_json(const Tolerances& tol);
Json to_json(const CheckReport& rep);
Json to_json(const BDReport& rep);
Json to_json(const PreimageCoefficients& c);
Json to_json(const CampaignReport& rep);
Json matrix_to_json(const MatrixXc& m);

}  // namespace nrep
