#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "lgi/params.hpp"

namespace lgi {

// JSON mapping for the parameter sets. Field names follow the accessors:
//   kaon:     tau_s [s], tau_l [s], delta_m [MeV], eps_abs, eps_re, cp_enabled
//   neutrino: delta_m2_ev2 [eV^2], theta_rad | tan2_theta, energy_mev [MeV]
// Missing fields take the reference values; unknown fields are rejected.

nlohmann::json to_json(const KaonParams& params);
nlohmann::json to_json(const NeutrinoParams& params);

KaonParams kaon_params_from_json(const nlohmann::json& j);
NeutrinoParams neutrino_params_from_json(const nlohmann::json& j);

struct ParamsConfig {
  KaonParams kaon = KaonParams::reference();
  NeutrinoParams neutrino = NeutrinoParams::reference();
};

// Top-level object with optional "kaon" and "neutrino" sections.
nlohmann::json to_json(const ParamsConfig& config);
ParamsConfig params_config_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);

// Throws ParameterError naming the first key of `j` not in `allowed`.
void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const char* where);

}  // namespace lgi
