#include "lgi/config.hpp"

#include <algorithm>
#include <fstream>
#include <string_view>

#include "lgi/errors.hpp"

namespace lgi {

using nlohmann::json;

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw ParameterError(std::string(where) + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!known) throw ParameterError(std::string(where) + ": unknown key \"" + key + "\"");
  }
}

namespace {

template <typename T>
T field(const json& j, const char* key, T fallback, const char* where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParameterError(std::string(where) + ": key \"" + key + "\" has the wrong type");
  }
}

}  // namespace

json to_json(const KaonParams& p) {
  return json{{"tau_s", p.tau_s()},     {"tau_l", p.tau_l()},   {"delta_m", p.delta_m_mev()},
              {"eps_abs", p.eps_abs()}, {"eps_re", p.eps_re()}, {"cp_enabled", p.cp_enabled()}};
}

json to_json(const NeutrinoParams& p) {
  return json{{"delta_m2_ev2", p.delta_m2_ev2()}, {"theta_rad", p.theta_rad()}, {"energy_mev", p.energy_mev()}};
}

KaonParams kaon_params_from_json(const json& j) {
  constexpr const char* where = "kaon";
  reject_unknown_keys(j, {"tau_s", "tau_l", "delta_m", "eps_abs", "eps_re", "cp_enabled"}, where);
  const auto ref = KaonParams::reference();
  return KaonParams::make(field(j, "tau_s", ref.tau_s(), where), field(j, "tau_l", ref.tau_l(), where),
                          field(j, "delta_m", ref.delta_m_mev(), where), field(j, "eps_abs", ref.eps_abs(), where),
                          field(j, "eps_re", ref.eps_re(), where), field(j, "cp_enabled", true, where));
}

NeutrinoParams neutrino_params_from_json(const json& j) {
  constexpr const char* where = "neutrino";
  reject_unknown_keys(j, {"delta_m2_ev2", "theta_rad", "tan2_theta", "energy_mev"}, where);
  const auto ref = NeutrinoParams::reference();
  const double dm2 = field(j, "delta_m2_ev2", ref.delta_m2_ev2(), where);
  const double energy = field(j, "energy_mev", ref.energy_mev(), where);
  if (j.contains("theta_rad") && j.contains("tan2_theta")) {
    throw ParameterError("neutrino: give either theta_rad or tan2_theta, not both");
  }
  if (j.contains("tan2_theta")) {
    return NeutrinoParams::from_tan2_theta(dm2, field(j, "tan2_theta", 0.0, where), energy);
  }
  return NeutrinoParams::make(dm2, field(j, "theta_rad", ref.theta_rad(), where), energy);
}

json to_json(const ParamsConfig& config) {
  return json{{"kaon", to_json(config.kaon)}, {"neutrino", to_json(config.neutrino)}};
}

ParamsConfig params_config_from_json(const json& j) {
  reject_unknown_keys(j, {"kaon", "neutrino"}, "config");
  ParamsConfig out;
  if (j.contains("kaon")) out.kaon = kaon_params_from_json(j.at("kaon"));
  if (j.contains("neutrino")) out.neutrino = neutrino_params_from_json(j.at("neutrino"));
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParameterError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace lgi
