#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lgi/params.hpp"

namespace lgi::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 2, kNumericalError = 3 };

enum class System { Kaon, Neutrino };
enum class Format { Csv, Json };

struct ScanSettings {
  std::optional<double> t1_tau_s;
  std::optional<double> dt_min;
  std::optional<double> dt_max;
  std::optional<int> steps;
  std::optional<double> loe_min;
  std::optional<double> loe_max;
  std::optional<double> tol;
};

/// Fully validated run configuration. Built from the JSON config representation,
/// into which command-line flags are merged first (flags > file > defaults).
struct RunConfig {
  std::optional<System> system;
  KaonParams kaon = KaonParams::reference();
  KaonParams kaon_cp_on = KaonParams::reference();  // same inputs, CP forced on
  NeutrinoParams neutrino = NeutrinoParams::reference();
  ScanSettings scan;
  std::uint64_t seed = 20130214;
  std::size_t samples = 1000;
  std::string out;  // empty: stdout
  Format format = Format::Csv;
};

// Config file schema (all keys optional, unknown keys rejected):
// {
//   "system": "kaon" | "neutrino",
//   "kaon": {tau_s, tau_l, delta_m, eps_abs, eps_re, cp_enabled},
//   "neutrino": {delta_m2_ev2, theta_rad | tan2_theta, energy_mev},
//   "scan": {t1_tau_s, dt_min, dt_max, steps, loe_min, loe_max, tol},
//   "seed": integer, "samples": integer, "out": path, "format": "csv" | "json"
// }
RunConfig run_config_from_json(const nlohmann::json& j);

// Resolved form of a RunConfig; feeding it back through run_config_from_json reproduces the run.
nlohmann::json to_json(const RunConfig& cfg);

// Entry point shared by the `lgi` executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Fixed-width CSV field: 17 significant digits.
std::string format_number(double x);

}  // namespace lgi::cli
