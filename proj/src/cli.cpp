#include "lgi/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "lgi/config.hpp"
#include "lgi/errors.hpp"
#include "lgi/kaon.hpp"
#include "lgi/neutrino.hpp"
#include "lgi/oracle.hpp"
#include "lgi/scan.hpp"

namespace lgi::cli {

using nlohmann::json;

namespace {

constexpr double kOracleThreshold = 1e-10;

// Command defaults when neither flag nor config sets a scan key.
constexpr double kDefaultT1 = 5.3;
constexpr int kDefaultCurveSteps = 1001;
constexpr int kDefaultNeutrinoSteps = 10001;
constexpr double kDefaultLoeMax = 100.0;
constexpr double kZoomDtMin = 0.74;
constexpr double kZoomDtMax = 0.84;

template <typename T>
std::optional<T> optional_field(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) return std::nullopt;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParameterError(std::string(where) + ": key \"" + key + "\" has the wrong type");
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// One output table; written as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> columns;
  struct Row {
    std::vector<double> values;
    std::string error;
  };
  std::vector<Row> rows;

  bool has_errors() const {
    return std::any_of(rows.begin(), rows.end(), [](const Row& r) { return !r.error.empty(); });
  }

  void write_csv(std::ostream& os) const {
    const bool errors = has_errors();
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    if (errors) os << ",error";
    os << '\n';
    for (const Row& row : rows) {
      for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) os << ',';
        if (row.error.empty()) os << format_number(row.values[i]);
      }
      if (errors) os << ',' << csv_escape(row.error);
      os << '\n';
    }
  }

  json to_json() const {
    json arr = json::array();
    for (const Row& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < columns.size(); ++i) {
        obj[columns[i]] = row.error.empty() ? json(row.values[i]) : json(nullptr);
      }
      if (!row.error.empty()) obj["error"] = row.error;
      arr.push_back(std::move(obj));
    }
    return arr;
  }
};

class Output {
 public:
  Output(const RunConfig& cfg, std::ostream& fallback) : format_(cfg.format) {
    if (!cfg.out.empty()) {
      file_.open(cfg.out, std::ios::binary);
      if (!file_) throw ParameterError("cannot open output file " + cfg.out);
    }
    os_ = cfg.out.empty() ? &fallback : &file_;
  }

  void table(const Table& t) {
    if (format_ == Format::Csv) {
      t.write_csv(*os_);
    } else {
      *os_ << t.to_json().dump(2) << '\n';
    }
  }

  void report(const json& j, const std::vector<std::string>& columns) {
    if (format_ == Format::Json) {
      *os_ << j.dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < columns.size(); ++i) *os_ << (i ? "," : "") << columns[i];
    *os_ << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) *os_ << ',';
      const json& v = j.at(columns[i]);
      if (v.is_number_float()) {
        *os_ << format_number(v.get<double>());
      } else if (v.is_null()) {
        *os_ << "";
      } else if (v.is_string()) {
        *os_ << csv_escape(v.get<std::string>());
      } else {
        *os_ << v.dump();
      }
    }
    *os_ << '\n';
  }

 private:
  Format format_;
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

scan::Axis checked_axis(double lo, double hi, int steps, const char* what) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ParameterError(std::string(what) + " range is empty: min must be below max");
  }
  if (steps < 2) throw ParameterError("--steps must be at least 2");
  return {lo, hi, steps};
}

void require_system(const RunConfig& cfg, System wanted, const char* command) {
  if (cfg.system && *cfg.system != wanted) {
    throw ParameterError(std::string(command) + " does not match the selected --system");
  }
}

scan::Axis kaon_dt_axis(const RunConfig& cfg, double lo, double hi, int steps) {
  return checked_axis(cfg.scan.dt_min.value_or(lo), cfg.scan.dt_max.value_or(hi), cfg.scan.steps.value_or(steps),
                      "dt");
}

scan::Axis loe_axis(const RunConfig& cfg) {
  return checked_axis(cfg.scan.loe_min.value_or(0.0), cfg.scan.loe_max.value_or(kDefaultLoeMax),
                      cfg.scan.steps.value_or(kDefaultNeutrinoSteps), "L/E");
}

double kaon_t1(const RunConfig& cfg) {
  const double t1 = cfg.scan.t1_tau_s.value_or(kDefaultT1);
  if (!std::isfinite(t1) || t1 < 0.0) throw ParameterError("--t1-tau-s must be non-negative");
  return t1;
}

// C(dt) at fixed t1 for each parameter set, one column per set.
Table kaon_curve(const std::vector<KaonParams>& sets, const std::vector<std::string>& names, double t1,
                 const scan::Axis& dt_axis, bool components) {
  Table t;
  t.columns.push_back("dt_over_tau_s");
  for (const auto& n : names) t.columns.push_back(n);
  if (components) {
    for (const char* c : {"c12", "c23", "c34", "c14"}) t.columns.push_back(c);
  }
  for (int i = 0; i < dt_axis.steps; ++i) {
    const double dt = dt_axis.coordinate(i);
    Table::Row row{{dt}, {}};
    try {
      for (const KaonParams& p : sets) {
        const LgiEvaluation e = kaon::lgi_c_equal_spacing(p, t1, dt);
        row.values.push_back(e.c);
        if (components) row.values.insert(row.values.end(), {e.c12, e.c23, e.c34, e.c14});
      }
    } catch (const ConditioningError& ex) {
      row.error = ex.what();
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table neutrino_curve(const NeutrinoParams& params, const scan::Axis& axis) {
  Table t{{"l_over_e_km_per_mev", "phase_rad", "c"}, {}};
  for (int i = 0; i < axis.steps; ++i) {
    const neutrino::NeutrinoLgiPoint p = neutrino::lgi_c(params, axis.coordinate(i));
    t.rows.push_back({{p.l_over_e, p.phase, p.c_value}, {}});
  }
  return t;
}

int finish_table(Output& output, const Table& t) {
  output.table(t);
  return t.has_errors() ? kNumericalError : kSuccess;
}

int cmd_kaon_scan(const RunConfig& cfg, std::ostream& out) {
  require_system(cfg, System::Kaon, "kaon-scan");
  const auto axis = kaon_dt_axis(cfg, 0.0, 10.0, kDefaultCurveSteps);
  const double t1 = kaon_t1(cfg);
  Output output(cfg, out);
  return finish_table(output, kaon_curve({cfg.kaon}, {"c"}, t1, axis, true));
}

int cmd_kaon_max(const RunConfig& cfg, std::ostream& out) {
  require_system(cfg, System::Kaon, "kaon-max");
  scan::KaonSearch search;
  const int steps = cfg.scan.steps.value_or(search.dt.steps);
  search.dt = kaon_dt_axis(cfg, search.dt.lower, search.dt.upper, steps);
  search.t1.steps = steps;
  search.tolerance = cfg.scan.tol.value_or(search.tolerance);
  if (!(search.tolerance > 0.0)) throw ParameterError("--tol must be positive");
  Output output(cfg, out);

  const scan::KaonMax best = scan::maximize_kaon(cfg.kaon, search);
  json report{{"c_max", best.c},
              {"t1", best.t1 ? json(*best.t1) : json(nullptr)},
              {"dt", best.dt},
              {"cp_enabled", cfg.kaon.cp_enabled()},
              {"evaluations", best.result.evaluations},
              {"at_boundary", best.result.at_boundary}};
  output.report(report, {"c_max", "t1", "dt", "cp_enabled", "evaluations", "at_boundary"});
  return kSuccess;
}

int cmd_neutrino_scan(const RunConfig& cfg, std::ostream& out) {
  require_system(cfg, System::Neutrino, "neutrino-scan");
  const auto axis = loe_axis(cfg);
  Output output(cfg, out);
  return finish_table(output, neutrino_curve(cfg.neutrino, axis));
}

int cmd_oracle_check(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.system) throw ParameterError("oracle-check needs --system kaon|neutrino");
  if (cfg.samples == 0) throw ParameterError("--samples must be positive");
  Output output(cfg, out);

  using oracle::Outcome;
  std::mt19937_64 rng(cfg.seed);
  double joint_gap = 0.0;
  double corr_gap = 0.0;
  double closed_form_gap = 0.0;

  if (*cfg.system == System::Kaon) {
    const auto model = oracle::make_kaon_model(cfg.kaon);
    std::uniform_real_distribution<double> time(0.0, kaon::kSupportedWindow);
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      double t1 = time(rng);
      double t2 = time(rng);
      if (t2 < t1) std::swap(t1, t2);
      for (auto a : {kaon::Strangeness::K0, kaon::Strangeness::K0bar}) {
        for (auto b : {kaon::Strangeness::K0, kaon::Strangeness::K0bar}) {
          const auto oa = a == kaon::Strangeness::K0 ? Outcome::Plus : Outcome::Minus;
          const auto ob = b == kaon::Strangeness::K0 ? Outcome::Plus : Outcome::Minus;
          joint_gap = std::max(joint_gap, std::abs(kaon::joint_prob(cfg.kaon, a, b, t1, t2) -
                                                   oracle::oracle_joint(model, oa, ob, t1, t2)));
        }
      }
      const double c = kaon::correlator(cfg.kaon, t1, t2).value;
      corr_gap = std::max(corr_gap, std::abs(c - oracle::oracle_correlator(model, t1, t2)));
      closed_form_gap = std::max(closed_form_gap, std::abs(c - kaon::correlator_closed_form(cfg.kaon, t1, t2)));
    }
  } else {
    const auto model = oracle::make_neutrino_model(cfg.neutrino);
    const auto axis = loe_axis(cfg);
    std::uniform_real_distribution<double> loe(axis.lower, axis.upper);
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      double l1 = loe(rng);
      double l2 = loe(rng);
      if (l2 < l1) std::swap(l1, l2);
      for (auto a : {neutrino::Flavor::NuE, neutrino::Flavor::NuMu}) {
        for (auto b : {neutrino::Flavor::NuE, neutrino::Flavor::NuMu}) {
          const auto oa = a == neutrino::Flavor::NuE ? Outcome::Plus : Outcome::Minus;
          const auto ob = b == neutrino::Flavor::NuE ? Outcome::Plus : Outcome::Minus;
          joint_gap = std::max(joint_gap, std::abs(neutrino::joint_prob(cfg.neutrino, a, b, l1, l2) -
                                                   oracle::oracle_joint(model, oa, ob, l1, l2)));
        }
      }
      corr_gap = std::max(corr_gap, std::abs(neutrino::correlator(cfg.neutrino, l2 - l1) -
                                             oracle::oracle_correlator(model, l1, l2)));
    }
  }

  const double worst = std::max({joint_gap, corr_gap, closed_form_gap});
  const bool pass = worst < kOracleThreshold;
  json report{{"system", *cfg.system == System::Kaon ? "kaon" : "neutrino"},
              {"samples", cfg.samples},
              {"seed", cfg.seed},
              {"max_joint_discrepancy", joint_gap},
              {"max_correlator_discrepancy", corr_gap},
              {"max_closed_form_discrepancy", closed_form_gap},
              {"max_discrepancy", worst},
              {"threshold", kOracleThreshold},
              {"pass", pass}};
  output.report(report, {"system", "samples", "seed", "max_joint_discrepancy", "max_correlator_discrepancy",
                         "max_closed_form_discrepancy", "max_discrepancy", "threshold", "pass"});
  return pass ? kSuccess : kNumericalError;
}

int cmd_fig1(const RunConfig& cfg, const std::string& panel, std::ostream& out) {
  if (panel == "a") {
    require_system(cfg, System::Kaon, "fig1 a");
    const auto axis = kaon_dt_axis(cfg, 0.0, 10.0, kDefaultCurveSteps);
    const double t1 = kaon_t1(cfg);
    Output output(cfg, out);
    const char* name = cfg.kaon.cp_enabled() ? "c_cp_on" : "c_cp_off";
    return finish_table(output, kaon_curve({cfg.kaon}, {name}, t1, axis, false));
  }
  if (panel == "b") {
    require_system(cfg, System::Kaon, "fig1 b");
    const auto axis = kaon_dt_axis(cfg, kZoomDtMin, kZoomDtMax, kDefaultCurveSteps);
    const double t1 = kaon_t1(cfg);
    const KaonParams off = KaonParams::make(cfg.kaon.tau_s(), cfg.kaon.tau_l(), cfg.kaon.delta_m_mev(), 0.0, 0.0,
                                            false);
    Output output(cfg, out);
    return finish_table(output, kaon_curve({cfg.kaon_cp_on, off}, {"c_cp_on", "c_cp_off"}, t1, axis, false));
  }
  if (panel == "c") {
    require_system(cfg, System::Neutrino, "fig1 c");
    const auto axis = loe_axis(cfg);
    Output output(cfg, out);
    return finish_table(output, neutrino_curve(cfg.neutrino, axis));
  }
  throw ParameterError("--panel must be a, b or c");
}

// Values given on the command line; merged into the JSON config representation.
struct Flags {
  std::string config;
  std::string system, cp, format, out, panel;
  double eps_abs = 0, eps_re = 0, tau_s = 0, tau_l = 0, delta_m = 0, delta_m2 = 0, tan2 = 0, theta = 0;
  double t1 = 0, dt_min = 0, dt_max = 0, loe_min = 0, loe_max = 0, tol = 0;
  int steps = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  bool dump_config = false;
};

struct FlagOptions {
  CLI::Option *system, *cp, *format, *out, *eps_abs, *eps_re, *tau_s, *tau_l, *delta_m, *delta_m2, *tan2, *theta,
      *t1, *dt_min, *dt_max, *loe_min, *loe_max, *tol, *steps, *seed, *samples;
};

json merged_config(const Flags& f, const FlagOptions& o) {
  json j = f.config.empty() ? json::object() : read_json_file(f.config);
  if (!j.is_object()) throw ParameterError("config file must contain a JSON object");

  auto section = [&j](const char* name) -> json& {
    if (!j.contains(name)) j[name] = json::object();
    if (!j[name].is_object()) throw ParameterError(std::string("config: \"") + name + "\" must be an object");
    return j[name];
  };
  auto set = [](json& target, const char* key, CLI::Option* opt, const auto& value) {
    if (opt->count() > 0) target[key] = value;
  };

  set(j, "system", o.system, f.system);
  set(j, "format", o.format, f.format);
  set(j, "out", o.out, f.out);
  set(j, "seed", o.seed, f.seed);
  set(j, "samples", o.samples, f.samples);

  if (o.cp->count() || o.eps_abs->count() || o.eps_re->count() || o.tau_s->count() || o.tau_l->count() ||
      o.delta_m->count()) {
    json& k = section("kaon");
    if (o.cp->count()) k["cp_enabled"] = f.cp == "on";
    if (o.eps_abs->count() && !o.eps_re->count()) {
      // Hold Re(eps)/|eps| fixed when only the magnitude is overridden.
      const auto ref = KaonParams::reference();
      const double abs0 = k.contains("eps_abs") ? k["eps_abs"].get<double>() : ref.eps_abs();
      const double re0 = k.contains("eps_re") ? k["eps_re"].get<double>() : ref.eps_re();
      k["eps_re"] = abs0 > 0.0 ? re0 * (f.eps_abs / abs0) : 0.0;
    }
    set(k, "eps_abs", o.eps_abs, f.eps_abs);
    set(k, "eps_re", o.eps_re, f.eps_re);
    set(k, "tau_s", o.tau_s, f.tau_s);
    set(k, "tau_l", o.tau_l, f.tau_l);
    set(k, "delta_m", o.delta_m, f.delta_m);
  }
  if (o.delta_m2->count() || o.tan2->count() || o.theta->count()) {
    json& n = section("neutrino");
    set(n, "delta_m2_ev2", o.delta_m2, f.delta_m2);
    if (o.tan2->count()) {
      n.erase("theta_rad");
      n["tan2_theta"] = f.tan2;
    }
    if (o.theta->count()) {
      n.erase("tan2_theta");
      n["theta_rad"] = f.theta;
    }
  }
  if (o.t1->count() || o.dt_min->count() || o.dt_max->count() || o.steps->count() || o.loe_min->count() ||
      o.loe_max->count() || o.tol->count()) {
    json& s = section("scan");
    set(s, "t1_tau_s", o.t1, f.t1);
    set(s, "dt_min", o.dt_min, f.dt_min);
    set(s, "dt_max", o.dt_max, f.dt_max);
    set(s, "steps", o.steps, f.steps);
    set(s, "loe_min", o.loe_min, f.loe_min);
    set(s, "loe_max", o.loe_max, f.loe_max);
    set(s, "tol", o.tol, f.tol);
  }
  return j;
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

RunConfig run_config_from_json(const json& j) {
  reject_unknown_keys(j, {"system", "kaon", "neutrino", "scan", "seed", "samples", "out", "format"}, "config");
  RunConfig cfg;
  if (auto s = optional_field<std::string>(j, "system", "config")) {
    if (*s == "kaon") {
      cfg.system = System::Kaon;
    } else if (*s == "neutrino") {
      cfg.system = System::Neutrino;
    } else {
      throw ParameterError("system must be \"kaon\" or \"neutrino\"");
    }
  }
  if (j.contains("kaon")) {
    cfg.kaon = kaon_params_from_json(j.at("kaon"));
    json on = j.at("kaon");
    on["cp_enabled"] = true;
    cfg.kaon_cp_on = kaon_params_from_json(on);
  }
  if (j.contains("neutrino")) cfg.neutrino = neutrino_params_from_json(j.at("neutrino"));
  if (j.contains("scan")) {
    const json& s = j.at("scan");
    reject_unknown_keys(s, {"t1_tau_s", "dt_min", "dt_max", "steps", "loe_min", "loe_max", "tol"}, "scan");
    cfg.scan.t1_tau_s = optional_field<double>(s, "t1_tau_s", "scan");
    cfg.scan.dt_min = optional_field<double>(s, "dt_min", "scan");
    cfg.scan.dt_max = optional_field<double>(s, "dt_max", "scan");
    cfg.scan.steps = optional_field<int>(s, "steps", "scan");
    cfg.scan.loe_min = optional_field<double>(s, "loe_min", "scan");
    cfg.scan.loe_max = optional_field<double>(s, "loe_max", "scan");
    cfg.scan.tol = optional_field<double>(s, "tol", "scan");
  }
  cfg.seed = optional_field<std::uint64_t>(j, "seed", "config").value_or(cfg.seed);
  cfg.samples = optional_field<std::size_t>(j, "samples", "config").value_or(cfg.samples);
  cfg.out = optional_field<std::string>(j, "out", "config").value_or("");
  if (auto f = optional_field<std::string>(j, "format", "config")) {
    if (*f == "csv") {
      cfg.format = Format::Csv;
    } else if (*f == "json") {
      cfg.format = Format::Json;
    } else {
      throw ParameterError("format must be \"csv\" or \"json\"");
    }
  }
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json kaon = lgi::to_json(cfg.kaon_cp_on);
  kaon["cp_enabled"] = cfg.kaon.cp_enabled();
  json scan = json::object();
  auto put = [&](const char* key, const auto& v) {
    if (v) scan[key] = *v;
  };
  put("t1_tau_s", cfg.scan.t1_tau_s);
  put("dt_min", cfg.scan.dt_min);
  put("dt_max", cfg.scan.dt_max);
  put("steps", cfg.scan.steps);
  put("loe_min", cfg.scan.loe_min);
  put("loe_max", cfg.scan.loe_max);
  put("tol", cfg.scan.tol);

  json j{{"kaon", kaon},
         {"neutrino", lgi::to_json(cfg.neutrino)},
         {"scan", scan},
         {"seed", cfg.seed},
         {"samples", cfg.samples},
         {"format", cfg.format == Format::Json ? "json" : "csv"}};
  if (cfg.system) j["system"] = *cfg.system == System::Kaon ? "kaon" : "neutrino";
  if (!cfg.out.empty()) j["out"] = cfg.out;
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Leggett-Garg correlators and violation maxima for oscillating kaons and neutrinos", "lgi"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  FlagOptions o{};
  app.add_option("--config", f.config, "JSON config file (flags override it)");
  o.system = app.add_option("--system", f.system, "kaon | neutrino")->check(CLI::IsMember({"kaon", "neutrino"}));
  o.cp = app.add_option("--cp", f.cp, "CP violation on | off")->check(CLI::IsMember({"on", "off"}));
  o.eps_abs = app.add_option("--eps-abs", f.eps_abs, "|eps| (Re(eps) rescaled unless --eps-re is given)");
  o.eps_re = app.add_option("--eps-re", f.eps_re, "Re(eps)");
  o.tau_s = app.add_option("--tau-s", f.tau_s, "K_S lifetime [s]");
  o.tau_l = app.add_option("--tau-l", f.tau_l, "K_L lifetime [s]");
  o.delta_m = app.add_option("--delta-m-mev", f.delta_m, "m_L - m_S [MeV]");
  o.delta_m2 = app.add_option("--delta-m2-ev2", f.delta_m2, "neutrino dm^2 c^4 [eV^2]");
  o.tan2 = app.add_option("--tan2-theta", f.tan2, "neutrino tan^2(theta)");
  o.theta = app.add_option("--theta-rad", f.theta, "neutrino mixing angle [rad]");
  o.tan2->excludes(o.theta);
  o.t1 = app.add_option("--t1-tau-s", f.t1, "first measurement time [tau_S]");
  o.dt_min = app.add_option("--dt-min", f.dt_min, "smallest spacing [tau_S]");
  o.dt_max = app.add_option("--dt-max", f.dt_max, "largest spacing [tau_S]");
  o.steps = app.add_option("--steps", f.steps, "grid points per axis");
  o.loe_min = app.add_option("--loe-min", f.loe_min, "smallest L/E [km/MeV]");
  o.loe_max = app.add_option("--loe-max", f.loe_max, "largest L/E [km/MeV]");
  o.seed = app.add_option("--seed", f.seed, "seed for random sampling");
  o.samples = app.add_option("--samples", f.samples, "oracle-check sample count");
  o.out = app.add_option("--out", f.out, "output file (default stdout)");
  o.format = app.add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  o.tol = app.add_option("--tol", f.tol, "refinement box width at termination");
  app.add_flag("--dump-config", f.dump_config, "print the merged configuration as JSON and exit");

  auto* kaon_scan = app.add_subcommand("kaon-scan", "C and its correlators versus dt at fixed t1");
  auto* kaon_max = app.add_subcommand("kaon-max", "refined maximum of C over (t1, dt)");
  auto* neutrino_scan = app.add_subcommand("neutrino-scan", "C versus L/E");
  auto* oracle_check = app.add_subcommand("oracle-check", "closed forms versus amplitude-level evolution");
  auto* fig1 = app.add_subcommand("fig1", "plot-ready data for the three figure panels");
  fig1->add_option("--panel", f.panel, "a | b | c")->required()->check(CLI::IsMember({"a", "b", "c"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    json merged = merged_config(f, o);
    RunConfig cfg = run_config_from_json(merged);
    if (!cfg.system) {
      if (*kaon_scan || *kaon_max) cfg.system = System::Kaon;
      if (*neutrino_scan) cfg.system = System::Neutrino;
      if (*fig1) cfg.system = f.panel == "c" ? System::Neutrino : System::Kaon;
    }
    if (f.dump_config) {
      out << to_json(cfg).dump(2) << '\n';
      return kSuccess;
    }
    if (*kaon_scan) return cmd_kaon_scan(cfg, out);
    if (*kaon_max) return cmd_kaon_max(cfg, out);
    if (*neutrino_scan) return cmd_neutrino_scan(cfg, out);
    if (*oracle_check) return cmd_oracle_check(cfg, out);
    return cmd_fig1(cfg, f.panel, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConditioningError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace lgi::cli
