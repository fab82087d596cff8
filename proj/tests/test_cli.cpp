#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lgi/cli.hpp"

using lgi::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
  }
  std::vector<double> numbers(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(std::stod(r.at(c)));
    return v;
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::stringstream ss(text);
  std::string line;
  std::getline(ss, line);
  csv.header = split(line);
  while (std::getline(ss, line)) csv.rows.push_back(split(line));
  return csv;
}

// Local maxima of a sampled curve (strictly above both neighbours).
std::vector<std::size_t> peaks(const std::vector<double>& v) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) idx.push_back(i);
  return idx;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lgi_test_" + name);
}

}  // namespace

TEST_CASE("kaon-scan: default curve") {
  const auto r = invoke({"kaon-scan"});
  REQUIRE(r.code == 0);
  const auto csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"dt_over_tau_s", "c", "c12", "c23", "c34", "c14"});
  CHECK(r.out.find('\r') == std::string::npos);
  const auto c = csv.numbers("c");
  const auto dt = csv.numbers("dt_over_tau_s");
  const auto i = argmax(c);
  CHECK(std::abs(c[i] - 2.3646) < 5e-4);
  CHECK(std::abs(dt[i] - 0.789) < 0.01);
}

TEST_CASE("kaon-scan: --cp off and empty range") {
  const auto off = parse_csv(invoke({"kaon-scan", "--cp", "off"}).out);
  const auto c = off.numbers("c");
  CHECK(std::abs(c[argmax(c)] - 2.36448) < 5e-4);

  CHECK(invoke({"kaon-scan", "--dt-min", "2", "--dt-max", "2"}).code == 2);
  CHECK(invoke({"kaon-scan", "--dt-min", "3", "--dt-max", "1"}).code == 2);
  CHECK(invoke({"kaon-scan", "--steps", "1"}).code == 2);
}

TEST_CASE("kaon-scan: conditioning failures give error rows and exit 3") {
  const auto r = invoke({"kaon-scan", "--dt-max", "20", "--steps", "21"});
  CHECK(r.code == 3);
  const auto csv = parse_csv(r.out);
  CHECK(csv.header.back() == "error");
  CHECK(csv.rows.size() == 21);
  CHECK(csv.rows.front().back().empty());
  CHECK_FALSE(csv.rows.back().back().empty());
  CHECK(csv.rows.back()[1].empty());
}

TEST_CASE("kaon-max: reports") {
  auto r = invoke({"kaon-max", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["c_max"].get<double>() - 2.36463) <= 5e-4);
  CHECK(std::abs(j["t1"].get<double>() - 5.3) <= 0.05);
  CHECK(std::abs(j["dt"].get<double>() - 0.789) <= 0.002);
  CHECK(j["cp_enabled"] == true);
  CHECK(j["evaluations"].get<int>() > 160000);

  r = invoke({"kaon-max", "--cp", "off", "--format", "json"});
  j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["c_max"].get<double>() - 2.36448) <= 5e-4);
  CHECK(j["t1"].is_null());

  r = invoke({"kaon-max", "--eps-abs", "2.23e-2", "--format", "json"});
  j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["c_max"].get<double>() - 2.36667) <= 1e-3);

  r = invoke({"kaon-max"});
  REQUIRE(r.code == 0);
  CHECK(parse_csv(r.out).header == std::vector<std::string>{"c_max", "t1", "dt", "cp_enabled", "evaluations",
                                                             "at_boundary"});
}

TEST_CASE("neutrino-scan: KamLAND and maximal mixing") {
  auto r = invoke({"neutrino-scan"});
  REQUIRE(r.code == 0);
  auto csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"l_over_e_km_per_mev", "phase_rad", "c"});
  auto c = csv.numbers("c");
  const auto p = peaks(c);
  REQUIRE(p.size() >= 3);
  for (std::size_t i : p) {
    if (c[i] > 2.7) CHECK(std::abs(c[i] - 2.76) <= 0.01);
  }

  r = invoke({"neutrino-scan", "--theta-rad", "0.7853981634"});
  c = parse_csv(r.out).numbers("c");
  CHECK(std::abs(c[argmax(c)] - 2.82843) <= 1e-4);

  CHECK(invoke({"neutrino-scan", "--loe-min", "5", "--loe-max", "5"}).code == 2);
  CHECK(invoke({"neutrino-scan", "--tan2-theta", "0.5", "--theta-rad", "0.3"}).code == 2);
}

TEST_CASE("oracle-check") {
  auto r = invoke({"oracle-check", "--system", "kaon", "--format", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["max_discrepancy"].get<double>() < 1e-10);
  CHECK(j["samples"] == 1000);

  r = invoke({"oracle-check", "--system", "neutrino", "--format", "json"});
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["max_discrepancy"].get<double>() < 1e-12);

  CHECK(invoke({"oracle-check", "--system", "kaon", "--tau-s", "1e-7"}).code == 2);
  CHECK(invoke({"oracle-check"}).code == 2);
}

TEST_CASE("fig1 panels") {
  SUBCASE("b: CP on and off differ by about 1.5e-4 at their maxima") {
    const auto r = invoke({"fig1", "--panel", "b"});
    REQUIRE(r.code == 0);
    const auto csv = parse_csv(r.out);
    const auto on = csv.numbers("c_cp_on");
    const auto off = csv.numbers("c_cp_off");
    const double diff = on[argmax(on)] - off[argmax(off)];
    CHECK(std::abs(diff - 1.5e-4) < 5e-5);
  }
  SUBCASE("c: period pi in the phase") {
    const auto csv = parse_csv(invoke({"fig1", "--panel", "c", "--steps", "20001"}).out);
    const auto c = csv.numbers("c");
    const auto phase = csv.numbers("phase_rad");
    std::vector<double> top;
    for (std::size_t i : peaks(c))
      if (c[i] > 2.75) top.push_back(phase[i]);
    REQUIRE(top.size() >= 4);
    // Peaks sit at pi/8 + k pi and 7pi/8 + k pi; every second one is a period apart.
    for (std::size_t i = 2; i < top.size(); ++i) CHECK(std::abs(top[i] - top[i - 2] - std::numbers::pi) < 0.01);
  }
  SUBCASE("a: single broken-curve column when CP is off") {
    const auto csv = parse_csv(invoke({"fig1", "--panel", "a", "--cp", "off"}).out);
    CHECK(csv.header == std::vector<std::string>{"dt_over_tau_s", "c_cp_off"});
    const auto on = parse_csv(invoke({"fig1", "--panel", "a"}).out);
    CHECK(on.header == std::vector<std::string>{"dt_over_tau_s", "c_cp_on"});
  }
  SUBCASE("usage errors") {
    CHECK(invoke({"fig1"}).code == 2);
    CHECK(invoke({"fig1", "--panel", "d"}).code == 2);
    CHECK(invoke({"fig1", "--panel", "c", "--system", "kaon"}).code == 2);
  }
}

TEST_CASE("CSV output is byte-for-byte deterministic and full precision") {
  const auto a = invoke({"kaon-scan", "--steps", "301"});
  const auto b = invoke({"kaon-scan", "--steps", "301"});
  CHECK(a.out == b.out);
  const auto csv = parse_csv(a.out);
  const std::string cell = csv.rows[50][1];
  CHECK(std::stod(cell) == std::stod(lgi::cli::format_number(std::stod(cell))));
  CHECK(cell.size() >= 17);
}

TEST_CASE("flags round-trip through the config file; flags override the file") {
  const auto dump = invoke({"kaon-scan", "--dump-config", "--cp", "off", "--tau-s", "0.9e-10", "--dt-max", "3",
                            "--steps", "7", "--seed", "42", "--tan2-theta", "0.4", "--format", "json"});
  REQUIRE(dump.code == 0);
  const auto path = temp_file("roundtrip.json");
  std::ofstream(path) << dump.out;

  const auto again = invoke({"kaon-scan", "--dump-config", "--config", path.string()});
  CHECK(nlohmann::json::parse(again.out) == nlohmann::json::parse(dump.out));

  const auto from_flags = invoke({"kaon-scan", "--cp", "off", "--tau-s", "0.9e-10", "--dt-max", "3", "--steps", "7",
                                  "--format", "json"});
  const auto from_file = invoke({"kaon-scan", "--config", path.string()});
  CHECK(from_flags.out == from_file.out);

  const auto overridden = invoke({"kaon-scan", "--config", path.string(), "--steps", "3", "--format", "csv"});
  CHECK(parse_csv(overridden.out).rows.size() == 3);
  std::filesystem::remove(path);
}

TEST_CASE("config file errors exit 2") {
  const auto path = temp_file("bad.json");
  std::ofstream(path) << R"({"kaon": {"tau_s": 1e-10}, "colour": "blue"})";
  CHECK(invoke({"kaon-scan", "--config", path.string()}).code == 2);
  std::ofstream(path) << "{ not json";
  CHECK(invoke({"kaon-scan", "--config", path.string()}).code == 2);
  CHECK(invoke({"kaon-scan", "--config", "/nonexistent/lgi.json"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("--eps-abs alone rescales Re(eps)") {
  const auto dump = invoke({"kaon-max", "--dump-config", "--eps-abs", "2.23e-2"});
  const auto j = nlohmann::json::parse(dump.out);
  CHECK(j["kaon"]["eps_re"].get<double>() == doctest::Approx(1.596e-3 * 2.23e-2 / 2.232e-3).epsilon(1e-14));
}

TEST_CASE("--out writes to a file") {
  const auto path = temp_file("out.csv");
  const auto r = invoke({"neutrino-scan", "--steps", "11", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(parse_csv(ss.str()).rows.size() == 11);
  std::filesystem::remove(path);
  CHECK(invoke({"neutrino-scan", "--out", "/nonexistent/dir/x.csv"}).code == 2);
}

TEST_CASE("usage") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"kaon-scan", "--cp", "maybe"}).code == 2);
}

TEST_CASE("--dump-config prints resolved values and keeps eps when CP is off") {
  const auto dump = invoke({"fig1", "--panel", "b", "--cp", "off", "--dump-config"});
  REQUIRE(dump.code == 0);
  const auto j = nlohmann::json::parse(dump.out);
  CHECK(j["system"] == "kaon");
  CHECK(j["kaon"]["cp_enabled"] == false);
  CHECK(j["kaon"]["eps_abs"].get<double>() == 2.232e-3);
  CHECK(j["neutrino"]["energy_mev"].get<double>() == 4.0);
  CHECK(j["seed"].get<std::uint64_t>() == 20130214);

  const auto path = temp_file("panel_b.json");
  std::ofstream(path) << dump.out;
  CHECK(invoke({"fig1", "--panel", "b", "--config", path.string()}).out ==
        invoke({"fig1", "--panel", "b", "--cp", "off"}).out);
  std::filesystem::remove(path);
}
