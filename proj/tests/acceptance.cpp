// Acceptance suite: one PASS/FAIL line per criterion; exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lgi/constants.hpp"
#include "lgi/kaon.hpp"
#include "lgi/neutrino.hpp"
#include "lgi/oracle.hpp"
#include "lgi/scan.hpp"

using namespace lgi;
using std::numbers::pi;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<bool(std::string&)> check;
};

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Shared refined maxima; computed once.
const scan::KaonMax& kaon_on() {
  static const scan::KaonMax m = scan::maximize_kaon(KaonParams::reference());
  return m;
}
const scan::KaonMax& kaon_off() {
  static const scan::KaonMax m = scan::maximize_kaon(KaonParams::reference(false));
  return m;
}

oracle::Outcome outcome_of(kaon::Strangeness s) {
  return s == kaon::Strangeness::K0 ? oracle::Outcome::Plus : oracle::Outcome::Minus;
}
oracle::Outcome outcome_of(neutrino::Flavor f) {
  return f == neutrino::Flavor::NuE ? oracle::Outcome::Plus : oracle::Outcome::Minus;
}

bool criterion1(std::string& detail) {
  const auto& m = kaon_on();
  detail = fmt("C_max=%.6f at t1=%.4f dt=%.5f (target 2.36463+-5e-4, t1 5.3+-0.05, dt 0.789+-0.002)", m.c,
               m.t1.value_or(NAN), m.dt);
  return m.t1 && within(m.c, 2.36463, 5e-4) && within(*m.t1, 5.3, 0.05) && within(m.dt, 0.789, 0.002);
}

bool criterion2(std::string& detail) {
  const auto& m = kaon_off();
  const auto p = KaonParams::reference(false);
  double spread = 0.0;
  for (double dt : {m.dt, 0.3, 1.5, 4.0}) {
    double lo = INFINITY;
    double hi = -INFINITY;
    for (int i = 0; i <= 400; ++i) {
      const double c = kaon::lgi_c_equal_spacing(p, 10.0 * i / 400.0, dt).c;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    spread = std::max(spread, hi - lo);
  }
  detail = fmt("C_max=%.6f at dt=%.5f (target 2.36448+-5e-4, dt 0.789+-0.002); t1 spread %.2e (< 1e-12)", m.c, m.dt,
               spread);
  return within(m.c, 2.36448, 5e-4) && within(m.dt, 0.789, 0.002) && spread < 1e-12;
}

bool criterion3(std::string& detail) {
  scan::KaonSearch search;
  search.tolerance = 1e-7;  // box width; resolves C far below 1e-6
  const auto e = scan::cp_enhancement(KaonParams::reference(), KaonParams::reference(false), search);
  detail = fmt("max(on) - max(off) = %.3e (target 1.5e-4 +- 5e-5)", e.difference);
  return within(e.difference, 0.00015, 5e-5);
}

bool criterion4(std::string& detail) {
  const auto p = KaonParams::reference().with_scaled_eps_abs(2.23e-2);
  const auto m = scan::maximize_kaon(p);
  detail = fmt("|eps|=2.23e-2, Re(eps)=%.4e: C_max=%.6f at t1=%.4f dt=%.5f (target 2.36667+-1e-3)", p.eps_re(), m.c,
               m.t1.value_or(NAN), m.dt);
  return within(m.c, 2.36667, 1e-3);
}

bool criterion5(std::string& detail) {
  const auto p = NeutrinoParams::reference();
  const auto best = scan::maximize_neutrino(p);
  const double first = l_over_e_for_phase(p, neutrino::analytic_max(p).phase_star);

  // Dense scan over one decade from the first maximum; every local peak refined.
  const auto domain = scan::ScanDomain::make({{first, 10.0 * first, 40001}});
  const scan::Objective c_of = [&](std::span<const double> x) { return neutrino::lgi_c(p, x[0]).c_value; };
  const auto table = scan::grid_scan(c_of, domain);
  std::vector<double> locations;
  for (std::size_t i = 0; i < table.samples.size(); ++i) {
    const double v = table.samples[i].value;
    const bool left = i == 0 || v > table.samples[i - 1].value;
    const bool right = i + 1 == table.samples.size() || v >= table.samples[i + 1].value;
    if (!(left && right)) continue;
    const auto r = scan::refine_max(c_of, domain, table.samples[i].coords, 1e-9);
    if (within(r.value, best.c, 1e-6)) locations.push_back(r.argmax[0]);
  }
  std::sort(locations.begin(), locations.end());
  locations.erase(std::unique(locations.begin(), locations.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-3; }),
                  locations.end());
  std::string where;
  for (double l : locations) where += fmt(" %.3f", l);
  detail = fmt("C_max=%.5f (target 2.76+-0.01); repeated at %zu L/E in [%.3f, %.3f] km/MeV:%s", best.c,
               locations.size(), first, 10.0 * first, where.c_str());
  return within(best.c, 2.76, 0.01) && locations.size() >= 3;
}

bool criterion6(std::string& detail) {
  const auto maximal = NeutrinoParams::make(7.58e-5, pi / 4.0, kDefaultNeutrinoEnergyMev);
  const auto best = scan::maximize_neutrino(maximal);
  double worst = -INFINITY;
  for (int k = 0; k <= 60; ++k) {
    const auto p = NeutrinoParams::make(7.58e-5, (pi / 2.0) * k / 60.0, kDefaultNeutrinoEnergyMev);
    for (int i = 0; i <= 20000; ++i) worst = std::max(worst, neutrino::lgi_c(p, 100.0 * i / 20000.0).c_value);
  }
  detail = fmt("theta=pi/4: C_max=%.6f (target 2.82843+-1e-4); max over 61 thetas x 20001 L/E = %.12f (<= 2sqrt2+1e-9)",
               best.c, worst);
  return within(best.c, 2.82843, 1e-4) && worst <= constants::tsirelson_bound + 1e-9;
}

bool criterion7(std::string& detail) {
  const double kaon_ratio = (kaon_on().c - 2.0) / 2.0;
  const double nu_ratio = (scan::maximize_neutrino(NeutrinoParams::reference()).c - 2.0) / 2.0;
  const double bound_ratio = (constants::tsirelson_bound - 2.0) / 2.0;
  detail = fmt("kaon %.2f%% (18+-1), neutrino %.2f%% (38+-1), bound %.2f%% (41+-1)", 100 * kaon_ratio, 100 * nu_ratio,
               100 * bound_ratio);
  return within(kaon_ratio, 0.18, 0.01) && within(nu_ratio, 0.38, 0.01) && within(bound_ratio, 0.41, 0.01);
}

bool criterion8(std::string& detail) {
  std::mt19937_64 rng(8);
  double kaon_gap = 0.0;
  {
    const auto p = KaonParams::reference();
    const auto model = oracle::make_kaon_model(p);
    std::uniform_real_distribution<double> u(0.0, kaon::kSupportedWindow);
    for (int i = 0; i < 1000; ++i) {
      double t1 = u(rng), t2 = u(rng);
      if (t2 < t1) std::swap(t1, t2);
      for (auto a : {kaon::Strangeness::K0, kaon::Strangeness::K0bar})
        for (auto b : {kaon::Strangeness::K0, kaon::Strangeness::K0bar})
          kaon_gap = std::max(kaon_gap, std::abs(kaon::joint_prob(p, a, b, t1, t2) -
                                                 oracle::oracle_joint(model, outcome_of(a), outcome_of(b), t1, t2)));
      kaon_gap = std::max(kaon_gap,
                          std::abs(kaon::correlator(p, t1, t2).value - oracle::oracle_correlator(model, t1, t2)));
    }
  }
  double nu_gap = 0.0;
  {
    const auto p = NeutrinoParams::reference();
    const auto model = oracle::make_neutrino_model(p);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int i = 0; i < 1000; ++i) {
      double l1 = u(rng), l2 = u(rng);
      if (l2 < l1) std::swap(l1, l2);
      for (auto a : {neutrino::Flavor::NuE, neutrino::Flavor::NuMu})
        for (auto b : {neutrino::Flavor::NuE, neutrino::Flavor::NuMu})
          nu_gap = std::max(nu_gap, std::abs(neutrino::joint_prob(p, a, b, l1, l2) -
                                             oracle::oracle_joint(model, outcome_of(a), outcome_of(b), l1, l2)));
      nu_gap = std::max(nu_gap, std::abs(neutrino::correlator(p, l2 - l1) - oracle::oracle_correlator(model, l1, l2)));
    }
  }
  detail = fmt("max |closed - oracle| over 1000 pairs: kaon %.2e, neutrino %.2e (< 1e-10)", kaon_gap, nu_gap);
  return kaon_gap < 1e-10 && nu_gap < 1e-10;
}

bool criterion9(std::string& detail) {
  const auto on = KaonParams::reference();
  const auto off = KaonParams::reference(false);
  const auto nu = NeutrinoParams::reference();

  double max_abs_c = 0.0;
  double diag = 0.0;
  double shift_off = 0.0;
  double shift_on = 0.0;
  for (double ta = 0.0; ta <= 20.0; ta += 0.25) {
    diag = std::max(diag, std::abs(kaon::correlator(on, ta, ta).value - 1.0));
    for (double d = 0.0; d <= 20.0; d += 0.21) {
      max_abs_c = std::max(max_abs_c, std::abs(kaon::correlator(on, ta, ta + d).value));
      max_abs_c = std::max(max_abs_c, std::abs(neutrino::correlator(nu, 5.0 * d)));
      if (ta <= 10.0) {
        for (double s : {0.5, 3.0}) {
          shift_off = std::max(shift_off, std::abs(kaon::correlator(off, ta, ta + d).value -
                                                   kaon::correlator(off, ta + s, ta + s + d).value));
          shift_on = std::max(shift_on, std::abs(kaon::correlator(on, ta, ta + d).value -
                                                 kaon::correlator(on, ta + s, ta + s + d).value));
        }
      }
    }
  }
  diag = std::max(diag, std::abs(neutrino::correlator(nu, 0.0) - 1.0));

  // Im(eps) sign flip through the oracle, on C of random quads.
  double flip = 0.0;
  {
    const auto p = on.with_scaled_eps_abs(2.23e-2);
    const auto plus = oracle::make_kaon_model(p, p.epsilon());
    const auto minus = oracle::make_kaon_model(p, std::conj(p.epsilon()));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 300; ++i) {
      const auto q = TimeQuad::from_gaps(3.0 * u(rng), u(rng), u(rng), u(rng));
      auto lgi_of = [&](const oracle::TwoStateModel& m) {
        return evaluate_lgi(q, [&](double s, double g) { return oracle::oracle_correlator(m, s, s + g); }).c;
      };
      flip = std::max(flip, std::abs(lgi_of(plus) - lgi_of(minus)));
    }
  }

  double conservation = 0.0;
  {
    const auto model = oracle::make_neutrino_model(nu);
    for (double l = 0.0; l <= 200.0; l += 0.1) {
      conservation = std::max(conservation, std::abs(oracle::evolve(model, model.initial_state(), l).norm2() - 1.0));
      conservation = std::max(conservation, std::abs(neutrino::transition_prob(nu, true, l) +
                                                     neutrino::transition_prob(nu, false, l) - 1.0));
    }
  }

  double two_path = 0.0;
  for (double d = 0.0; d <= 100.0; d += 0.01) {
    two_path = std::max(two_path, std::abs(neutrino::lgi_c(nu, d).c_value - neutrino::lgi_c_from_correlators(nu, d)));
  }

  detail = fmt(
      "max|C_ij|=%.15f; |C(t,t)-1|=%.1e; shift eps=0 %.1e (<=1e-12), eps!=0 %.1e (>1e-6); Im-flip %.1e; "
      "nu conservation %.1e; two-path %.1e",
      max_abs_c, diag, shift_off, shift_on, flip, conservation, two_path);
  return max_abs_c <= 1.0 && diag <= 1e-12 && shift_off <= 1e-12 && shift_on > 1e-6 && flip <= 1e-12 &&
         conservation <= 1e-12 && two_path <= 1e-12;
}

bool criterion10(std::string& detail) {
  scan::QuadSampling kaon_sampling;
  const auto k = scan::equal_spacing_optimality(KaonParams::reference(), kaon_sampling);

  scan::QuadSampling nu_sampling;
  nu_sampling.t1_max = 10.0;
  nu_sampling.gap_max = 12.0;
  const auto n = scan::equal_spacing_optimality(NeutrinoParams::reference(), nu_sampling);

  detail = fmt(
      "kaon: equal %.9f, sampled %.6f, refined general %.9f, gap %+.2e; neutrino: equal %.9f, sampled %.6f, "
      "refined general %.9f, gap %+.2e (%zu trials each, %zu degenerate)",
      k.equal_spacing_max.c, k.sampled_max.c, k.refined_max.c, k.gap(), n.equal_spacing_max.c, n.sampled_max.c,
      n.refined_max.c, n.gap(), k.trials, k.degenerate_samples);
  return k.trials >= 1000 && n.trials >= 1000 && k.gap() <= 1e-3 && n.gap() <= 1e-3;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "kaon CP-on maximum", criterion1},
      {2, "kaon eps=0 maximum, t1-independent", criterion2},
      {3, "CP enhancement", criterion3},
      {4, "|eps|=2.23e-2 variant", criterion4},
      {5, "neutrino KamLAND maximum, repeated", criterion5},
      {6, "neutrino 2sqrt2 bound", criterion6},
      {7, "violation ratios", criterion7},
      {8, "oracle equivalence", criterion8},
      {9, "invariant suite", criterion9},
      {10, "equal-spacing optimality", criterion10},
  };

  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] %2d %-38s %s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), detail.c_str());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu criteria, %d failed, %.1f s\n", criteria.size(), failures, seconds);
  return failures;
}
