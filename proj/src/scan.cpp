#include "lgi/scan.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "lgi/errors.hpp"
#include "lgi/kaon.hpp"
#include "lgi/neutrino.hpp"

namespace lgi::scan {

namespace {

constexpr std::size_t kMaxDims = 4;
constexpr int kMaxRefinePasses = 200;

unsigned worker_count(const ScanOptions& options, std::size_t jobs) {
  unsigned n = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

struct Evaluated {
  std::vector<double> values;
  std::vector<std::string> errors;  // empty string: success
};

// Evaluates every point; order of evaluation is unspecified, storage is by index.
Evaluated evaluate_all(const Objective& objective, const std::vector<Point>& points, const ScanOptions& options) {
  Evaluated out{std::vector<double>(points.size()), std::vector<std::string>(points.size())};
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        const double v = objective(points[i]);
        if (std::isfinite(v)) {
          out.values[i] = v;
        } else {
          out.errors[i] = "objective returned a non-finite value";
        }
      } catch (const std::exception& e) {
        out.errors[i] = e.what();
      }
    }
  };

  const unsigned workers = worker_count(options, points.size());
  if (workers <= 1) {
    run(0, points.size());
    return out;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (points.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(points.size(), w * chunk);
      const std::size_t end = std::min(points.size(), begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
  }
  return out;
}

std::vector<Point> all_points(const ScanDomain& domain) {
  std::vector<Point> points;
  points.reserve(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) points.push_back(domain.point(i));
  return points;
}

bool near_edge(const ScanDomain& domain, const Point& x, const Point& resolution) {
  for (std::size_t d = 0; d < domain.dims(); ++d) {
    const Axis& a = domain.axis(d);
    if (x[d] - a.lower <= resolution[d] || a.upper - x[d] <= resolution[d]) return true;
  }
  return false;
}

}  // namespace

ScanDomain ScanDomain::make(std::vector<Axis> axes) {
  if (axes.empty() || axes.size() > kMaxDims) throw ParameterError("scan domain needs one to four axes");
  for (const Axis& a : axes) {
    if (!std::isfinite(a.lower) || !std::isfinite(a.upper)) throw ParameterError("scan bounds must be finite");
    if (!(a.lower < a.upper)) throw ParameterError("scan axis is empty: lower bound must be below upper bound");
    if (a.steps < 2) throw ParameterError("scan axis needs at least two steps");
  }
  return ScanDomain(std::move(axes));
}

std::size_t ScanDomain::size() const {
  std::size_t n = 1;
  for (const Axis& a : axes_) n *= static_cast<std::size_t>(a.steps);
  return n;
}

Point ScanDomain::point(std::size_t index) const {
  Point p(axes_.size());
  for (std::size_t d = axes_.size(); d-- > 0;) {
    const auto steps = static_cast<std::size_t>(axes_[d].steps);
    p[d] = axes_[d].coordinate(static_cast<int>(index % steps));
    index /= steps;
  }
  return p;
}

bool ScanDomain::contains(std::span<const double> p) const {
  if (p.size() != axes_.size()) return false;
  for (std::size_t d = 0; d < p.size(); ++d) {
    if (!(p[d] >= axes_[d].lower && p[d] <= axes_[d].upper)) return false;
  }
  return true;
}

SampleTable grid_scan(const Objective& objective, const ScanDomain& domain, const ScanOptions& options) {
  const std::vector<Point> points = all_points(domain);
  Evaluated eval = evaluate_all(objective, points, options);

  SampleTable table;
  table.samples.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!eval.errors[i].empty()) {
      table.excluded.push_back({points[i], std::move(eval.errors[i])});
      continue;
    }
    // Strict comparison keeps the first (smallest row-major) of tied maxima.
    if (!table.samples.empty() && eval.values[i] > table.samples[table.argmax].value) {
      table.argmax = table.samples.size();
    }
    table.samples.push_back({points[i], eval.values[i]});
  }
  if (table.samples.empty()) {
    throw ConditioningError("grid scan: every point was excluded (first reason: " + table.excluded.front().reason +
                            ")");
  }
  return table;
}

MaxResult refine_max(const Objective& objective, const ScanDomain& domain, std::span<const double> seed,
                     double tolerance, const ScanOptions& options) {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw ParameterError("refinement tolerance must be positive");
  if (!domain.contains(seed)) throw ParameterError("refinement seed lies outside the scan domain");

  MaxResult result;
  result.argmax.assign(seed.begin(), seed.end());
  result.value = objective(seed);
  result.evaluations = 1;
  if (!std::isfinite(result.value)) throw ConditioningError("objective is not finite at the refinement seed");

  const std::size_t dims = domain.dims();
  Point half(dims);
  for (std::size_t d = 0; d < dims; ++d) half[d] = domain.axis(d).step();
  result.resolution = half;

  auto box_too_wide = [&] {
    return std::any_of(half.begin(), half.end(), [&](double h) { return 2.0 * h >= tolerance; });
  };

  for (int pass = 0; pass < kMaxRefinePasses && box_too_wide(); ++pass) {
    std::vector<Axis> axes;
    for (std::size_t d = 0; d < dims; ++d) {
      const Axis& bound = domain.axis(d);
      const double lo = std::max(bound.lower, result.argmax[d] - half[d]);
      const double hi = std::min(bound.upper, result.argmax[d] + half[d]);
      axes.push_back({lo, hi, kRefinePoints});
    }
    // A box collapsed against an edge: keep that coordinate fixed.
    for (std::size_t d = 0; d < dims; ++d) {
      if (!(axes[d].lower < axes[d].upper)) axes[d] = {result.argmax[d], result.argmax[d], 1};
    }

    std::vector<Point> points;
    std::size_t total = 1;
    for (const Axis& a : axes) total *= static_cast<std::size_t>(a.steps);
    points.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
      Point p(dims);
      std::size_t index = i;
      for (std::size_t d = dims; d-- > 0;) {
        const auto steps = static_cast<std::size_t>(axes[d].steps);
        p[d] = steps == 1 ? axes[d].lower : axes[d].coordinate(static_cast<int>(index % steps));
        index /= steps;
      }
      points.push_back(std::move(p));
    }

    const Evaluated eval = evaluate_all(objective, points, options);
    result.evaluations += points.size();
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (eval.errors[i].empty() && eval.values[i] > result.value) {
        result.value = eval.values[i];
        result.argmax = points[i];
      }
    }
    for (std::size_t d = 0; d < dims; ++d) {
      result.resolution[d] = axes[d].steps > 1 ? axes[d].step() : 0.0;
      half[d] *= kShrinkFactor;
    }
    result.history.push_back(result.value);
  }
  result.at_boundary = near_edge(domain, result.argmax, result.resolution);
  return result;
}

MaxResult maximize(const Objective& objective, const ScanDomain& domain, double tolerance,
                   const ScanOptions& options) {
  const SampleTable coarse = grid_scan(objective, domain, options);
  MaxResult result = refine_max(objective, domain, coarse.best().coords, tolerance, options);
  result.evaluations += coarse.samples.size() + coarse.excluded.size();
  result.at_boundary = near_edge(domain, result.argmax, result.resolution);
  return result;
}

Objective kaon_objective(const KaonParams& params) {
  return [params](std::span<const double> x) { return kaon::lgi_c_equal_spacing(params, x[0], x[1]).c; };
}

KaonMax maximize_kaon(const KaonParams& params, const KaonSearch& search, const ScanOptions& options) {
  KaonMax out;
  if (params.cp_enabled()) {
    const auto domain = ScanDomain::make({search.t1, search.dt});
    out.result = maximize(kaon_objective(params), domain, search.tolerance, options);
    out.t1 = out.result.argmax[0];
    out.dt = out.result.argmax[1];
  } else {
    // Without CP violation C depends on dt only; t1 is pinned to the lower bound.
    const double t1 = search.t1.lower;
    const Objective objective = [params, t1](std::span<const double> x) {
      return kaon::lgi_c_equal_spacing(params, t1, x[0]).c;
    };
    out.result = maximize(objective, ScanDomain::make({search.dt}), search.tolerance, options);
    out.dt = out.result.argmax[0];
  }
  out.c = out.result.value;
  return out;
}

NeutrinoMax maximize_neutrino(const NeutrinoParams& params, const NeutrinoSearch& search,
                              const ScanOptions& options) {
  const Objective objective = [params](std::span<const double> x) { return neutrino::lgi_c(params, x[0]).c_value; };
  NeutrinoMax out;
  out.result = maximize(objective, ScanDomain::make({search.l_over_e}), search.tolerance, options);
  out.l_over_e = out.result.argmax[0];
  out.phase = neutrino_phase(params, out.l_over_e);
  out.c = out.result.value;
  return out;
}

namespace {

template <typename Evaluate>
EqualSpacingReport sample_quads(const QuadSampling& sampling, LgiEvaluation equal_max, Evaluate&& evaluate) {
  if (sampling.trials == 0) throw ParameterError("quad sampling needs at least one trial");
  EqualSpacingReport report{equal_max, equal_max, equal_max};
  report.trials = sampling.trials;
  report.sampled_max.c = -std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(sampling.seed);
  std::uniform_real_distribution<double> start(0.0, sampling.t1_max);
  std::uniform_real_distribution<double> gap(0.0, sampling.gap_max);
  for (std::size_t i = 0; i < sampling.trials; ++i) {
    const double t1 = start(rng);
    double g[3] = {gap(rng), gap(rng), gap(rng)};
    if (sampling.degenerate_every != 0 && i % sampling.degenerate_every == 0) {
      g[0] = g[1] = g[2] = 0.0;
      ++report.degenerate_samples;
    }
    try {
      const LgiEvaluation e = evaluate(TimeQuad::from_gaps(t1, g[0], g[1], g[2]));
      if (e.c > report.sampled_max.c) report.sampled_max = e;
    } catch (const ConditioningError&) {
      ++report.excluded_samples;
    }
  }

  // Local search over unequal gaps from both the best sample and the equal-spacing optimum.
  const auto domain = ScanDomain::make({{0.0, sampling.t1_max, 41},
                                        {0.0, sampling.gap_max, 41},
                                        {0.0, sampling.gap_max, 41},
                                        {0.0, sampling.gap_max, 41}});
  const Objective objective = [&evaluate](std::span<const double> x) {
    return evaluate(TimeQuad::from_gaps(x[0], x[1], x[2], x[3])).c;
  };
  report.refined_max = report.sampled_max;
  for (const LgiEvaluation& start_quad : {report.sampled_max, report.equal_spacing_max}) {
    Point seed{start_quad.quad.t1(), start_quad.quad.gap(0), start_quad.quad.gap(1), start_quad.quad.gap(2)};
    for (std::size_t d = 0; d < seed.size(); ++d) {
      seed[d] = std::clamp(seed[d], domain.axis(d).lower, domain.axis(d).upper);
    }
    const MaxResult r = refine_max(objective, domain, seed, sampling.tolerance);
    if (r.value > report.refined_max.c) {
      report.refined_max = evaluate(TimeQuad::from_gaps(r.argmax[0], r.argmax[1], r.argmax[2], r.argmax[3]));
    }
  }
  return report;
}

}  // namespace

EqualSpacingReport equal_spacing_optimality(const KaonParams& params, const QuadSampling& sampling,
                                            const KaonSearch& search) {
  const KaonMax best = maximize_kaon(params, search);
  const LgiEvaluation equal_max = kaon::lgi_c_equal_spacing(params, best.t1.value_or(search.t1.lower), best.dt);
  return sample_quads(sampling, equal_max, [&](const TimeQuad& q) { return kaon::lgi_c(params, q); });
}

EqualSpacingReport equal_spacing_optimality(const NeutrinoParams& params, const QuadSampling& sampling,
                                            const NeutrinoSearch& search) {
  const NeutrinoMax best = maximize_neutrino(params, search);
  const LgiEvaluation equal_max = neutrino::lgi_c(params, TimeQuad::equal_spacing(0.0, best.l_over_e));
  return sample_quads(sampling, equal_max, [&](const TimeQuad& q) { return neutrino::lgi_c(params, q); });
}

CpEnhancement cp_enhancement(const KaonParams& params_on, const KaonParams& params_off, const KaonSearch& search) {
  if (params_on.tau_s() != params_off.tau_s() || params_on.tau_l() != params_off.tau_l() ||
      params_on.delta_m_mev() != params_off.delta_m_mev()) {
    throw ParameterError("CP enhancement compares parameter sets that differ only in CP violation");
  }
  if (params_off.cp_enabled() && params_off.eps_abs() != 0.0) {
    throw ParameterError("CP enhancement reference set must have CP violation switched off");
  }
  if (search.tolerance > 1e-6) throw ParameterError("CP enhancement requires a refinement tolerance of 1e-6 or finer");
  CpEnhancement out{maximize_kaon(params_on, search), maximize_kaon(params_off, search)};
  out.difference = out.cp_on.c - out.cp_off.c;
  return out;
}

}  // namespace lgi::scan
