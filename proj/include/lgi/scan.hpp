#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lgi/lgi.hpp"
#include "lgi/params.hpp"

namespace lgi::scan {

using Point = std::vector<double>;
// Must be pure: the scanner may call it concurrently and in any order.
using Objective = std::function<double(std::span<const double>)>;

// Evenly spaced closed interval [lower, upper] with `steps` points.
struct Axis {
  double lower = 0.0;
  double upper = 1.0;
  int steps = 2;

  double step() const { return (upper - lower) / (steps - 1); }
  double coordinate(int i) const { return i == steps - 1 ? upper : lower + i * step(); }
};

class ScanDomain {
 public:
  // One to four axes; every axis finite with lower < upper and steps >= 2.
  static ScanDomain make(std::vector<Axis> axes);

  std::size_t dims() const { return axes_.size(); }
  const Axis& axis(std::size_t d) const { return axes_.at(d); }
  std::size_t size() const;
  // Row-major: the first axis varies slowest.
  Point point(std::size_t index) const;
  bool contains(std::span<const double> p) const;

 private:
  explicit ScanDomain(std::vector<Axis> axes) : axes_(std::move(axes)) {}
  std::vector<Axis> axes_;
};

struct Sample {
  Point coords;
  double value = 0.0;
};

struct ExcludedSample {
  Point coords;
  std::string reason;
};

struct SampleTable {
  std::vector<Sample> samples;  // row-major order, excluded points omitted
  std::vector<ExcludedSample> excluded;
  std::size_t argmax = 0;  // index into samples; first of equal maxima

  const Sample& best() const { return samples.at(argmax); }
};

struct ScanOptions {
  unsigned workers = 0;  // 0: hardware concurrency
};

SampleTable grid_scan(const Objective& objective, const ScanDomain& domain, const ScanOptions& options = {});

struct MaxResult {
  Point argmax;
  double value = 0.0;
  Point resolution;  // final grid step per dimension
  std::size_t evaluations = 0;
  bool at_boundary = false;
  std::vector<double> history;  // incumbent value after each refinement pass
};

inline constexpr int kRefinePoints = 11;
inline constexpr double kShrinkFactor = 0.2;

// Successive grid-shrink refinement around `seed`. The first box spans one coarse
// grid step of `domain` on each side; each pass re-grids it with 11 points per
// dimension, recentres on the best point and shrinks by 0.2, until the box is
// narrower than `tolerance` in every dimension.
MaxResult refine_max(const Objective& objective, const ScanDomain& domain, std::span<const double> seed,
                     double tolerance, const ScanOptions& options = {});

// Coarse grid scan followed by refine_max from the best grid point.
MaxResult maximize(const Objective& objective, const ScanDomain& domain, double tolerance,
                   const ScanOptions& options = {});

// ---------------------------------------------------------------------------
// Physics drivers

struct KaonSearch {
  Axis t1{0.0, 10.0, 400};
  Axis dt{0.0, 10.0, 400};
  double tolerance = 1e-7;
};

struct KaonMax {
  std::optional<double> t1;  // empty when CP is off: C does not depend on t1
  double dt = 0.0;
  double c = 0.0;
  MaxResult result;
};

// C(t1, dt) at equal spacing; two coordinates.
Objective kaon_objective(const KaonParams& params);
KaonMax maximize_kaon(const KaonParams& params, const KaonSearch& search = {}, const ScanOptions& options = {});

struct NeutrinoSearch {
  Axis l_over_e{0.0, 40.0, 4001};
  double tolerance = 1e-9;
};

struct NeutrinoMax {
  double l_over_e = 0.0;
  double phase = 0.0;
  double c = 0.0;
  MaxResult result;
};

NeutrinoMax maximize_neutrino(const NeutrinoParams& params, const NeutrinoSearch& search = {},
                                 const ScanOptions& options = {});

struct QuadSampling {
  double t1_max = 10.0;
  double gap_max = 10.0 / 3.0;
  std::size_t trials = 1000;
  std::uint64_t seed = 20130214;
  // Every n-th sample is a degenerate quad (all gaps zero).
  std::size_t degenerate_every = 100;
  double tolerance = 1e-7;
};

struct EqualSpacingReport {
  LgiEvaluation equal_spacing_max;
  LgiEvaluation sampled_max;   // best of the random general quads
  LgiEvaluation refined_max;   // local refinement over (t1, gap12, gap23, gap34)
  std::size_t trials = 0;
  std::size_t degenerate_samples = 0;
  std::size_t excluded_samples = 0;

  double general_max() const { return std::max(sampled_max.c, refined_max.c); }
  double gap() const { return general_max() - equal_spacing_max.c; }
};

EqualSpacingReport equal_spacing_optimality(const KaonParams& params, const QuadSampling& sampling = {},
                                            const KaonSearch& search = {});
EqualSpacingReport equal_spacing_optimality(const NeutrinoParams& params, const QuadSampling& sampling = {},
                                            const NeutrinoSearch& search = {});

struct CpEnhancement {
  KaonMax cp_on;
  KaonMax cp_off;
  double difference = 0.0;
};

// Requires tolerance small enough to resolve C to 1e-6.
CpEnhancement cp_enhancement(const KaonParams& params_on, const KaonParams& params_off,
                             const KaonSearch& search = {});

}  // namespace lgi::scan
