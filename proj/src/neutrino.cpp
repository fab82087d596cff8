#include "lgi/neutrino.hpp"

#include <cmath>
#include <numbers>

#include "lgi/errors.hpp"

namespace lgi::neutrino {

namespace {

double sq(double x) { return x * x; }

}  // namespace

double transition_prob_at_phase(const NeutrinoParams& params, bool flip, double phase) {
  const double p_flip = sq(std::sin(2.0 * params.theta_rad()) * std::sin(phase));
  return flip ? p_flip : 1.0 - p_flip;
}

double transition_prob(const NeutrinoParams& params, bool flip, double l_over_e) {
  return transition_prob_at_phase(params, flip, neutrino_phase(params, l_over_e));
}

double single_prob(const NeutrinoParams& params, Flavor from, Flavor to, double l_over_e) {
  return transition_prob(params, from != to, l_over_e);
}

double joint_prob(const NeutrinoParams& params, Flavor a, Flavor b, double l1, double l2) {
  if (!(l2 >= l1)) throw ParameterError("joint probability requires l1 <= l2");
  return single_prob(params, Flavor::NuE, a, l1) * single_prob(params, a, b, l2 - l1);
}

double correlator(const NeutrinoParams& params, double delta_loe) {
  const double phase = neutrino_phase(params, delta_loe);
  return 1.0 - 2.0 * params.sin2_2theta() * sq(std::sin(phase));
}

double lgi_c_at_phase(const NeutrinoParams& params, double phase) {
  return 2.0 - 2.0 * params.sin2_2theta() * (3.0 * sq(std::sin(phase)) - sq(std::sin(3.0 * phase)));
}

NeutrinoLgiPoint lgi_c(const NeutrinoParams& params, double delta_loe) {
  const double phase = neutrino_phase(params, delta_loe);
  return {delta_loe, phase, lgi_c_at_phase(params, phase)};
}

double lgi_c_from_correlators(const NeutrinoParams& params, double delta_loe) {
  return 3.0 * correlator(params, delta_loe) - correlator(params, 3.0 * delta_loe);
}

LgiEvaluation lgi_c(const NeutrinoParams& params, const TimeQuad& quad) {
  return evaluate_lgi(quad, [&](double, double sep) { return correlator(params, sep); });
}

AnalyticMax analytic_max(const NeutrinoParams& params) {
  // min over phi of 3 sin^2 phi - sin^2 3phi is 1 - sqrt2, reached at phi = pi/8.
  constexpr double depth = std::numbers::sqrt2 - 1.0;
  return {2.0 + 2.0 * depth * params.sin2_2theta(), std::numbers::pi / 8.0, std::numbers::pi};
}

}  // namespace lgi::neutrino
