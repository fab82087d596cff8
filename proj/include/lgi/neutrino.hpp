#pragma once

#include "lgi/lgi.hpp"
#include "lgi/params.hpp"

// Two-flavor (nu_e, nu_mu) vacuum oscillation. The canonical variable is L/E in
// km/MeV; the beam is a pure nu_e at L = 0.
namespace lgi::neutrino {

enum class Flavor { NuE, NuMu };

constexpr int dichotomic(Flavor f) { return f == Flavor::NuE ? +1 : -1; }

struct NeutrinoLgiPoint {
  double l_over_e = 0.0;  // km/MeV
  double phase = 0.0;     // rad
  double c_value = 0.0;
};

struct AnalyticMax {
  double c_max = 0.0;
  double phase_star = 0.0;  // first maximiser, pi/8
  double period = 0.0;      // period of C in the phase, pi
};

// flip = true: P(nu_e -> nu_mu); flip = false: survival P(nu_e -> nu_e).
double transition_prob(const NeutrinoParams& params, bool flip, double l_over_e);

// Same, from a phase directly.
double transition_prob_at_phase(const NeutrinoParams& params, bool flip, double phase);

// P(from -> to) over a separation; symmetric in the flavors.
double single_prob(const NeutrinoParams& params, Flavor from, Flavor to, double l_over_e);

// Measurements at l1 <= l2 finding a then b, for an initial nu_e.
double joint_prob(const NeutrinoParams& params, Flavor a, Flavor b, double l1, double l2);

// 1 - 2 sin^2(2 theta) sin^2(phi(delta)).
double correlator(const NeutrinoParams& params, double delta_loe);

// Equal-spacing C evaluated in closed form.
NeutrinoLgiPoint lgi_c(const NeutrinoParams& params, double delta_loe);

// Same C composed as 3 c(delta) - c(3 delta) from the two-time correlator.
double lgi_c_from_correlators(const NeutrinoParams& params, double delta_loe);

// C as a function of the phase alone: 2 - 2 sin^2(2 theta) [3 sin^2 phi - sin^2 3phi].
double lgi_c_at_phase(const NeutrinoParams& params, double phase);

// General quad in L/E units.
LgiEvaluation lgi_c(const NeutrinoParams& params, const TimeQuad& quad);

AnalyticMax analytic_max(const NeutrinoParams& params);

}  // namespace lgi::neutrino
