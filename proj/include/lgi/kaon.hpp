#pragma once

#include "lgi/lgi.hpp"
#include "lgi/params.hpp"

// Closed-form neutral kaon strangeness oscillation with CP violation and decay.
// All times are in units of tau_S. The beam is a pure K0 at t = 0.
namespace lgi::kaon {

enum class Strangeness { K0, K0bar };

// Dichotomic value Q: +1 for K0 (S = +1), -1 for K0bar.
constexpr int dichotomic(Strangeness s) { return s == Strangeness::K0 ? +1 : -1; }

// Largest time (in tau_S) at which correlators are evaluated.
inline constexpr double kSupportedWindow = 50.0;
// Survival denominators below this are treated as a conditioning failure.
inline constexpr double kDenominatorFloor = 1e-300;

struct KaonCorrelator {
  double start_time = 0.0;
  double end_time = 0.0;
  double value = 0.0;
  double numerator = 0.0;    // P(K0,K0) + P(K0bar,K0bar) - P(K0,K0bar) - P(K0bar,K0)
  double denominator = 0.0;  // sum of the four joints
};

// Probability of finding `to` at time t given a pure `from` state at 0.
double single_prob(const KaonParams& params, Strangeness from, Strangeness to, double t);

// Probability that measurements at t1 and t2 find a and then b (initial K0 beam).
double joint_prob(const KaonParams& params, Strangeness a, Strangeness b, double t1, double t2);

// <Q(t_a) Q(t_b)> conditioned on both measurements finding an undecayed kaon.
KaonCorrelator correlator(const KaonParams& params, double t_a, double t_b);

// Same quantity from a start time and a separation, avoiding t_b - t_a round-off.
KaonCorrelator correlator_over(const KaonParams& params, double start, double separation);

// Direct transcription of the simplified numerator/denominator ratio; used to
// cross-check the ratio-of-joints route.
double correlator_closed_form(const KaonParams& params, double t_a, double t_b);

LgiEvaluation lgi_c(const KaonParams& params, const TimeQuad& quad);
LgiEvaluation lgi_c_equal_spacing(const KaonParams& params, double t1, double dt);

}  // namespace lgi::kaon
