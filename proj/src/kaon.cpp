#include "lgi/kaon.hpp"

#include <cmath>
#include <sstream>

#include "lgi/errors.hpp"

namespace lgi::kaon {

namespace {

struct Rates {
  double gamma_s;
  double gamma_l;
  double gamma;
  double omega;  // dm * tau_S / hbar
  double eps2;   // |eps|^2
  double eps_re;

  explicit Rates(const KaonParams& p)
      : gamma_s(p.gamma_s()),
        gamma_l(p.gamma_l()),
        gamma(p.gamma()),
        omega(kaon_phase_per_tau_s(p)),
        eps2(p.eps_abs() * p.eps_abs()),
        eps_re(p.eps_re()) {}

  // e^{-g_L t} + e^{-g_S t}
  double decay_sum(double t) const { return std::exp(-gamma_l * t) + std::exp(-gamma_s * t); }
  // 2 e^{-g t} cos(dm t)
  double interference(double t) const { return 2.0 * std::exp(-gamma * t) * std::cos(omega * t); }

  // |1 - eps|^2 / |1 + eps|^2
  double flip_ratio() const { return (1.0 - 2.0 * eps_re + eps2) / (1.0 + 2.0 * eps_re + eps2); }
};

void require_time(double t, const char* what) {
  if (!std::isfinite(t) || t < 0.0) throw ParameterError(std::string(what) + " must be finite and non-negative");
}

double prob(const Rates& r, Strangeness from, Strangeness to, double t) {
  const double a = r.decay_sum(t);
  const double b = r.interference(t);
  if (from == to) return 0.25 * (a + b);
  const double ratio = r.flip_ratio();
  // K0 -> K0bar carries |q/p|^2, the reverse leg its reciprocal.
  const double prefactor = from == Strangeness::K0 ? ratio : 1.0 / ratio;
  return 0.25 * prefactor * (a - b);
}

double joint(const Rates& r, Strangeness a, Strangeness b, double start, double separation) {
  return prob(r, Strangeness::K0, a, start) * prob(r, a, b, separation);
}

}  // namespace

double single_prob(const KaonParams& params, Strangeness from, Strangeness to, double t) {
  require_time(t, "t");
  return prob(Rates(params), from, to, t);
}

double joint_prob(const KaonParams& params, Strangeness a, Strangeness b, double t1, double t2) {
  require_time(t1, "t1");
  require_time(t2, "t2");
  if (t2 < t1) throw ParameterError("joint probability requires t1 <= t2");
  return joint(Rates(params), a, b, t1, t2 - t1);
}

KaonCorrelator correlator_over(const KaonParams& params, double start, double separation) {
  require_time(start, "start time");
  require_time(separation, "separation");
  const double end = start + separation;
  if (end > kSupportedWindow) {
    std::ostringstream os;
    os << "correlator time " << end << " tau_S lies outside the supported window [0, " << kSupportedWindow << "]";
    throw ConditioningError(os.str());
  }

  using enum Strangeness;
  const Rates r(params);
  const double pp = joint(r, K0, K0, start, separation);
  const double mm = joint(r, K0bar, K0bar, start, separation);
  const double pm = joint(r, K0, K0bar, start, separation);
  const double mp = joint(r, K0bar, K0, start, separation);

  KaonCorrelator out;
  out.start_time = start;
  out.end_time = end;
  out.numerator = pp + mm - pm - mp;
  out.denominator = pp + mm + pm + mp;
  if (!(out.denominator >= kDenominatorFloor)) {
    std::ostringstream os;
    os << "survival denominator " << out.denominator << " at (" << start << ", " << end
       << ") tau_S is below the positivity floor";
    throw ConditioningError(os.str());
  }
  out.value = out.numerator / out.denominator;
  return out;
}

KaonCorrelator correlator(const KaonParams& params, double t_a, double t_b) {
  require_time(t_a, "t_a");
  require_time(t_b, "t_b");
  if (t_b < t_a) throw ParameterError("correlator requires t_a <= t_b");
  return correlator_over(params, t_a, t_b - t_a);
}

double correlator_closed_form(const KaonParams& params, double t_a, double t_b) {
  require_time(t_a, "t_a");
  if (!(t_b >= t_a)) throw ParameterError("correlator requires t_a <= t_b");
  const Rates r(params);
  const double sep = t_b - t_a;
  const double norm = 1.0 + r.eps2;
  const double first = r.decay_sum(t_a);
  const double second = r.decay_sum(sep);
  const double osc_first = std::cos(r.omega * t_a);
  const double osc_sep = std::cos(r.omega * sep);

  const double numerator = 0.5 * norm * first * std::exp(-r.gamma * sep) * osc_sep +
                           r.eps_re * std::exp(-r.gamma * t_a) * second * osc_first;
  const double denominator =
      0.25 * norm * first * second + 2.0 * r.eps_re * std::exp(-r.gamma * t_b) * osc_first * osc_sep;
  if (!(denominator >= kDenominatorFloor)) throw ConditioningError("closed-form correlator denominator underflow");
  return numerator / denominator;
}

LgiEvaluation lgi_c(const KaonParams& params, const TimeQuad& quad) {
  return evaluate_lgi(quad, [&](double start, double sep) { return correlator_over(params, start, sep).value; });
}

LgiEvaluation lgi_c_equal_spacing(const KaonParams& params, double t1, double dt) {
  return lgi_c(params, TimeQuad::equal_spacing(t1, dt));
}

}  // namespace lgi::kaon
