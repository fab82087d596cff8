#include "lgi/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lgi/constants.hpp"
#include "lgi/errors.hpp"

namespace lgi {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ParameterError(message);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

KaonParams KaonParams::make(double tau_s, double tau_l, double delta_m_mev, double eps_abs, double eps_re,
                            bool cp_enabled) {
  require(finite(tau_s) && finite(tau_l) && finite(delta_m_mev) && finite(eps_abs) && finite(eps_re),
          "kaon parameters must be finite");
  require(tau_s > 0.0 && tau_l > 0.0, "kaon lifetimes must be positive");
  if (!(tau_s < tau_l)) {
    std::ostringstream os;
    os << "kaon lifetimes out of order: tau_s (" << tau_s << " s) must be shorter than tau_l (" << tau_l << " s)";
    throw ParameterError(os.str());
  }
  require(delta_m_mev >= 0.0, "kaon mass difference m_L - m_S must be non-negative");
  if (!cp_enabled) return KaonParams(tau_s, tau_l, delta_m_mev, 0.0, 0.0, false);

  require(eps_abs >= 0.0 && eps_abs < 1.0, "|eps| must lie in [0, 1)");
  if (std::abs(eps_re) > eps_abs) {
    std::ostringstream os;
    os << "|Re(eps)| = " << std::abs(eps_re) << " exceeds |eps| = " << eps_abs;
    throw ParameterError(os.str());
  }
  return KaonParams(tau_s, tau_l, delta_m_mev, eps_abs, eps_re, true);
}

KaonParams KaonParams::reference(bool cp_enabled) {
  return make(0.8958e-10, 0.5084e-7, 3.843e-12, 2.232e-3, 1.596e-3, cp_enabled);
}

double KaonParams::gamma_s_mev() const { return constants::hbar_mev_s / tau_s_; }
double KaonParams::gamma_l_mev() const { return constants::hbar_mev_s / tau_l_; }
double KaonParams::gamma_mev() const { return 0.5 * (gamma_s_mev() + gamma_l_mev()); }

std::complex<double> KaonParams::epsilon() const {
  // Clamp guards against |Re| == |eps| rounding to a tiny negative radicand.
  const double im2 = std::max(0.0, eps_abs_ * eps_abs_ - eps_re_ * eps_re_);
  return {eps_re_, std::sqrt(im2)};
}

KaonParams KaonParams::with_scaled_eps_abs(double eps_abs) const {
  if (!cp_enabled_) return *this;
  const double re = eps_abs_ > 0.0 ? eps_re_ * (eps_abs / eps_abs_) : 0.0;
  return make(tau_s_, tau_l_, delta_m_, eps_abs, re, true);
}

NeutrinoParams NeutrinoParams::make(double delta_m2_ev2, double theta_rad, double energy_mev) {
  require(finite(delta_m2_ev2) && finite(theta_rad) && finite(energy_mev), "neutrino parameters must be finite");
  require(delta_m2_ev2 > 0.0, "dm^2 must be positive");
  require(theta_rad >= 0.0 && theta_rad <= std::numbers::pi / 2.0, "mixing angle must lie in [0, pi/2]");
  require(energy_mev > 0.0, "neutrino energy must be positive");
  return NeutrinoParams(delta_m2_ev2, theta_rad, energy_mev);
}

NeutrinoParams NeutrinoParams::from_tan2_theta(double delta_m2_ev2, double tan2_theta, double energy_mev) {
  require(finite(tan2_theta) && tan2_theta >= 0.0, "tan^2(theta) must be finite and non-negative");
  return make(delta_m2_ev2, std::atan(std::sqrt(tan2_theta)), energy_mev);
}

NeutrinoParams NeutrinoParams::reference() {
  return from_tan2_theta(7.58e-5, 0.56, kDefaultNeutrinoEnergyMev);
}

double NeutrinoParams::tan2_theta() const {
  const double t = std::tan(theta_);
  return t * t;
}

double NeutrinoParams::sin2_2theta() const {
  const double s = std::sin(2.0 * theta_);
  return s * s;
}

TimeQuad TimeQuad::from_gaps(double t1, double gap12, double gap23, double gap34) {
  require(finite(t1) && finite(gap12) && finite(gap23) && finite(gap34), "measurement times must be finite");
  require(t1 >= 0.0, "t1 must be non-negative");
  require(gap12 >= 0.0 && gap23 >= 0.0 && gap34 >= 0.0, "measurement times must satisfy t1 <= t2 <= t3 <= t4");
  return TimeQuad(t1, {gap12, gap23, gap34});
}

TimeQuad TimeQuad::from_times(double t1, double t2, double t3, double t4) {
  require(finite(t1) && finite(t2) && finite(t3) && finite(t4), "measurement times must be finite");
  require(t1 <= t2 && t2 <= t3 && t3 <= t4, "measurement times must satisfy t1 <= t2 <= t3 <= t4");
  return from_gaps(t1, t2 - t1, t3 - t2, t4 - t3);
}

TimeQuad TimeQuad::equal_spacing(double t1, double dt) { return from_gaps(t1, dt, dt, dt); }

double kaon_phase_per_tau_s(const KaonParams& params) {
  return params.delta_m_mev() * params.tau_s() / constants::hbar_mev_s;
}

double neutrino_phase(const NeutrinoParams& params, double l_over_e_km_per_mev) {
  require(finite(l_over_e_km_per_mev) && l_over_e_km_per_mev >= 0.0, "L/E must be finite and non-negative");
  return constants::neutrino_phase_per_ev2_km_per_mev * params.delta_m2_ev2() * l_over_e_km_per_mev;
}

double neutrino_phase_at_baseline(const NeutrinoParams& params, double baseline_km) {
  require(finite(baseline_km) && baseline_km >= 0.0, "baseline must be finite and non-negative");
  const double dm2_mev2 = params.delta_m2_ev2() * constants::mev_per_ev * constants::mev_per_ev;
  const double hbar_c_mev_m = constants::hbar_mev_s * constants::c_m_per_s;
  const double baseline_m = baseline_km * constants::m_per_km;
  return dm2_mev2 * baseline_m / (4.0 * hbar_c_mev_m * params.energy_mev());
}

double l_over_e_from_time(const NeutrinoParams& params, double seconds) {
  require(finite(seconds) && seconds >= 0.0, "time must be finite and non-negative");
  return seconds * constants::c_m_per_s / constants::m_per_km / params.energy_mev();
}

double l_over_e_for_phase(const NeutrinoParams& params, double phase_rad) {
  require(finite(phase_rad) && phase_rad >= 0.0, "phase must be finite and non-negative");
  return phase_rad / (constants::neutrino_phase_per_ev2_km_per_mev * params.delta_m2_ev2());
}

}  // namespace lgi
