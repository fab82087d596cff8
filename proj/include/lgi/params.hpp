#pragma once

#include <array>
#include <complex>

namespace lgi {

/// Neutral kaon parameters. Lifetimes in seconds, mass difference in MeV.
///
/// Internally every kaon closed form runs in units of the short lifetime, so
/// the dimensionless rates gamma_s() == 1 and gamma_l() == tau_s / tau_l.
class KaonParams {
 public:
  static KaonParams make(double tau_s, double tau_l, double delta_m_mev, double eps_abs, double eps_re,
                         bool cp_enabled);

  // tau_S = 0.8958e-10 s, tau_L = 0.5084e-7 s, dm = 3.843e-12 MeV, |eps| = 2.232e-3, Re eps = 1.596e-3.
  static KaonParams reference(bool cp_enabled = true);

  double tau_s() const { return tau_s_; }
  double tau_l() const { return tau_l_; }
  double delta_m_mev() const { return delta_m_; }
  double eps_abs() const { return eps_abs_; }
  double eps_re() const { return eps_re_; }
  bool cp_enabled() const { return cp_enabled_; }

  // Widths in MeV (hbar / tau).
  double gamma_s_mev() const;
  double gamma_l_mev() const;
  double gamma_mev() const;

  // Widths in units of 1/tau_S.
  double gamma_s() const { return 1.0; }
  double gamma_l() const { return tau_s_ / tau_l_; }
  double gamma() const { return 0.5 * (gamma_s() + gamma_l()); }

  // Complex CP parameter; Im(eps) = +sqrt(|eps|^2 - Re(eps)^2).
  std::complex<double> epsilon() const;

  // Same lifetimes and mass difference, |eps| replaced and Re(eps) rescaled so
  // that Re(eps)/|eps| is unchanged.
  KaonParams with_scaled_eps_abs(double eps_abs) const;

  bool operator==(const KaonParams&) const = default;

 private:
  KaonParams(double tau_s, double tau_l, double delta_m, double eps_abs, double eps_re, bool cp)
      : tau_s_(tau_s), tau_l_(tau_l), delta_m_(delta_m), eps_abs_(eps_abs), eps_re_(eps_re), cp_enabled_(cp) {}

  double tau_s_;
  double tau_l_;
  double delta_m_;
  double eps_abs_;
  double eps_re_;
  bool cp_enabled_;
};

/// Two-flavor neutrino parameters: dm^2 c^4 in eV^2, mixing angle in radians,
/// mean beam energy in MeV.
class NeutrinoParams {
 public:
  static NeutrinoParams make(double delta_m2_ev2, double theta_rad, double energy_mev);
  static NeutrinoParams from_tan2_theta(double delta_m2_ev2, double tan2_theta, double energy_mev);

  // KamLAND-like: dm^2 = 7.58e-5 eV^2, tan^2(theta) = 0.56.
  static NeutrinoParams reference();

  double delta_m2_ev2() const { return delta_m2_; }
  double theta_rad() const { return theta_; }
  double energy_mev() const { return energy_; }
  double tan2_theta() const;
  double sin2_2theta() const;

  NeutrinoParams with_theta(double theta_rad) const { return make(delta_m2_, theta_rad, energy_); }

  bool operator==(const NeutrinoParams&) const = default;

 private:
  NeutrinoParams(double dm2, double theta, double energy) : delta_m2_(dm2), theta_(theta), energy_(energy) {}

  double delta_m2_;
  double theta_;
  double energy_;
};

// Mean energy used to convert between propagation time and L/E when no energy is given.
inline constexpr double kDefaultNeutrinoEnergyMev = 4.0;

/// Four ordered measurement times, stored as a start time plus three gaps so that
/// equal spacing is exact. Units are the caller's (tau_S for kaons, km/MeV for neutrinos).
class TimeQuad {
 public:
  static TimeQuad from_times(double t1, double t2, double t3, double t4);
  static TimeQuad from_gaps(double t1, double gap12, double gap23, double gap34);
  static TimeQuad equal_spacing(double t1, double dt);

  double t1() const { return start_; }
  double t2() const { return start_ + gaps_[0]; }
  double t3() const { return start_ + gaps_[0] + gaps_[1]; }
  double t4() const { return start_ + gaps_[0] + gaps_[1] + gaps_[2]; }
  std::array<double, 4> times() const { return {t1(), t2(), t3(), t4()}; }

  // gap(0) = t2 - t1, gap(1) = t3 - t2, gap(2) = t4 - t3.
  double gap(int k) const { return gaps_.at(static_cast<std::size_t>(k)); }
  double span() const { return gaps_[0] + gaps_[1] + gaps_[2]; }

 private:
  TimeQuad(double start, std::array<double, 3> gaps) : start_(start), gaps_(gaps) {}

  double start_;
  std::array<double, 3> gaps_;
};

// Oscillation phase accumulated per short lifetime, dm * tau_S / hbar.
double kaon_phase_per_tau_s(const KaonParams& params);

// phi = dm^2 c^4 L / (4 hbar c E) for L/E given in km/MeV.
double neutrino_phase(const NeutrinoParams& params, double l_over_e_km_per_mev);

// Same phase evaluated from a baseline in km and the beam energy, straight from hbar and c.
double neutrino_phase_at_baseline(const NeutrinoParams& params, double baseline_km);

// L/E in km/MeV travelled in `seconds` at the speed of light.
double l_over_e_from_time(const NeutrinoParams& params, double seconds);

// L/E at which the phase equals `phase_rad`.
double l_over_e_for_phase(const NeutrinoParams& params, double phase_rad);

}  // namespace lgi
