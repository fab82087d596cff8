#include "lgi/oracle.hpp"

#include <cmath>

#include "lgi/constants.hpp"
#include "lgi/errors.hpp"

namespace lgi::oracle {

namespace {

constexpr double kInvertibilityFloor = 1e-12;
constexpr Complex kI{0.0, 1.0};

void require_time(double t) {
  if (!std::isfinite(t) || t < 0.0) throw ParameterError("evolution time must be finite and non-negative");
}

}  // namespace

StateVector StateVector::basis(Outcome o) {
  StateVector s;
  s.amp[static_cast<std::size_t>(o)] = 1.0;
  return s;
}

double StateVector::norm2() const { return std::norm(amp[0]) + std::norm(amp[1]); }

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  Matrix2 out{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return out;
}

Complex determinant(const Matrix2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

Matrix2 inverse(const Matrix2& m) {
  const Complex det = determinant(m);
  if (!(std::abs(det) > kInvertibilityFloor)) throw ParameterError("mixing matrix is singular");
  return Matrix2{{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

TwoStateModel TwoStateModel::make(const Matrix2& mixing, std::array<Complex, 2> eigenvalues, StateVector initial) {
  for (const auto& ev : eigenvalues) {
    if (!std::isfinite(ev.real()) || !std::isfinite(ev.imag())) throw ParameterError("eigenvalues must be finite");
    if (ev.imag() > 0.0) throw ParameterError("eigenvalue with positive imaginary part would grow in time");
  }
  return TwoStateModel(mixing, inverse(mixing), eigenvalues, initial);
}

Complex TwoStateModel::eigenstate_overlap(std::size_t i, std::size_t j) const {
  return std::conj(mixing_[0][i]) * mixing_[0][j] + std::conj(mixing_[1][i]) * mixing_[1][j];
}

TwoStateModel make_kaon_model(const KaonParams& params) { return make_kaon_model(params, params.epsilon()); }

TwoStateModel make_kaon_model(const KaonParams& params, Complex epsilon) {
  const double norm = std::sqrt(2.0 * (1.0 + std::norm(epsilon)));
  const Complex p = (1.0 + epsilon) / norm;
  const Complex q = (1.0 - epsilon) / norm;
  // |K_L> = p|K0> + q|K0bar>,  |K_S> = p|K0> - q|K0bar>
  const Matrix2 mixing{{{p, p}, {q, -q}}};

  // m_S = 0 reference; widths and mass difference in units of 1/tau_S.
  const double tau_s = params.tau_s();
  const double mass_l = params.delta_m_mev() * tau_s / constants::hbar_mev_s;
  const double width_l = tau_s / params.tau_l();
  const double width_s = 1.0;
  const std::array<Complex, 2> eigenvalues{Complex{mass_l, -0.5 * width_l}, Complex{0.0, -0.5 * width_s}};
  return TwoStateModel::make(mixing, eigenvalues, StateVector::basis(Outcome::Plus));
}

TwoStateModel make_neutrino_model(const NeutrinoParams& params) {
  const double c = std::cos(params.theta_rad());
  const double s = std::sin(params.theta_rad());
  // nu_1 = cos(theta) nu_mu - sin(theta) nu_e,  nu_2 = sin(theta) nu_mu + cos(theta) nu_e
  const Matrix2 mixing{{{-s, c}, {c, s}}};
  // Energy splitting per km/MeV: E2 - E1 = dm^2 c^4 / (2 hbar c E) per unit L/E.
  const double mev_per_km = 1.0e-6 * 1.0e-6 * constants::m_per_km * constants::fm_per_m;
  const double splitting = params.delta_m2_ev2() * mev_per_km / (2.0 * constants::hbar_c_mev_fm);
  return TwoStateModel::make(mixing, {Complex{0.0, 0.0}, Complex{splitting, 0.0}},
                             StateVector::basis(Outcome::Plus));
}

StateVector evolve(const TwoStateModel& model, const StateVector& state, double t) {
  require_time(t);
  const auto& m = model.mixing();
  const auto& inv = model.mixing_inverse();
  const auto& ev = model.eigenvalues();

  // Eigen-coefficients, propagated phases, back to the measurement basis.
  std::array<Complex, 2> coeff{};
  for (std::size_t k = 0; k < 2; ++k) {
    coeff[k] = (inv[k][0] * state.amp[0] + inv[k][1] * state.amp[1]) * std::exp(-kI * ev[k] * t);
  }
  StateVector out;
  for (std::size_t i = 0; i < 2; ++i) out.amp[i] = m[i][0] * coeff[0] + m[i][1] * coeff[1];
  return out;
}

Collapse collapse(const StateVector& state, Outcome outcome) {
  return {std::norm(state[outcome]), StateVector::basis(outcome)};
}

double oracle_joint(const TwoStateModel& model, Outcome a, Outcome b, double t1, double t2) {
  require_time(t1);
  require_time(t2);
  if (t2 < t1) throw ParameterError("oracle joint requires t1 <= t2");
  const Collapse first = collapse(evolve(model, model.initial_state(), t1), a);
  const Collapse second = collapse(evolve(model, first.state, t2 - t1), b);
  return first.probability * second.probability;
}

double oracle_correlator(const TwoStateModel& model, double t_a, double t_b) {
  double numerator = 0.0;
  double denominator = 0.0;
  for (Outcome a : {Outcome::Plus, Outcome::Minus}) {
    for (Outcome b : {Outcome::Plus, Outcome::Minus}) {
      const double p = oracle_joint(model, a, b, t_a, t_b);
      numerator += dichotomic(a) * dichotomic(b) * p;
      denominator += p;
    }
  }
  if (!(denominator > 0.0)) throw ConditioningError("oracle correlator: zero survival probability");
  return numerator / denominator;
}

}  // namespace lgi::oracle
