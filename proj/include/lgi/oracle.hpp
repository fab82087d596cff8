#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "lgi/params.hpp"

// Brute-force two-state evolution with projective collapse. Shares no formulas
// with the closed-form models: everything is 2x2 complex linear algebra in the
// measurement basis, so it serves as an independent oracle for them.
namespace lgi::oracle {

using Complex = std::complex<double>;
// Row-major 2x2 complex matrix.
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

// Measurement-basis index. Outcome 0 carries Q = +1 (K0, nu_e), outcome 1 Q = -1.
enum class Outcome : std::size_t { Plus = 0, Minus = 1 };

constexpr int dichotomic(Outcome o) { return o == Outcome::Plus ? +1 : -1; }

struct StateVector {
  std::array<Complex, 2> amp{};

  static StateVector basis(Outcome o);
  Complex operator[](Outcome o) const { return amp[static_cast<std::size_t>(o)]; }
  double norm2() const;
};

Matrix2 multiply(const Matrix2& a, const Matrix2& b);
Matrix2 inverse(const Matrix2& m);
Complex determinant(const Matrix2& m);

/// Columns of `mixing` are the evolution eigenstates written in the measurement
/// basis; eigenvalues are E - i Gamma/2 in the caller's inverse time unit.
class TwoStateModel {
 public:
  static TwoStateModel make(const Matrix2& mixing, std::array<Complex, 2> eigenvalues, StateVector initial);

  const Matrix2& mixing() const { return mixing_; }
  const Matrix2& mixing_inverse() const { return inverse_; }
  const std::array<Complex, 2>& eigenvalues() const { return eigenvalues_; }
  const StateVector& initial_state() const { return initial_; }

  // <column i | column j>.
  Complex eigenstate_overlap(std::size_t i = 0, std::size_t j = 1) const;

 private:
  TwoStateModel(const Matrix2& m, const Matrix2& inv, std::array<Complex, 2> ev, StateVector init)
      : mixing_(m), inverse_(inv), eigenvalues_(ev), initial_(init) {}

  Matrix2 mixing_;
  Matrix2 inverse_;
  std::array<Complex, 2> eigenvalues_;
  StateVector initial_;
};

// Kaon model in tau_S units: columns K_L, K_S, eigenvalues (dm tau_S/hbar - i g_L/2, -i/2),
// initial pure K0. The first overload takes Im(eps) >= 0 from the parameters.
TwoStateModel make_kaon_model(const KaonParams& params);
TwoStateModel make_kaon_model(const KaonParams& params, Complex epsilon);

// Neutrino model in L/E units (km/MeV): columns nu_1, nu_2 in the (nu_e, nu_mu)
// basis, real eigenvalues, initial pure nu_e.
TwoStateModel make_neutrino_model(const NeutrinoParams& params);

StateVector evolve(const TwoStateModel& model, const StateVector& state, double t);

struct Collapse {
  double probability = 0.0;
  StateVector state;
};

Collapse collapse(const StateVector& state, Outcome outcome);

double oracle_joint(const TwoStateModel& model, Outcome a, Outcome b, double t1, double t2);

double oracle_correlator(const TwoStateModel& model, double t_a, double t_b);

}  // namespace lgi::oracle
