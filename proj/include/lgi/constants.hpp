#pragma once

#include <numbers>

namespace lgi::constants {

// Reduced Planck constant. Single source of truth for every unit bridge.
inline constexpr double hbar_mev_s = 6.58212e-22;
inline constexpr double c_m_per_s = 2.99792458e8;

inline constexpr double mev_per_ev = 1.0e-6;
inline constexpr double fm_per_m = 1.0e15;
inline constexpr double m_per_km = 1.0e3;

// hbar*c in MeV*fm, derived (~197.327).
inline constexpr double hbar_c_mev_fm = hbar_mev_s * c_m_per_s * fm_per_m;

// Oscillation phase per (eV^2 * km/MeV): phi = coeff * dm2 * L/E = dm2 L / (4 hbar c E).
// dm2 [eV^2] -> MeV^2 via 1e-12, L [km] -> fm via 1e18.
inline constexpr double neutrino_phase_per_ev2_km_per_mev =
    (mev_per_ev * mev_per_ev) * (m_per_km * fm_per_m) / (4.0 * hbar_c_mev_fm);

// Same coefficient in the customary km/GeV convention (the familiar 1.267).
inline constexpr double neutrino_phase_per_ev2_km_per_gev = neutrino_phase_per_ev2_km_per_mev * 1.0e-3;

inline constexpr double tsirelson_bound = 2.0 * std::numbers::sqrt2;
inline constexpr double classical_lgi_bound = 2.0;

}  // namespace lgi::constants
