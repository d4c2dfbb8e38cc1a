/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

// Unit system: times in ps, energies and angular frequencies in ps^-1
// (hbar = 1). Kelvin appears only at the I/O boundary; these helpers do
// the conversion.

namespace qdt {
namespace constants {

// CODATA 2018 values.
inline constexpr double k_boltzmann_J_per_K = 1.380649e-23;
inline constexpr double hbar_J_s = 1.054571817e-34;
inline constexpr double speed_of_light_m_per_s = 2.99792458e8;
inline constexpr double vacuum_permittivity_F_per_m = 8.8541878128e-12;

// 1 Debye = 1e-21 / c  C m.
inline constexpr double debye_C_m = 1.0e-21 / speed_of_light_m_per_s;

// k_B / hbar in ps^-1 per kelvin (~0.13092).
inline constexpr double kb_over_hbar_ps_inv_per_K =
    k_boltzmann_J_per_K / hbar_J_s * 1.0e-12;

// hbar in meV ps (~0.65821); converts ps^-1 energies to meV.
inline constexpr double hbar_meV_ps = hbar_J_s / 1.602176634e-19 * 1.0e15;

// Converts a natural-unit power (ps^-2, i.e. energy ps^-1 per ps) to watts.
inline constexpr double ps_inv2_to_watt = hbar_J_s * 1.0e24;

}  // namespace constants

/// k_B T / hbar in ps^-1 for a temperature in kelvin.
constexpr double kelvin_to_angular_rate(double kelvin) {
  return kelvin * constants::kb_over_hbar_ps_inv_per_K;
}

/// Inverse of kelvin_to_angular_rate.
constexpr double angular_rate_to_kelvin(double rate) {
  return rate / constants::kb_over_hbar_ps_inv_per_K;
}

}  // namespace qdt
