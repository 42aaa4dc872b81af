#pragma once

#include <numbers>

namespace rif::units {

// Internal unit system: c = hbar = 1, angular frequencies measured in units of
// 2*pi*c / 1um. Lengths are then measured in 1um / 2*pi, times in 1 / omega_unit.
// All physics code works in these units; SI appears only at I/O boundaries.

inline constexpr double c_si = 299792458.0;        // m/s
inline constexpr double ref_wavelength_si = 1e-6;  // m
inline constexpr double omega_unit_si = 2.0 * std::numbers::pi * c_si / ref_wavelength_si;
inline constexpr double length_unit_si = ref_wavelength_si / (2.0 * std::numbers::pi);
inline constexpr double time_unit_si = 1.0 / omega_unit_si;

inline double omega_to_internal(double omega_si) { return omega_si / omega_unit_si; }
inline double omega_to_si(double omega) { return omega * omega_unit_si; }
inline double wavenumber_to_internal(double k_si) { return k_si * length_unit_si; }
inline double wavenumber_to_si(double k) { return k / length_unit_si; }
inline double time_to_internal(double t_si) { return t_si / time_unit_si; }
inline double time_to_si(double t) { return t * time_unit_si; }

// Vacuum wavelength (m) <-> internal angular frequency of light at that wavelength.
inline double wavelength_to_omega(double lambda_si) { return ref_wavelength_si / lambda_si; }
inline double omega_to_wavelength(double omega) { return ref_wavelength_si / omega; }

}  // namespace rif::units
