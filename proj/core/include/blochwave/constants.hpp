#pragma once

// Unit system used throughout: energies in eV, times in fs, lengths in
// Angstrom, fields in V/A, and the elementary charge e = 1, so that
// (field in V/A) * (length in A) is an energy in eV.

namespace blochwave::constants {

inline constexpr double pi = 3.14159265358979323846;

// hbar in eV*fs
inline constexpr double hbar = 0.6582119569;

// hbar^2 / m0 in eV*A^2 (m0 = free-electron mass)
inline constexpr double hbar2_over_m0 = 7.6199682;

// hbar / m0 in A^2/fs
inline constexpr double hbar_over_m0 = hbar2_over_m0 / hbar;

// free-electron mass in eV*fs^2/A^2
inline constexpr double m0 = hbar * hbar / hbar2_over_m0;

// photon energy [eV] * vacuum wavelength [nm]
inline constexpr double hc_eV_nm = 1239.8419843320026;

}  // namespace blochwave::constants
