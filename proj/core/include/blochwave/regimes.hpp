#pragma once

#include <string>
#include <vector>

#include "blochwave/band.hpp"
#include "blochwave/material.hpp"
#include "blochwave/pulse.hpp"

namespace blochwave {

// Characteristic frequencies and the dimensionless adiabaticity parameters
// built from their ratios, plus classification labels.
struct RegimeReport {
  double N = 0.0;          // Eg / (hbar w0)
  double gamma_K = 0.0;    // sqrt(Eg / 4 Up)
  double gamma_NP = 0.0;   // Up / (hbar w0)
  double gamma_DL = 0.0;   // wB / w0
  double gamma_BH = 0.0;   // hbar wB / Eg
  double gamma_BP = 0.0;   // hbar wB / Up
  double gamma_RF0 = 0.0;  // wR / w0
  double gamma_RFg = 0.0;  // hbar wR / Eg
  double gamma_RP = 0.0;   // hbar wR / Up
  double gamma_RB = 0.0;   // wR / wB = xi_max / a
  double hbar_omegaB = 0.0;  // eV
  double hbar_omegaR = 0.0;  // eV
  double Up = 0.0;           // eV
  long long N_tilde = 1;     // multiphoton channel count
  std::vector<std::string> labels;
  bool up_is_zero = false;   // gamma_K, gamma_BP, gamma_RP are +inf sentinels
};

/// Cycle-averaged energy gain of intraband motion for the pulse's peak
/// amplitude and carrier frequency, in eV.
///  - EffectiveMass: closed form with the reduced pair mass,
///    Up = F0^2 (1 + beta^2) (hbar^2/m0) / (4 m (hbar w0)^2).
///  - TightBinding (gap dispersion eps_cv): sum_l eps_l J0(l wB/w0) - Ecv(0).
///  - KaneTwoBand: numerical cycle average of Ecv(K(t)) - Ecv(0).
double ponderomotive(const PulseSpec& pulse, const BandDispersion& band);

/// Assemble the full report for a material, drive, and band model. For a
/// TightBinding band the series must be the conduction-valence difference
/// dispersion and reproduce the material gap at k = 0.
RegimeReport adiabaticity_report(const MaterialRecord& material, const PulseSpec& pulse,
                                 const BandDispersion& band);

/// Relative residual of gamma_K = 1 / (2 gamma_RF0 sqrt(1 + beta^2)).
/// Vanishes identically when Up and xi_max are both derived from the same
/// parabolic two-band model.
double crosscheck_resonant_relation(const RegimeReport& report, double beta);

// Label conventions (documented thresholds, not physics claims):
//   excitation: gamma_K > 3 multiphoton, 1/3..3 diabatic tunneling,
//               < 1/3 adiabatic tunneling
//   Rabi:       gamma_RF0 < 1/3 ERF, 1/3..3 CWRF, > 3 Rabi tunneling
//   dynamic localization: |gamma_DL - j| < 0.05 for a J0 zero j

}  // namespace blochwave
