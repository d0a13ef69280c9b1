#pragma once

#include <array>
#include <functional>
#include <vector>

#include "blochwave/interband.hpp"
#include "blochwave/ode.hpp"
#include "blochwave/pulse.hpp"

namespace blochwave {

struct TwoLevelSystem {
  double E1 = 0.0;   // eV
  double E2 = 0.0;   // eV, E2 > E1
  double d12 = 0.0;  // dipole length, A

  double transition_energy() const { return E2 - E1; }
  void validate() const;
};

// Rotating-wave analytics for a monochromatic drive of amplitude F0.
// Two inversion closures are exposed: the resonant-contrast form
// w = -cos(Omega_R t) and the full RWA solution with the detuning contrast
// factor (w_R / Omega_R)^2, which reduces to the former on resonance.
struct RwaSuite {
  double hbar_omega_rabi = 0.0;   // eV, F0 d12
  double hbar_detuning = 0.0;     // eV, (E2 - E1) - hbar w0
  double hbar_Omega_R = 0.0;      // eV, generalized sqrt(wR^2 + D^2)
  std::array<double, 2> dressed_1{};  // eV, level 1 doublet
  std::array<double, 2> dressed_2{};  // eV, level 2 doublet
  std::array<double, 3> mollow{};     // eV: w0 - Omega_R, w0, w0 + Omega_R
  std::function<double(double)> inversion_resonant_contrast;  // w(t), t from drive start
  std::function<double(double)> inversion_rwa;                // full RWA w(t)
};

RwaSuite rwa_suite(const TwoLevelSystem& sys, double F0, double hbar_omega0);

/// Resonant RWA inversion for an arbitrary envelope: w(t) = -cos(theta(t))
/// with theta the accumulated envelope pulse area.
double rwa_envelope_inversion(const TwoLevelSystem& sys, const PulseSpec& pulse, double t);

struct BlochVector {
  double t = 0.0;
  double u = 0.0, v = 0.0, w = 0.0;
};

/// Exact two-level evolution without the rotating-wave approximation; the
/// counterrotating terms are retained. Interaction-picture amplitudes;
/// u = 2 Re(a1* a2), v = 2 Im(a2* a1), w = |a2|^2 - |a1|^2.
std::vector<BlochVector> solve_two_level(const TwoLevelSystem& sys, const PulseSpec& pulse,
                                         const OdeTolerances& tol = {}, int n_samples = 512);

struct GeneralizedArea {
  std::vector<double> t;         // fs
  std::vector<double> Omega_R;   // rad/fs
  double area = 0.0;             // rad
  double gamma_RP = 0.0;         // hbar wR(peak) / Up
  bool area_counts = false;      // gamma_RP > 1
};

/// Generalized Rabi frequency for a periodic potential,
/// Omega_R(t) = sqrt(wR(t)^2 + Delta(K(t))^2), wR(t) from the pulse envelope
/// amplitude and |xi_cv(K(t))|, Delta(K) = Ecv(K)/hbar - w0; area by
/// quadrature over the window.
GeneralizedArea generalized_area(const TwoBandModel& model, double k, const PulseSpec& pulse);

}  // namespace blochwave
