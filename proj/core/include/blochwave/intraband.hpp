#pragma once

#include <span>
#include <string>
#include <vector>

#include "blochwave/band.hpp"
#include "blochwave/pulse.hpp"

namespace blochwave {

// Field-driven single-band kinematics sampled over the pulse window.
struct TrajectoryResult {
  std::vector<double> t;   // fs
  std::vector<double> K;   // 1/A
  std::vector<double> v;   // A/fs
  std::vector<double> dx;  // A, relative displacement, dx(t_start) = 0
};

/// Group velocity from the band derivative at K(t), displacement by
/// cumulative quadrature (Simpson on an internally refined grid). The
/// parabolic variant uses the closed forms instead. Rejects fewer than
/// 16 samples per carrier cycle.
TrajectoryResult trajectory(const BandDispersion& band, double k0, const PulseSpec& pulse,
                            int samples);

/// Net displacement over one carrier period of a monochromatic drive with
/// wB/w0 = gamma_DL, for a nearest-neighbor band, in A per cycle.
double cycle_drift(const TightBinding& band, double k0, double gamma_DL,
                   double hbar_omega0 = 1.0);

/// Analytic weak-field limit of the same drift, -(eps_1 a T0 / hbar) sin(k0 a).
double weak_field_drift_scale(const TightBinding& band, double k0,
                              double hbar_omega0 = 1.0);

struct HarmonicSpectrum {
  std::vector<double> order;      // w / w0
  std::vector<double> intensity;  // arbitrary units, |DFT of windowed v|^2
  double cutoff_estimate = 0.0;   // lmax * gamma_DL for cosine-series bands
  std::string window = "hann";
};

/// Windowed discrete Fourier transform of the velocity; requires at least
/// 8 carrier cycles in the window.
HarmonicSpectrum hhg_spectrum(const BandDispersion& band, double k0, const PulseSpec& pulse);

// Time-resolved band populations on a shared uniform grid; each state row
// carries the index of its band mass.
struct BandPopulations {
  std::vector<double> t;                 // fs
  std::vector<std::vector<double>> f;    // [state][time]
  std::vector<int> band_of_state;        // index into the mass list
};

/// Transferred charge Q = sum_states (2 e^2 S / m_n) int f(t) A(t - delay) dt
/// in the weak-drive parabolic-band limit. Masses in units of m0, S in A^2.
double transferred_charge(const BandPopulations& populations,
                          const std::vector<double>& masses, const PulseSpec& drive,
                          double delay, double area);

struct EnergyTransfer {
  std::vector<double> W;  // cumulative work per unit volume
  double W_max = 0.0;
  double W_irrev = 0.0;
};

/// W(t) = int F dP/dt dt' with centered differences for dP/dt; requires a
/// uniform grid of at least 3 samples.
EnergyTransfer energy_transfer(std::span<const double> t, std::span<const double> F,
                               std::span<const double> P);

}  // namespace blochwave
