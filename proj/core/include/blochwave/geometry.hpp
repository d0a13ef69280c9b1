#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "blochwave/band.hpp"

namespace blochwave {

// Two-band Bloch Hamiltonians H(k) = d(k) . sigma (+ d0(k) 1, which does not
// affect any band-geometric quantity). k lives on the torus [-pi, pi)^dim.
struct BlochModel1D {
  std::function<std::array<double, 3>(double)> d;
};

struct BlochModel2D {
  std::function<std::array<double, 3>(double, double)> d;
};

/// Normalized eigenspinor of d . sigma; band 0 is the lower band.
std::array<std::complex<double>, 2> bloch_spinor(const std::array<double, 3>& d, int band);

/// Berry phase of the band along the full 1D zone from the discrete Wilson
/// loop of link overlaps, reported in [0, 2pi). A link overlap with modulus
/// below 1e-6 signals a gap closure and raises NumericalError.
double zak_phase(const BlochModel1D& model, int band, int nk = 512);

struct ChernResult {
  int nx = 0, ny = 0;
  std::vector<double> curvature;  // plaquette phases / plaquette area, row-major (ix + nx*iy)
  double C_raw = 0.0;
  long C = 0;
  double residual = 0.0;          // |C_raw - C|
  bool residual_flagged = false;  // residual > 0.01: grid too coarse or gap closing
  double sigma_xy = 0.0;          // e^2/hbar * C with e = 1
  // Fubini-Study metric per grid point: (g_xx, g_xy, g_yy)
  std::vector<std::array<double, 3>> metric;
};

/// Gauge-invariant plaquette-phase curvature, its zone sum (Chern number),
/// the Hall conductivity of the single requested band, and the quantum
/// metric from projected derivatives of the spinor field.
ChernResult chern_and_curvature(const BlochModel2D& model, int band, int nx, int ny);

/// Ladder energies E_l = e_bar + e a F0 (l + zak / 2pi), l in [l_min, l_max].
std::vector<double> ws_ladder_with_zak(double e_bar, double a, double F0, double zak,
                                       int l_min, int l_max);

// Dispersion over a 2- or 3-component crystal momentum; gradient in eV*A.
struct DispersionND {
  std::function<double(const std::array<double, 3>&)> energy;
  std::function<std::array<double, 3>(const std::array<double, 3>&)> gradient;
};

/// Separable dispersion E(K) = sum_axis E_axis(K_axis); pass an empty
/// optional axis as flat.
DispersionND separable_dispersion(const BandDispersion& bx,
                                  const BandDispersion* by = nullptr,
                                  const BandDispersion* bz = nullptr);

struct AnomalousTrajectory {
  std::vector<double> t;
  std::vector<std::array<double, 3>> K;  // 1/A
  std::vector<std::array<double, 3>> r;  // A
};

/// Wavepacket motion with the curvature term,
///   Kdot = -(e/hbar) (F + rdot x B),   rdot = grad E / hbar - Kdot x Omega.
/// With B nonzero the implicit rdot dependence is resolved by fixed-point
/// iteration at every stage (tolerance 1e-12). B in V*fs/A^2.
AnomalousTrajectory anomalous_trajectory(
    const DispersionND& band,
    const std::function<std::array<double, 3>(const std::array<double, 3>&)>& curvature,
    const std::function<std::array<double, 3>(double)>& field,
    const std::array<double, 3>& B, const std::array<double, 3>& k0,
    const std::array<double, 3>& r0, double duration, int n_steps);

}  // namespace blochwave
