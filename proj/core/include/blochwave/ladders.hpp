#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "blochwave/band.hpp"

namespace blochwave {

// One rung of the static-field ladder of a single band: energy
// e_bar + l * hbar_omegaB, with e_bar the zone average of the modified band
// energy.
struct KaneRung {
  int l = 0;
  double energy = 0.0;        // eV
  double e_bar = 0.0;         // eV
  double hbar_omegaB = 0.0;   // eV
};

struct KaneLadderResult {
  double e_bar = 0.0;
  double hbar_omegaB = 0.0;
  std::vector<KaneRung> rungs;
};

/// Ladder of a cosine-series band in a static field F0 > 0. xnn, if given,
/// is the diagonal connection entering the modified band energy
/// E'(k) = E(k) + e F0 xnn(k).
KaneLadderResult kane_ladder(const TightBinding& band, double F0,
                             const std::function<double(double)>& xnn, int l_min, int l_max);

struct EtaSamples {
  std::vector<double> kx;                  // 1/A
  std::vector<std::complex<double>> eta;   // unimodular phase function
};

/// Phase function eta_l(kx) = exp(-(i/eF0) int_0^kx [E_l - E'(k')] dk')
/// sampled uniformly over [-pi/a, pi/a]. With `energy` on a quantized rung
/// eta is single-valued across the zone; a detuned energy breaks the
/// periodicity.
EtaSamples kane_eta(const TightBinding& band, double F0,
                    const std::function<double(double)>& xnn, double energy,
                    int n_samples = 2048);

struct LocalizationLengths {
  double L_SC = 0.0;  // A, semiclassical bandwidth / field
  double L_K = 0.0;   // A, sqrt(L_SC^2 + L_W^2)
};

LocalizationLengths localization_lengths(double bandwidth, double wannier_extent, double F0);

struct WSLevels {
  std::vector<double> energies;  // eV, ascending
};

/// Coupled-band ladder levels. truncation == 2 uses the two-level closed
/// form for the rungs c and v with coupling V_{cv,l} picked by their offset;
/// larger truncations diagonalize the Hermitian matrix with Kane rungs on
/// the diagonal and the couplings on the conduction-valence blocks.
WSLevels ws_levels(const KaneRung& rung_c, const KaneRung& rung_v,
                   const std::vector<double>& couplings, int truncation);

/// Eigenvalues of an explicitly supplied n x n coupling matrix (row-major);
/// rejects non-Hermitian input.
std::vector<double> ws_eigenvalues(const std::vector<std::complex<double>>& matrix, int n);

/// Static field at which rungs l sites apart align across a gap Eg:
/// F0 = Eg / (l a e).
double hybridization_field(double Eg, double a, int ell);

struct FkeResult {
  double hbar_theta = 0.0;  // eV
  double alpha_rel = 0.0;   // relative absorption, 1 at (Eg - hw) = hbar_theta
};

/// Below-gap photon-assisted absorption for a parabolic gap: relative
/// coefficient alpha ~ theta^(3/2)/(Eg-hw) exp[-(4/3)((Eg-hw)/htheta)^(3/2)],
/// normalized to 1 where the detuning equals hbar_theta.
FkeResult fke_absorption(double hbar_omega, double F0, double m, double Eg);

}  // namespace blochwave
