#pragma once

#include <array>
#include <variant>
#include <vector>

namespace blochwave {

// Parabolic band, E(k) = hbar^2 k^2 / (2 m m0). Mass in units of m0;
// for electron-hole pairs this is the reduced mass.
struct EffectiveMass {
  double m = 1.0;
};

// Nonparabolic two-band gap dispersion,
// Ecv(k) = Eg sqrt(1 + hbar^2 k^2 / (m Eg)), mass in units of m0.
struct KaneTwoBand {
  double Eg = 0.0;
  double m = 1.0;
};

// Cosine series E(k) = sum_l eps[l] cos(k l a); eps[l] are hopping
// coefficients (eps_l = -2 t_l), eps[0] the band offset.
struct TightBinding {
  double a = 0.0;                // lattice constant, A
  std::vector<double> eps;       // eV, index = neighbor order l
};

using BandDispersion = std::variant<EffectiveMass, KaneTwoBand, TightBinding>;

void validate(const BandDispersion& band);

double band_energy(const BandDispersion& band, double k);    // eV
double band_velocity(const BandDispersion& band, double k);  // dE/dk / hbar, A/fs

/// Curvature mass at k = 0 in units of m0: m = hbar^2 / E''(0).
double curvature_mass(const TightBinding& tb);

/// Difference dispersion eps_cv,l = eps_c,l - eps_v,l on a shared lattice.
TightBinding tb_difference(const TightBinding& c, const TightBinding& v);

/// Interband dipole estimate for a gap Eg and reduced mass m (units of m0):
/// xi = hbar / (2 sqrt(m Eg)), in A.
double kane_dipole(double Eg, double m);

// Uniform reciprocal-space sampling, per-axis point counts and extents as
// fractions of the Brillouin zone. Endpoints are identified periodically
// (the right endpoint is excluded). Fractions above 1 sample an extended
// zone, which is meaningful for non-periodic model dispersions.
struct KGrid {
  int dimension = 1;
  std::array<int, 3> points{2, 1, 1};
  std::array<double, 3> fraction{1.0, 1.0, 1.0};

  void validate() const;
  /// Sample positions on one axis for lattice constant a, in 1/A.
  std::vector<double> axis(int i, double a) const;
};

}  // namespace blochwave
