#pragma once

#include <utility>

namespace blochwave {

enum class Envelope {
  monochromatic,  // constant amplitude F0 inside the window
  sine_square,    // sin^2 field envelope, parameterized by the intensity FWHM
  flat_top,       // sin^2 ramps of `ramp` fs framing a constant plateau
  static_field,   // constant field F0 inside the window (no carrier)
};

// Analytic laser waveform. The principal (x) field component is
//   F(t) = F0 * env(t) * cos(w0 (t - t_peak) + cep),
// and for nonzero ellipticity beta the orthogonal component is
//   Fy(t) = beta * F0 * env(t) * sin(w0 (t - t_peak) + cep).
// The carrier-envelope phase is the phase of the carrier cosine at the
// envelope peak (the window midpoint). The vector potential A(t) = -int F dt'
// is referenced to the window start, A(t_start) = 0; outside the window the
// field vanishes and A stays constant.
struct PulseSpec {
  double F0 = 0.0;           // field amplitude, V/A
  double hbar_omega0 = 0.0;  // carrier photon energy, eV (0 for static_field)
  Envelope envelope = Envelope::monochromatic;
  double fwhm = 0.0;         // intensity FWHM, fs (sine_square only)
  double ramp = 0.0;         // switch-on/off duration, fs (flat_top only)
  double cep = 0.0;          // rad
  double beta = 0.0;         // ellipticity, in [-1, 1]
  double t_start = 0.0;      // fs
  double t_end = 0.0;        // fs

  static PulseSpec monochromatic_cycles(double F0, double hbar_omega0, double n_cycles,
                                        double cep = 0.0, double beta = 0.0,
                                        double t_start = 0.0);
  // Window spans the full sin^2 envelope; total duration derived from the
  // intensity FWHM: T = fwhm * pi / (pi - 2 asin(2^(-1/4))) ~= 2.7470 * fwhm.
  static PulseSpec sine_square_fwhm(double F0, double hbar_omega0, double fwhm,
                                    double cep = 0.0, double beta = 0.0,
                                    double t_start = 0.0);
  // Plateau of n_plateau_cycles carrier cycles with adiabatic sin^2 switch-on
  // and switch-off ramps of n_ramp_cycles each.
  static PulseSpec flat_top_cycles(double F0, double hbar_omega0, double n_plateau_cycles,
                                   double n_ramp_cycles, double cep = 0.0,
                                   double beta = 0.0, double t_start = 0.0);
  static PulseSpec static_field(double F0, double duration, double t_start = 0.0);

  static double photon_energy_from_wavelength_nm(double lambda_nm);
  static double sine_square_duration(double fwhm);

  double omega0() const;    // rad/fs
  double period() const;    // fs
  double duration() const { return t_end - t_start; }
  double t_peak() const { return 0.5 * (t_start + t_end); }

  double envelope_at(double t) const;         // F0 * env(t)
  double field(double t) const;               // V/A
  double field_y(double t) const;             // V/A
  double vector_potential(double t) const;    // V*fs/A, closed form
  double vector_potential_y(double t) const;  // V*fs/A
  // int_{t_start}^{t} A(t') dt', closed form; continues linearly past t_end
  double vector_potential_integral(double t) const;

  void validate() const;  // throws ConfigError on invalid parameters
};

struct Waveform {
  double F;  // V/A
  double A;  // V*fs/A
};

Waveform waveform(const PulseSpec& pulse, double t);

/// K(t) = k + (e/hbar) A(t), in 1/A.
double kinetic_momentum(const PulseSpec& pulse, double k, double t);

/// Fold k into the first Brillouin zone [-pi/a, pi/a).
double reduce_to_first_bz(double k, double a);

/// Amplitudes |F+|, |F-| of the circular components for amplitude F0 and
/// ellipticity beta.
std::pair<double, double> circular_amplitudes(double F0, double beta);

}  // namespace blochwave
