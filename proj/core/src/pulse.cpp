#include "blochwave/pulse.hpp"

#include <cmath>

#include "blochwave/constants.hpp"
#include "blochwave/errors.hpp"

namespace blochwave {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// int_0^u cos(psi0 + rate*v) dv, stable for any rate including 0
double int_cos(double psi0, double rate, double u) {
  const double h = 0.5 * rate * u;
  return u * sinc(h) * std::cos(psi0 + h);
}

// int_0^u sin(psi0 + rate*v) dv
double int_sin(double psi0, double rate, double u) {
  const double h = 0.5 * rate * u;
  return u * sinc(h) * std::sin(psi0 + h);
}

// int_0^u int_0^{u'} cos(psi0 + rate*v) dv du'
double int2_cos(double psi0, double rate, double u) {
  const double ru = rate * u;
  if (std::abs(ru) < 1e-3) {
    const double c = std::cos(psi0), s = std::sin(psi0);
    const double u2 = u * u;
    return c * u2 / 2.0 - rate * s * u2 * u / 6.0 - rate * rate * c * u2 * u2 / 24.0 +
           rate * rate * rate * s * u2 * u2 * u / 120.0;
  }
  return (std::cos(psi0) - std::cos(psi0 + ru)) / (rate * rate) -
         u * std::sin(psi0) / rate;
}

}  // namespace

double PulseSpec::photon_energy_from_wavelength_nm(double lambda_nm) {
  if (!(lambda_nm > 0)) throw ConfigError("wavelength must be positive");
  return constants::hc_eV_nm / lambda_nm;
}

double PulseSpec::sine_square_duration(double fwhm) {
  // intensity envelope sin^4(pi t / T); half maximum at sin = 2^(-1/4)
  const double x_half = std::asin(std::pow(2.0, -0.25));
  return fwhm * constants::pi / (constants::pi - 2.0 * x_half);
}

PulseSpec PulseSpec::monochromatic_cycles(double F0, double hbar_omega0, double n_cycles,
                                          double cep, double beta, double t_start) {
  PulseSpec p;
  p.F0 = F0;
  p.hbar_omega0 = hbar_omega0;
  p.envelope = Envelope::monochromatic;
  p.cep = cep;
  p.beta = beta;
  p.t_start = t_start;
  if (!(hbar_omega0 > 0)) throw ConfigError("monochromatic pulse requires a positive photon energy");
  p.t_end = t_start + n_cycles * 2.0 * constants::pi * constants::hbar / hbar_omega0;
  p.validate();
  return p;
}

PulseSpec PulseSpec::sine_square_fwhm(double F0, double hbar_omega0, double fwhm, double cep,
                                      double beta, double t_start) {
  PulseSpec p;
  p.F0 = F0;
  p.hbar_omega0 = hbar_omega0;
  p.envelope = Envelope::sine_square;
  p.fwhm = fwhm;
  p.cep = cep;
  p.beta = beta;
  p.t_start = t_start;
  if (!(fwhm > 0)) throw ConfigError("sine-square pulse requires a positive FWHM");
  p.t_end = t_start + sine_square_duration(fwhm);
  p.validate();
  return p;
}

PulseSpec PulseSpec::flat_top_cycles(double F0, double hbar_omega0, double n_plateau_cycles,
                                     double n_ramp_cycles, double cep, double beta,
                                     double t_start) {
  PulseSpec p;
  p.F0 = F0;
  p.hbar_omega0 = hbar_omega0;
  p.envelope = Envelope::flat_top;
  p.cep = cep;
  p.beta = beta;
  p.t_start = t_start;
  if (!(hbar_omega0 > 0)) throw ConfigError("flat-top pulse requires a positive photon energy");
  if (!(n_ramp_cycles > 0)) throw ConfigError("flat-top pulse requires a positive ramp");
  const double T0 = 2.0 * constants::pi * constants::hbar / hbar_omega0;
  p.ramp = n_ramp_cycles * T0;
  p.t_end = t_start + (n_plateau_cycles + 2.0 * n_ramp_cycles) * T0;
  p.validate();
  return p;
}

PulseSpec PulseSpec::static_field(double F0, double duration, double t_start) {
  PulseSpec p;
  p.F0 = F0;
  p.envelope = Envelope::static_field;
  p.t_start = t_start;
  p.t_end = t_start + duration;
  p.validate();
  return p;
}

void PulseSpec::validate() const {
  if (!(F0 >= 0) || !std::isfinite(F0)) throw ConfigError("pulse: F0 must be >= 0");
  if (envelope != Envelope::static_field && !(hbar_omega0 > 0)) {
    throw ConfigError("pulse: photon energy must be positive");
  }
  if (envelope == Envelope::sine_square && !(fwhm > 0)) {
    throw ConfigError("pulse: sine-square FWHM must be positive");
  }
  if (envelope == Envelope::flat_top &&
      (!(ramp > 0) || !(2.0 * ramp <= t_end - t_start))) {
    throw ConfigError("pulse: flat-top ramps must be positive and fit into the window");
  }
  if (!(std::abs(beta) <= 1.0)) throw ConfigError("pulse: |ellipticity| must be <= 1");
  if (!(t_end > t_start)) throw ConfigError("pulse: window must have positive duration");
}

double PulseSpec::omega0() const { return hbar_omega0 / constants::hbar; }

double PulseSpec::period() const {
  return 2.0 * constants::pi * constants::hbar / hbar_omega0;
}

double PulseSpec::envelope_at(double t) const {
  if (t < t_start || t > t_end) return 0.0;
  switch (envelope) {
    case Envelope::monochromatic:
    case Envelope::static_field:
      return F0;
    case Envelope::sine_square: {
      const double s = std::sin(constants::pi * (t - t_start) / duration());
      return F0 * s * s;
    }
    case Envelope::flat_top: {
      const double u = t - t_start;
      const double omega_r = 0.5 * constants::pi / ramp;
      if (u < ramp) {
        const double s = std::sin(omega_r * u);
        return F0 * s * s;
      }
      if (u > duration() - ramp) {
        const double c = std::cos(omega_r * (u - (duration() - ramp)));
        return F0 * c * c;
      }
      return F0;
    }
  }
  return 0.0;
}

double PulseSpec::field(double t) const {
  if (t < t_start || t > t_end) return 0.0;
  if (envelope == Envelope::static_field) return F0;
  const double psi = omega0() * (t - t_peak()) + cep;
  return envelope_at(t) * std::cos(psi);
}

double PulseSpec::field_y(double t) const {
  if (beta == 0.0 || t < t_start || t > t_end) return 0.0;
  if (envelope == Envelope::static_field) return 0.0;
  const double psi = omega0() * (t - t_peak()) + cep;
  return beta * envelope_at(t) * std::sin(psi);
}

double PulseSpec::vector_potential(double t) const {
  if (t <= t_start) return 0.0;
  const double u = std::min(t, t_end) - t_start;
  if (envelope == Envelope::static_field) return -F0 * u;
  const double w0 = omega0();
  const double psi_s = w0 * (t_start - t_peak()) + cep;
  if (envelope == Envelope::monochromatic) {
    return -F0 * int_cos(psi_s, w0, u);
  }
  if (envelope == Envelope::sine_square) {
    // sin^2 * cos -> three harmonics of the combined phase
    const double two_omega_env = 2.0 * constants::pi / duration();
    return -F0 * (0.5 * int_cos(psi_s, w0, u) -
                  0.25 * int_cos(psi_s, w0 + two_omega_env, u) -
                  0.25 * int_cos(psi_s, w0 - two_omega_env, u));
  }
  // flat_top: accumulate the ramp, plateau, and switch-off segments
  const double two_omega_r = constants::pi / ramp;
  const double u0 = std::min(u, ramp);
  double acc = 0.5 * int_cos(psi_s, w0, u0) - 0.25 * int_cos(psi_s, w0 + two_omega_r, u0) -
               0.25 * int_cos(psi_s, w0 - two_omega_r, u0);
  if (u > ramp) {
    const double u1 = std::min(u - ramp, duration() - 2.0 * ramp);
    acc += int_cos(psi_s + w0 * ramp, w0, u1);
  }
  if (u > duration() - ramp) {
    const double u2 = u - (duration() - ramp);
    const double psi_2 = psi_s + w0 * (duration() - ramp);
    acc += 0.5 * int_cos(psi_2, w0, u2) + 0.25 * int_cos(psi_2, w0 + two_omega_r, u2) +
           0.25 * int_cos(psi_2, w0 - two_omega_r, u2);
  }
  return -F0 * acc;
}

double PulseSpec::vector_potential_y(double t) const {
  if (beta == 0.0 || t <= t_start || envelope == Envelope::static_field) return 0.0;
  const double u = std::min(t, t_end) - t_start;
  const double w0 = omega0();
  const double psi_s = w0 * (t_start - t_peak()) + cep;
  if (envelope == Envelope::monochromatic) {
    return -beta * F0 * int_sin(psi_s, w0, u);
  }
  if (envelope == Envelope::sine_square) {
    const double two_omega_env = 2.0 * constants::pi / duration();
    return -beta * F0 * (0.5 * int_sin(psi_s, w0, u) -
                         0.25 * int_sin(psi_s, w0 + two_omega_env, u) -
                         0.25 * int_sin(psi_s, w0 - two_omega_env, u));
  }
  const double two_omega_r = constants::pi / ramp;
  const double u0 = std::min(u, ramp);
  double acc = 0.5 * int_sin(psi_s, w0, u0) - 0.25 * int_sin(psi_s, w0 + two_omega_r, u0) -
               0.25 * int_sin(psi_s, w0 - two_omega_r, u0);
  if (u > ramp) {
    const double u1 = std::min(u - ramp, duration() - 2.0 * ramp);
    acc += int_sin(psi_s + w0 * ramp, w0, u1);
  }
  if (u > duration() - ramp) {
    const double u2 = u - (duration() - ramp);
    const double psi_2 = psi_s + w0 * (duration() - ramp);
    acc += 0.5 * int_sin(psi_2, w0, u2) + 0.25 * int_sin(psi_2, w0 + two_omega_r, u2) +
           0.25 * int_sin(psi_2, w0 - two_omega_r, u2);
  }
  return -beta * F0 * acc;
}

double PulseSpec::vector_potential_integral(double t) const {
  if (t <= t_start) return 0.0;
  const double u = std::min(t, t_end) - t_start;
  double inside;
  if (envelope == Envelope::static_field) {
    inside = -0.5 * F0 * u * u;
  } else {
    const double w0 = omega0();
    const double psi_s = w0 * (t_start - t_peak()) + cep;
    if (envelope == Envelope::monochromatic) {
      inside = -F0 * int2_cos(psi_s, w0, u);
    } else if (envelope == Envelope::sine_square) {
      const double two_omega_env = 2.0 * constants::pi / duration();
      inside = -F0 * (0.5 * int2_cos(psi_s, w0, u) -
                      0.25 * int2_cos(psi_s, w0 + two_omega_env, u) -
                      0.25 * int2_cos(psi_s, w0 - two_omega_env, u));
    } else {
      // flat_top: per segment, int A = A(seg start) * du + the double
      // integral of -F from the segment start
      const double two_omega_r = constants::pi / ramp;
      const double u0 = std::min(u, ramp);
      inside = -F0 * (0.5 * int2_cos(psi_s, w0, u0) -
                      0.25 * int2_cos(psi_s, w0 + two_omega_r, u0) -
                      0.25 * int2_cos(psi_s, w0 - two_omega_r, u0));
      if (u > ramp) {
        const double u1 = std::min(u - ramp, duration() - 2.0 * ramp);
        inside += vector_potential(t_start + ramp) * u1 -
                  F0 * int2_cos(psi_s + w0 * ramp, w0, u1);
      }
      const double plateau_end = duration() - ramp;
      if (u > plateau_end) {
        const double u2 = u - plateau_end;
        const double psi_2 = psi_s + w0 * plateau_end;
        inside += vector_potential(t_start + plateau_end) * u2 -
                  F0 * (0.5 * int2_cos(psi_2, w0, u2) +
                        0.25 * int2_cos(psi_2, w0 + two_omega_r, u2) +
                        0.25 * int2_cos(psi_2, w0 - two_omega_r, u2));
      }
    }
  }
  if (t > t_end) inside += vector_potential(t_end) * (t - t_end);
  return inside;
}

Waveform waveform(const PulseSpec& pulse, double t) {
  return {pulse.field(t), pulse.vector_potential(t)};
}

double kinetic_momentum(const PulseSpec& pulse, double k, double t) {
  return k + pulse.vector_potential(t) / constants::hbar;
}

double reduce_to_first_bz(double k, double a) {
  const double g = 2.0 * constants::pi / a;
  double r = std::fmod(k + 0.5 * g, g);
  if (r < 0) r += g;
  return r - 0.5 * g;
}

std::pair<double, double> circular_amplitudes(double F0, double beta) {
  // Fx = F0 cos, Fy = beta F0 sin decomposes into counter-rotating circular
  // components with amplitudes F0 (1 +- beta) / 2.
  return {0.5 * F0 * (1.0 + beta), 0.5 * F0 * (1.0 - beta)};
}

}  // namespace blochwave
