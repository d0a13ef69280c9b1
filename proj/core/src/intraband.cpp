#include "blochwave/intraband.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "blochwave/constants.hpp"
#include "blochwave/errors.hpp"
#include "blochwave/special_functions.hpp"

namespace blochwave {

namespace {

void check_sampling(const PulseSpec& pulse, int samples) {
  if (pulse.envelope == Envelope::static_field) {
    if (samples < 16) throw ConfigError("trajectory: need at least 16 samples");
    return;
  }
  const double cycles = pulse.duration() / pulse.period();
  const int needed = static_cast<int>(std::ceil(16.0 * cycles));
  if (samples < needed) {
    throw ConfigError("trajectory: undersampled drive; need at least 16 samples per carrier cycle (" +
                      std::to_string(needed) + " total for this pulse)");
  }
}

}  // namespace

TrajectoryResult trajectory(const BandDispersion& band, double k0, const PulseSpec& pulse,
                            int samples) {
  validate(band);
  pulse.validate();
  if (std::holds_alternative<KaneTwoBand>(band)) {
    throw ConfigError("trajectory: gap dispersions carry no single-band group velocity; use a cosine-series or parabolic band");
  }
  check_sampling(pulse, samples);

  TrajectoryResult out;
  const int n = samples;
  const double h = pulse.duration() / (n - 1);
  out.t.resize(n);
  out.K.resize(n);
  out.v.resize(n);
  out.dx.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = pulse.t_start + h * i;
    out.t[i] = t;
    out.K[i] = kinetic_momentum(pulse, k0, t);
    out.v[i] = band_velocity(band, out.K[i]);
  }

  if (const auto* ema = std::get_if<EffectiveMass>(&band)) {
    // closed form: dx = (hbar/m) [k0 (t - t0) + (1/hbar) int A dt']
    for (int i = 0; i < n; ++i) {
      const double dt = out.t[i] - pulse.t_start;
      out.dx[i] = constants::hbar_over_m0 / ema->m *
                  (k0 * dt + pulse.vector_potential_integral(out.t[i]) / constants::hbar);
    }
  } else {
    // cumulative Simpson using midpoint refinements
    out.dx[0] = 0.0;
    for (int i = 1; i < n; ++i) {
      const double tm = 0.5 * (out.t[i - 1] + out.t[i]);
      const double vm = band_velocity(band, kinetic_momentum(pulse, k0, tm));
      out.dx[i] = out.dx[i - 1] + h / 6.0 * (out.v[i - 1] + 4.0 * vm + out.v[i]);
    }
  }
  return out;
}

double cycle_drift(const TightBinding& band, double k0, double gamma_DL,
                   double hbar_omega0) {
  if (band.eps.size() != 2) {
    throw ConfigError("cycle_drift: requires a nearest-neighbor band (exactly one hopping order)");
  }
  if (!(band.a > 0)) throw ConfigError("cycle_drift: lattice constant must be positive");
  const double F0 = gamma_DL * hbar_omega0 / band.a;
  const auto pulse = PulseSpec::monochromatic_cycles(F0, hbar_omega0, 1.0);
  const double T0 = pulse.period();
  const int n = 8192;  // periodic trapezoid; integrand is analytic and T0-periodic
  const double h = T0 / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = kinetic_momentum(pulse, k0, h * i);
    acc += band_velocity(BandDispersion{band}, k);
  }
  return acc * h;
}

double weak_field_drift_scale(const TightBinding& band, double k0, double hbar_omega0) {
  if (band.eps.size() != 2) {
    throw ConfigError("weak_field_drift_scale: requires a nearest-neighbor band");
  }
  const double T0 = 2.0 * constants::pi * constants::hbar / hbar_omega0;
  return -band.eps[1] * band.a * T0 / constants::hbar * std::sin(k0 * band.a);
}

HarmonicSpectrum hhg_spectrum(const BandDispersion& band, double k0, const PulseSpec& pulse) {
  pulse.validate();
  if (pulse.envelope == Envelope::static_field) {
    throw ConfigError("hhg_spectrum: requires an oscillating drive");
  }
  const double cycles = pulse.duration() / pulse.period();
  if (cycles < 8.0 - 1e-9) {
    throw ConfigError("hhg_spectrum: pulse too short for harmonic resolution; use at least 8 carrier cycles (monochromatic mode recommended)");
  }

  const int spc = 128;  // samples per carrier cycle
  const int n = static_cast<int>(std::ceil(cycles * spc));
  // sample with spacing h = duration/n; the (periodic) record excludes t_end
  const double h = pulse.duration() / n;
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = pulse.t_start + h * i;
    v[static_cast<std::size_t>(i)] = band_velocity(band, kinetic_momentum(pulse, k0, t));
  }

  // periodic Hann window
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    w[static_cast<std::size_t>(i)] = 0.5 * (1.0 - std::cos(2.0 * constants::pi * i / n));
  }

  HarmonicSpectrum spec;
  const int nbins = n / 2 + 1;
  spec.order.resize(static_cast<std::size_t>(nbins));
  spec.intensity.resize(static_cast<std::size_t>(nbins));
  const double order_step = pulse.period() / pulse.duration();
  for (int b = 0; b < nbins; ++b) {
    std::complex<double> acc = 0.0;
    const double phase_step = -2.0 * constants::pi * b / n;
    for (int i = 0; i < n; ++i) {
      acc += w[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)] *
             std::polar(1.0, phase_step * i);
    }
    spec.order[static_cast<std::size_t>(b)] = order_step * b;
    spec.intensity[static_cast<std::size_t>(b)] = std::norm(acc);
  }

  if (const auto* tb = std::get_if<TightBinding>(&band)) {
    const double gamma_dl = pulse.F0 * tb->a / pulse.hbar_omega0;
    spec.cutoff_estimate = static_cast<double>(tb->eps.size() - 1) * gamma_dl;
  } else {
    spec.cutoff_estimate = 1.0;  // parabolic band: only the fundamental
  }
  return spec;
}

double transferred_charge(const BandPopulations& populations,
                          const std::vector<double>& masses, const PulseSpec& drive,
                          double delay, double area) {
  const auto& t = populations.t;
  if (t.size() < 2) throw ConfigError("transferred_charge: need at least 2 time samples");
  if (populations.f.size() != populations.band_of_state.size()) {
    throw ConfigError("transferred_charge: state/band index mismatch");
  }
  for (const auto& row : populations.f) {
    if (row.size() != t.size()) {
      throw ConfigError("transferred_charge: population rows must share the drive time grid");
    }
  }

  std::vector<double> a_drive(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    a_drive[i] = drive.vector_potential(t[i] - delay);
  }

  double q = 0.0;
  for (std::size_t s = 0; s < populations.f.size(); ++s) {
    const int b = populations.band_of_state[s];
    if (b < 0 || static_cast<std::size_t>(b) >= masses.size()) {
      throw ConfigError("transferred_charge: band index out of range");
    }
    const auto& f = populations.f[s];
    double integral = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      integral += 0.5 * (t[i] - t[i - 1]) *
                  (f[i] * a_drive[i] + f[i - 1] * a_drive[i - 1]);
    }
    q += 2.0 * area / masses[static_cast<std::size_t>(b)] * integral;
  }
  return q;
}

EnergyTransfer energy_transfer(std::span<const double> t, std::span<const double> F,
                               std::span<const double> P) {
  const std::size_t n = t.size();
  if (n < 3) throw ConfigError("energy_transfer: need at least 3 samples");
  if (F.size() != n || P.size() != n) {
    throw ConfigError("energy_transfer: series must share one time grid");
  }
  const double h = t[1] - t[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(t[i] - t[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw ConfigError("energy_transfer: time grid must be uniform");
    }
  }

  std::vector<double> j(n);  // dP/dt
  j[0] = (P[1] - P[0]) / h;
  j[n - 1] = (P[n - 1] - P[n - 2]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) j[i] = (P[i + 1] - P[i - 1]) / (2.0 * h);

  EnergyTransfer out;
  out.W.resize(n);
  out.W[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    out.W[i] = out.W[i - 1] + 0.5 * h * (F[i] * j[i] + F[i - 1] * j[i - 1]);
  }
  out.W_max = *std::max_element(out.W.begin(), out.W.end());
  out.W_irrev = out.W.back();
  return out;
}

}  // namespace blochwave
