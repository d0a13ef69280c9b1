#include "blochwave/resonant.hpp"

#include <cmath>
#include <complex>

#include "blochwave/constants.hpp"
#include "blochwave/errors.hpp"

namespace blochwave {

using std::complex;
namespace {
constexpr complex<double> kI{0.0, 1.0};
}

void TwoLevelSystem::validate() const {
  if (!(E2 > E1)) throw ConfigError("two-level system: E2 must exceed E1");
  if (!(d12 >= 0)) throw ConfigError("two-level system: dipole must be >= 0");
}

RwaSuite rwa_suite(const TwoLevelSystem& sys, double F0, double hbar_omega0) {
  sys.validate();
  if (!(hbar_omega0 > 0)) throw ConfigError("rwa_suite: photon energy must be positive");
  RwaSuite s;
  s.hbar_omega_rabi = F0 * sys.d12;
  s.hbar_detuning = sys.transition_energy() - hbar_omega0;
  s.hbar_Omega_R =
      std::hypot(s.hbar_omega_rabi, s.hbar_detuning);
  s.dressed_1 = {sys.E1 + 0.5 * (s.hbar_detuning + s.hbar_Omega_R),
                 sys.E1 + 0.5 * (s.hbar_detuning - s.hbar_Omega_R)};
  s.dressed_2 = {sys.E2 - 0.5 * (s.hbar_detuning - s.hbar_Omega_R),
                 sys.E2 - 0.5 * (s.hbar_detuning + s.hbar_Omega_R)};
  s.mollow = {hbar_omega0 - s.hbar_Omega_R, hbar_omega0, hbar_omega0 + s.hbar_Omega_R};

  const double Omega = s.hbar_Omega_R / constants::hbar;  // rad/fs
  const double wr = s.hbar_omega_rabi / constants::hbar;
  const double contrast = (Omega > 0) ? (wr * wr) / (Omega * Omega) : 0.0;
  s.inversion_resonant_contrast = [Omega](double t) { return -std::cos(Omega * t); };
  s.inversion_rwa = [Omega, contrast](double t) {
    return -1.0 + 2.0 * contrast * std::pow(std::sin(0.5 * Omega * t), 2);
  };
  return s;
}

double rwa_envelope_inversion(const TwoLevelSystem& sys, const PulseSpec& pulse, double t) {
  sys.validate();
  // accumulated envelope area; sine-square has the closed form
  // int env = F0 (u/2 - T sin(2 pi u / T) / (4 pi))
  double theta = 0.0;
  const double u = std::clamp(t, pulse.t_start, pulse.t_end) - pulse.t_start;
  switch (pulse.envelope) {
    case Envelope::monochromatic:
    case Envelope::static_field:
      theta = pulse.F0 * u;
      break;
    case Envelope::sine_square: {
      const double T = pulse.duration();
      theta = pulse.F0 * (0.5 * u - T * std::sin(2.0 * constants::pi * u / T) /
                                        (4.0 * constants::pi));
      break;
    }
    case Envelope::flat_top: {
      const double ramp = pulse.ramp;
      const double omega_r = 0.5 * constants::pi / ramp;
      const double u0 = std::min(u, ramp);
      theta = 0.5 * u0 - std::sin(2.0 * omega_r * u0) / (4.0 * omega_r);
      if (u > ramp) theta += std::min(u - ramp, pulse.duration() - 2.0 * ramp);
      if (u > pulse.duration() - ramp) {
        const double u2 = u - (pulse.duration() - ramp);
        theta += 0.5 * u2 + std::sin(2.0 * omega_r * u2) / (4.0 * omega_r);
      }
      theta *= pulse.F0;
      break;
    }
  }
  theta *= sys.d12 / constants::hbar;
  return -std::cos(theta);
}

namespace {

// interaction picture: [Re a1, Im a1, Re a2, Im a2]
struct TwoLevelRhs {
  const TwoLevelSystem* sys;
  const PulseSpec* pulse;
  double omega21;

  void operator()(double t, const std::array<double, 4>& y, std::array<double, 4>& dy) const {
    const double v = pulse->field(t) * sys->d12 / constants::hbar;  // rad/fs
    const complex<double> a1{y[0], y[1]}, a2{y[2], y[3]};
    const complex<double> phase = std::polar(1.0, omega21 * t);
    const complex<double> da1 = -kI * v * std::conj(phase) * a2;
    const complex<double> da2 = -kI * v * phase * a1;
    dy[0] = da1.real();
    dy[1] = da1.imag();
    dy[2] = da2.real();
    dy[3] = da2.imag();
  }
};

}  // namespace

std::vector<BlochVector> solve_two_level(const TwoLevelSystem& sys, const PulseSpec& pulse,
                                         const OdeTolerances& tol, int n_samples) {
  sys.validate();
  pulse.validate();
  if (n_samples < 2) throw ConfigError("solve_two_level: need at least 2 samples");

  TwoLevelRhs rhs{&sys, &pulse, sys.transition_energy() / constants::hbar};
  auto stepper = make_dormand_prince<4>(rhs, tol);
  std::array<double, 4> y{1.0, 0.0, 0.0, 0.0};
  double t = pulse.t_start;

  std::vector<BlochVector> out(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double target = pulse.t_start + pulse.duration() * i / (n_samples - 1);
    stepper.integrate_to(t, y, target);
    const complex<double> a1{y[0], y[1]}, a2{y[2], y[3]};
    auto& b = out[static_cast<std::size_t>(i)];
    b.t = target;
    b.u = 2.0 * std::real(std::conj(a1) * a2);
    b.v = 2.0 * std::imag(std::conj(a2) * a1);
    b.w = std::norm(a2) - std::norm(a1);
  }
  return out;
}

GeneralizedArea generalized_area(const TwoBandModel& model, double k, const PulseSpec& pulse) {
  model.validate();
  pulse.validate();
  if (pulse.envelope == Envelope::static_field) {
    throw ConfigError("generalized_area: requires an oscillating drive");
  }
  const double w0 = pulse.omega0();

  const int spc = 512;
  const double cycles = pulse.duration() / pulse.period();
  const int n = std::max(64, static_cast<int>(std::ceil(cycles * spc)));
  GeneralizedArea out;
  out.t.resize(static_cast<std::size_t>(n) + 1);
  out.Omega_R.resize(static_cast<std::size_t>(n) + 1);
  const double h = pulse.duration() / n;
  double peak_wr = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = pulse.t_start + h * i;
    const double kk = kinetic_momentum(pulse, k, t);
    const double wr = pulse.envelope_at(t) * std::abs(model.xi_cv(kk)) / constants::hbar;
    const double detuning = model.Ecv(kk) / constants::hbar - w0;
    out.t[static_cast<std::size_t>(i)] = t;
    out.Omega_R[static_cast<std::size_t>(i)] = std::hypot(wr, detuning);
    peak_wr = std::max(peak_wr, wr);
  }
  out.area = 0.0;
  for (int i = 1; i <= n; ++i) {
    out.area += 0.5 * h *
                (out.Omega_R[static_cast<std::size_t>(i)] +
                 out.Omega_R[static_cast<std::size_t>(i) - 1]);
  }
  const double up = model_ponderomotive(model, pulse.F0, pulse.hbar_omega0, k);
  out.gamma_RP = (up > 0) ? constants::hbar * peak_wr / up
                          : std::numeric_limits<double>::infinity();
  out.area_counts = out.gamma_RP > 1.0;
  return out;
}

}  // namespace blochwave
