#include "blochwave/regimes.hpp"

#include <cmath>
#include <limits>

#include "blochwave/constants.hpp"
#include "blochwave/errors.hpp"
#include "blochwave/special_functions.hpp"

namespace blochwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double kane_up_numeric(const KaneTwoBand& band, double F0, double hbar_omega0, double beta,
                       double k0) {
  // K(t) excursion for the peak amplitude: Kx = k0 - (F0/hbar w0) sin(theta),
  // Ky = (beta F0 / hbar w0) cos(theta); the dispersion is isotropic in |K|.
  const double amp = F0 / hbar_omega0;
  const double e0 = band_energy(band, k0);
  const int n = 512;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {  // periodic trapezoid == midpoint sum
    const double theta = 2.0 * constants::pi * i / n;
    const double kx = k0 - amp * std::sin(theta);
    const double ky = beta * amp * std::cos(theta);
    const double kk = std::sqrt(kx * kx + ky * ky);
    acc += band_energy(band, kk);
  }
  return acc / n - e0;
}

}  // namespace

double ponderomotive(const PulseSpec& pulse, const BandDispersion& band) {
  validate(band);
  if (pulse.envelope == Envelope::static_field) {
    throw ConfigError("ponderomotive: requires an oscillating drive");
  }
  if (const auto* ema = std::get_if<EffectiveMass>(&band)) {
    if (!(ema->m > 0)) throw ConfigError("ponderomotive: reduced mass must be positive");
    const double f2 = pulse.F0 * pulse.F0 * (1.0 + pulse.beta * pulse.beta);
    return f2 * constants::hbar2_over_m0 /
           (4.0 * ema->m * pulse.hbar_omega0 * pulse.hbar_omega0);
  }
  if (const auto* kane = std::get_if<KaneTwoBand>(&band)) {
    return kane_up_numeric(*kane, pulse.F0, pulse.hbar_omega0, pulse.beta, 0.0);
  }
  const auto& tb = std::get<TightBinding>(band);
  const double gamma_dl = pulse.F0 * tb.a / pulse.hbar_omega0;
  double up = 0.0;
  for (std::size_t l = 1; l < tb.eps.size(); ++l) {
    up += tb.eps[l] * (bessel_j0(static_cast<double>(l) * gamma_dl) - 1.0);
  }
  return up;
}

RegimeReport adiabaticity_report(const MaterialRecord& material, const PulseSpec& pulse,
                                 const BandDispersion& band) {
  material.validate();
  pulse.validate();
  if (pulse.envelope == Envelope::static_field) {
    throw ConfigError("adiabaticity_report: requires an oscillating drive");
  }
  if (const auto* tb = std::get_if<TightBinding>(&band)) {
    const double gap0 = band_energy(*tb, 0.0);
    if (std::abs(gap0 - material.Eg) > 1e-6 * std::max(1.0, material.Eg)) {
      throw ConfigError("adiabaticity_report: hopping series does not reproduce the band gap at k = 0");
    }
  }

  RegimeReport r;
  const double hw0 = pulse.hbar_omega0;
  r.hbar_omegaB = pulse.F0 * material.a;
  r.hbar_omegaR = pulse.F0 * material.xi_max;
  r.Up = ponderomotive(pulse, band);
  r.N = material.Eg / hw0;
  r.gamma_DL = r.hbar_omegaB / hw0;
  r.gamma_BH = r.hbar_omegaB / material.Eg;
  r.gamma_RF0 = r.hbar_omegaR / hw0;
  r.gamma_RFg = r.hbar_omegaR / material.Eg;
  r.gamma_RB = material.xi_max / material.a;
  r.gamma_NP = r.Up / hw0;
  if (r.Up > 0) {
    r.gamma_K = std::sqrt(material.Eg / (4.0 * r.Up));
    r.gamma_BP = r.hbar_omegaB / r.Up;
    r.gamma_RP = r.hbar_omegaR / r.Up;
  } else {
    r.up_is_zero = true;
    r.gamma_K = kInf;
    r.gamma_BP = kInf;
    r.gamma_RP = kInf;
  }

  const double channels = (material.Eg + r.Up) / hw0;
  r.N_tilde = static_cast<long long>(std::floor(channels + 1.0));

  if (r.gamma_K > 3.0) {
    r.labels.push_back("multiphoton");
  } else if (r.gamma_K >= 1.0 / 3.0) {
    r.labels.push_back("diabatic_tunneling");
  } else {
    r.labels.push_back("adiabatic_tunneling");
  }
  if (r.gamma_RF0 < 1.0 / 3.0) {
    r.labels.push_back("envelope_rabi_flopping");
  } else if (r.gamma_RF0 <= 3.0) {
    r.labels.push_back("carrier_wave_rabi_flopping");
  } else {
    r.labels.push_back("rabi_tunneling");
  }
  for (int n = 1; n <= 3; ++n) {
    if (std::abs(r.gamma_DL - bessel_j0_zero(n)) < 0.05) {
      r.labels.push_back("near_dynamic_localization");
      break;
    }
  }
  if (std::abs(channels - std::round(channels)) < 1e-12) {
    r.labels.push_back("channel_count_boundary");
  }
  if (r.up_is_zero) r.labels.push_back("ponderomotive_zero");
  return r;
}

double crosscheck_resonant_relation(const RegimeReport& report, double beta) {
  if (!(report.gamma_RF0 > 0)) {
    throw ConfigError("crosscheck_resonant_relation: gamma_RF0 must be positive");
  }
  const double rhs = 1.0 / (2.0 * report.gamma_RF0 * std::sqrt(1.0 + beta * beta));
  return std::abs(report.gamma_K - rhs) / report.gamma_K;
}

}  // namespace blochwave
