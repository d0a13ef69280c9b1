#include "blochwave/band.hpp"

#include <cmath>

#include "blochwave/constants.hpp"
#include "blochwave/errors.hpp"

namespace blochwave {

void validate(const BandDispersion& band) {
  std::visit(
      [](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, EffectiveMass>) {
          if (b.m == 0.0 || !std::isfinite(b.m)) throw ConfigError("band: effective mass must be nonzero");
        } else if constexpr (std::is_same_v<T, KaneTwoBand>) {
          if (!(b.Eg > 0)) throw ConfigError("band: Kane dispersion requires Eg > 0");
          if (!(b.m > 0)) throw ConfigError("band: Kane dispersion requires m > 0");
        } else {
          if (!(b.a > 0)) throw ConfigError("band: lattice constant must be positive");
          if (b.eps.empty()) throw ConfigError("band: hopping series is empty");
        }
      },
      band);
}

double band_energy(const BandDispersion& band, double k) {
  return std::visit(
      [k](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, EffectiveMass>) {
          return constants::hbar2_over_m0 * k * k / (2.0 * b.m);
        } else if constexpr (std::is_same_v<T, KaneTwoBand>) {
          return b.Eg * std::sqrt(1.0 + constants::hbar2_over_m0 * k * k / (b.m * b.Eg));
        } else {
          double e = 0.0;
          for (std::size_t l = 0; l < b.eps.size(); ++l) {
            e += b.eps[l] * std::cos(k * static_cast<double>(l) * b.a);
          }
          return e;
        }
      },
      band);
}

double band_velocity(const BandDispersion& band, double k) {
  return std::visit(
      [k](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, EffectiveMass>) {
          return constants::hbar_over_m0 * k / b.m;
        } else if constexpr (std::is_same_v<T, KaneTwoBand>) {
          const double root = std::sqrt(1.0 + constants::hbar2_over_m0 * k * k / (b.m * b.Eg));
          return constants::hbar_over_m0 * k / (b.m * root);
        } else {
          double v = 0.0;
          for (std::size_t l = 1; l < b.eps.size(); ++l) {
            const double la = static_cast<double>(l) * b.a;
            v -= b.eps[l] * la * std::sin(k * la);
          }
          return v / constants::hbar;
        }
      },
      band);
}

double curvature_mass(const TightBinding& tb) {
  double d2 = 0.0;  // E''(0) = -sum l^2 a^2 eps_l
  for (std::size_t l = 1; l < tb.eps.size(); ++l) {
    d2 -= static_cast<double>(l * l) * tb.a * tb.a * tb.eps[l];
  }
  if (d2 == 0.0) throw ConfigError("band: zero curvature at k = 0, no effective mass");
  return constants::hbar2_over_m0 / d2;
}

TightBinding tb_difference(const TightBinding& c, const TightBinding& v) {
  if (c.a != v.a) throw ConfigError("band: hopping tables live on different lattices");
  TightBinding d;
  d.a = c.a;
  d.eps.resize(std::max(c.eps.size(), v.eps.size()), 0.0);
  for (std::size_t l = 0; l < d.eps.size(); ++l) {
    const double ec = l < c.eps.size() ? c.eps[l] : 0.0;
    const double ev = l < v.eps.size() ? v.eps[l] : 0.0;
    d.eps[l] = ec - ev;
  }
  return d;
}

double kane_dipole(double Eg, double m) {
  if (!(Eg > 0) || !(m > 0)) throw ConfigError("kane_dipole: Eg and m must be positive");
  return 0.5 * std::sqrt(constants::hbar2_over_m0 / (m * Eg));
}

void KGrid::validate() const {
  if (dimension < 1 || dimension > 3) throw ConfigError("kgrid: dimension must be 1..3");
  for (int i = 0; i < dimension; ++i) {
    if (points[static_cast<std::size_t>(i)] < 2) throw ConfigError("kgrid: need at least 2 points per axis");
    const double f = fraction[static_cast<std::size_t>(i)];
    if (!(f > 0)) throw ConfigError("kgrid: extent must be positive");
  }
}

std::vector<double> KGrid::axis(int i, double a) const {
  validate();
  if (i < 0 || i >= dimension) throw ConfigError("kgrid: axis index out of range");
  if (!(a > 0)) throw ConfigError("kgrid: lattice constant must be positive");
  const int n = points[static_cast<std::size_t>(i)];
  const double half = fraction[static_cast<std::size_t>(i)] * constants::pi / a;
  std::vector<double> ks(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    ks[static_cast<std::size_t>(j)] = -half + 2.0 * half * j / n;  // right endpoint excluded
  }
  return ks;
}

}  // namespace blochwave
