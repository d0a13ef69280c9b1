#include "blochwave/geometry.hpp"

#include <cmath>

#include "blochwave/constants.hpp"
#include "blochwave/errors.hpp"

namespace blochwave {

using std::complex;

namespace {

using Spinor = std::array<complex<double>, 2>;

complex<double> overlap(const Spinor& a, const Spinor& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

std::array<complex<double>, 2> bloch_spinor(const std::array<double, 3>& d, int band) {
  const double dn = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  if (!(dn > 0)) throw NumericalError("bloch_spinor: gap closes (|d| = 0)");
  Spinor lower;
  if (d[2] <= 0.0) {
    lower = {complex<double>(d[2] - dn, 0.0), complex<double>(d[0], d[1])};
  } else {
    lower = {complex<double>(-d[0], d[1]), complex<double>(d[2] + dn, 0.0)};
  }
  const double norm = std::sqrt(std::norm(lower[0]) + std::norm(lower[1]));
  lower[0] /= norm;
  lower[1] /= norm;
  if (band == 0) return lower;
  if (band == 1) return {-std::conj(lower[1]), std::conj(lower[0])};
  throw ConfigError("bloch_spinor: band index must be 0 or 1");
}

double zak_phase(const BlochModel1D& model, int band, int nk) {
  if (nk < 4) throw ConfigError("zak_phase: need at least 4 k points");
  std::vector<Spinor> u(static_cast<std::size_t>(nk));
  double dmin = 1e300, dmax = 0.0;
  for (int j = 0; j < nk; ++j) {
    const double k = -constants::pi + 2.0 * constants::pi * j / nk;
    const auto d = model.d(k);
    const double dn = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    dmin = std::min(dmin, dn);
    dmax = std::max(dmax, dn);
    u[static_cast<std::size_t>(j)] = bloch_spinor(d, band);
  }
  if (dmin < 1e-8 * dmax) {
    throw NumericalError("zak_phase: gap closes along the loop");
  }
  complex<double> wilson{1.0, 0.0};
  for (int j = 0; j < nk; ++j) {
    const complex<double> link =
        overlap(u[static_cast<std::size_t>(j)], u[static_cast<std::size_t>((j + 1) % nk)]);
    if (std::abs(link) < 1e-6) {
      throw NumericalError("zak_phase: vanishing link overlap (gap closure or grid too coarse)");
    }
    wilson *= link / std::abs(link);
  }
  double gz = -std::arg(wilson);
  if (gz < 0) gz += 2.0 * constants::pi;
  return gz;
}

ChernResult chern_and_curvature(const BlochModel2D& model, int band, int nx, int ny) {
  if (nx < 4 || ny < 4) throw ConfigError("chern_and_curvature: grid too small");
  ChernResult out;
  out.nx = nx;
  out.ny = ny;

  std::vector<Spinor> u(static_cast<std::size_t>(nx) * ny);
  auto at = [&u, nx](int ix, int iy) -> Spinor& {
    return u[static_cast<std::size_t>(ix) + static_cast<std::size_t>(nx) * iy];
  };
  for (int iy = 0; iy < ny; ++iy) {
    const double ky = -constants::pi + 2.0 * constants::pi * iy / ny;
    for (int ix = 0; ix < nx; ++ix) {
      const double kx = -constants::pi + 2.0 * constants::pi * ix / nx;
      at(ix, iy) = bloch_spinor(model.d(kx, ky), band);
    }
  }

  const double dkx = 2.0 * constants::pi / nx;
  const double dky = 2.0 * constants::pi / ny;
  out.curvature.resize(u.size());
  double sum = 0.0;  // fixed traversal order keeps the residual reproducible
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const int jx = (ix + 1) % nx, jy = (iy + 1) % ny;
      const complex<double> plaq = overlap(at(ix, iy), at(jx, iy)) *
                                   overlap(at(jx, iy), at(jx, jy)) *
                                   overlap(at(jx, jy), at(ix, jy)) *
                                   overlap(at(ix, jy), at(ix, iy));
      if (std::abs(plaq) < 1e-24) {
        throw NumericalError("chern_and_curvature: vanishing plaquette (gap closure)");
      }
      const double phase = std::arg(plaq);
      out.curvature[static_cast<std::size_t>(ix) + static_cast<std::size_t>(nx) * iy] =
          -phase / (dkx * dky);
      sum += phase;
    }
  }
  out.C_raw = -sum / (2.0 * constants::pi);
  out.C = std::lround(out.C_raw);
  out.residual = std::abs(out.C_raw - static_cast<double>(out.C));
  out.residual_flagged = out.residual > 0.01;
  out.sigma_xy = static_cast<double>(out.C) / constants::hbar;  // e^2/hbar prefactor, e = 1

  // quantum metric from projected, phase-aligned central differences
  out.metric.resize(u.size());
  auto aligned = [](const Spinor& ref, Spinor n) {
    const complex<double> o = overlap(ref, n);
    const double mag = std::abs(o);
    if (mag > 1e-14) {
      const complex<double> ph = std::conj(o) / mag;
      n[0] *= ph;
      n[1] *= ph;
    }
    return n;
  };
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const Spinor& c = at(ix, iy);
      const Spinor xp = aligned(c, at((ix + 1) % nx, iy));
      const Spinor xm = aligned(c, at((ix + nx - 1) % nx, iy));
      const Spinor yp = aligned(c, at(ix, (iy + 1) % ny));
      const Spinor ym = aligned(c, at(ix, (iy + ny - 1) % ny));
      Spinor dx{(xp[0] - xm[0]) / (2.0 * dkx), (xp[1] - xm[1]) / (2.0 * dkx)};
      Spinor dy{(yp[0] - ym[0]) / (2.0 * dky), (yp[1] - ym[1]) / (2.0 * dky)};
      const complex<double> cx = overlap(c, dx);
      const complex<double> cy = overlap(c, dy);
      dx = {dx[0] - cx * c[0], dx[1] - cx * c[1]};
      dy = {dy[0] - cy * c[0], dy[1] - cy * c[1]};
      const double gxx = std::real(overlap(dx, dx));
      const double gyy = std::real(overlap(dy, dy));
      const double gxy = std::real(overlap(dx, dy));
      out.metric[static_cast<std::size_t>(ix) + static_cast<std::size_t>(nx) * iy] = {gxx, gxy,
                                                                                      gyy};
    }
  }
  return out;
}

std::vector<double> ws_ladder_with_zak(double e_bar, double a, double F0, double zak,
                                       int l_min, int l_max) {
  if (!(F0 > 0)) throw ConfigError("ws_ladder_with_zak: field must be positive");
  if (l_max < l_min) throw ConfigError("ws_ladder_with_zak: empty rung range");
  std::vector<double> out;
  for (int l = l_min; l <= l_max; ++l) {
    out.push_back(e_bar + a * F0 * (l + zak / (2.0 * constants::pi)));
  }
  return out;
}

DispersionND separable_dispersion(const BandDispersion& bx, const BandDispersion* by,
                                  const BandDispersion* bz) {
  validate(bx);
  if (by) validate(*by);
  if (bz) validate(*bz);
  const BandDispersion bxc = bx;
  const BandDispersion byc = by ? *by : BandDispersion{};
  const BandDispersion bzc = bz ? *bz : BandDispersion{};
  const bool has_y = by != nullptr, has_z = bz != nullptr;
  DispersionND d;
  d.energy = [bxc, byc, bzc, has_y, has_z](const std::array<double, 3>& k) {
    double e = band_energy(bxc, k[0]);
    if (has_y) e += band_energy(byc, k[1]);
    if (has_z) e += band_energy(bzc, k[2]);
    return e;
  };
  d.gradient = [bxc, byc, bzc, has_y, has_z](const std::array<double, 3>& k) {
    std::array<double, 3> g{constants::hbar * band_velocity(bxc, k[0]), 0.0, 0.0};
    if (has_y) g[1] = constants::hbar * band_velocity(byc, k[1]);
    if (has_z) g[2] = constants::hbar * band_velocity(bzc, k[2]);
    return g;
  };
  return d;
}

AnomalousTrajectory anomalous_trajectory(
    const DispersionND& band,
    const std::function<std::array<double, 3>(const std::array<double, 3>&)>& curvature,
    const std::function<std::array<double, 3>(double)>& field,
    const std::array<double, 3>& B, const std::array<double, 3>& k0,
    const std::array<double, 3>& r0, double duration, int n_steps) {
  if (!band.energy || !band.gradient) throw ConfigError("anomalous_trajectory: band callbacks required");
  if (n_steps < 1 || !(duration > 0)) throw ConfigError("anomalous_trajectory: invalid duration or step count");
  const bool has_b = B[0] != 0.0 || B[1] != 0.0 || B[2] != 0.0;

  // one derivative evaluation; with B the rdot equation is implicit
  auto derivs = [&](double t, const std::array<double, 3>& K, int step)
      -> std::pair<std::array<double, 3>, std::array<double, 3>> {
    const std::array<double, 3> f = field ? field(t) : std::array<double, 3>{0, 0, 0};
    const std::array<double, 3> grad = band.gradient(K);
    const std::array<double, 3> v{grad[0] / constants::hbar, grad[1] / constants::hbar,
                                  grad[2] / constants::hbar};
    const std::array<double, 3> om =
        curvature ? curvature(K) : std::array<double, 3>{0, 0, 0};
    std::array<double, 3> rdot = v;
    if (has_b || om[0] != 0 || om[1] != 0 || om[2] != 0) {
      // rdot = v + (e/hbar)(F + rdot x B) x Omega
      bool converged = !has_b;
      for (int it = 0; it < 64; ++it) {
        const auto lorentz = cross(rdot, B);
        const std::array<double, 3> drive{(f[0] + lorentz[0]) / constants::hbar,
                                          (f[1] + lorentz[1]) / constants::hbar,
                                          (f[2] + lorentz[2]) / constants::hbar};
        const auto anom = cross(drive, om);
        const std::array<double, 3> next{v[0] + anom[0], v[1] + anom[1], v[2] + anom[2]};
        const double delta = std::max({std::abs(next[0] - rdot[0]), std::abs(next[1] - rdot[1]),
                                       std::abs(next[2] - rdot[2])});
        rdot = next;
        if (delta < 1e-12) {
          converged = true;
          break;
        }
      }
      if (!converged) {
        throw NumericalError("anomalous_trajectory: fixed-point iteration for rdot failed at t = " +
                             std::to_string(t) + " (step " + std::to_string(step) + ")");
      }
    }
    const auto lorentz = cross(rdot, B);
    const std::array<double, 3> kdot{-(f[0] + lorentz[0]) / constants::hbar,
                                     -(f[1] + lorentz[1]) / constants::hbar,
                                     -(f[2] + lorentz[2]) / constants::hbar};
    return {kdot, rdot};
  };

  AnomalousTrajectory out;
  out.t.resize(static_cast<std::size_t>(n_steps) + 1);
  out.K.resize(out.t.size());
  out.r.resize(out.t.size());
  std::array<double, 3> K = k0, r = r0;
  out.t[0] = 0.0;
  out.K[0] = K;
  out.r[0] = r;
  const double h = duration / n_steps;
  for (int s = 0; s < n_steps; ++s) {
    const double t = h * s;
    // classical RK4 on (K, r)
    const auto [k1, r1] = derivs(t, K, s);
    std::array<double, 3> K2;
    for (int i = 0; i < 3; ++i) K2[static_cast<std::size_t>(i)] = K[static_cast<std::size_t>(i)] + 0.5 * h * k1[static_cast<std::size_t>(i)];
    const auto [k2, r2] = derivs(t + 0.5 * h, K2, s);
    std::array<double, 3> K3;
    for (int i = 0; i < 3; ++i) K3[static_cast<std::size_t>(i)] = K[static_cast<std::size_t>(i)] + 0.5 * h * k2[static_cast<std::size_t>(i)];
    const auto [k3, r3] = derivs(t + 0.5 * h, K3, s);
    std::array<double, 3> K4;
    for (int i = 0; i < 3; ++i) K4[static_cast<std::size_t>(i)] = K[static_cast<std::size_t>(i)] + h * k3[static_cast<std::size_t>(i)];
    const auto [k4, r4] = derivs(t + h, K4, s);
    for (int i = 0; i < 3; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      K[ii] += h / 6.0 * (k1[ii] + 2.0 * k2[ii] + 2.0 * k3[ii] + k4[ii]);
      r[ii] += h / 6.0 * (r1[ii] + 2.0 * r2[ii] + 2.0 * r3[ii] + r4[ii]);
    }
    out.t[static_cast<std::size_t>(s) + 1] = t + h;
    out.K[static_cast<std::size_t>(s) + 1] = K;
    out.r[static_cast<std::size_t>(s) + 1] = r;
  }
  return out;
}

}  // namespace blochwave
