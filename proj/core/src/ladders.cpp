#include "blochwave/ladders.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "blochwave/constants.hpp"
#include "blochwave/errors.hpp"

namespace blochwave {

namespace {

double modified_energy(const TightBinding& band, double F0,
                       const std::function<double(double)>& xnn, double k) {
  double e = band_energy(BandDispersion{band}, k);
  if (xnn) e += F0 * xnn(k);
  return e;
}

double zone_average(const TightBinding& band, double F0,
                    const std::function<double(double)>& xnn) {
  const int n = 1024;  // periodic trapezoid over the zone
  const double g = 2.0 * constants::pi / band.a;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = -0.5 * g + g * i / n;
    acc += modified_energy(band, F0, xnn, k);
  }
  return acc / n;
}

}  // namespace

KaneLadderResult kane_ladder(const TightBinding& band, double F0,
                             const std::function<double(double)>& xnn, int l_min,
                             int l_max) {
  validate(BandDispersion{band});
  if (!(F0 > 0)) throw ConfigError("kane_ladder: the ladder is undefined at zero field");
  if (l_max < l_min) throw ConfigError("kane_ladder: empty rung range");
  KaneLadderResult out;
  out.hbar_omegaB = F0 * band.a;
  out.e_bar = zone_average(band, F0, xnn);
  for (int l = l_min; l <= l_max; ++l) {
    out.rungs.push_back({l, out.e_bar + l * out.hbar_omegaB, out.e_bar, out.hbar_omegaB});
  }
  return out;
}

EtaSamples kane_eta(const TightBinding& band, double F0,
                    const std::function<double(double)>& xnn, double energy,
                    int n_samples) {
  validate(BandDispersion{band});
  if (!(F0 > 0)) throw ConfigError("kane_eta: the phase function is undefined at zero field");
  if (n_samples < 8) throw ConfigError("kane_eta: too few samples");

  const double half = constants::pi / band.a;
  EtaSamples out;
  out.kx.resize(static_cast<std::size_t>(n_samples) + 1);
  out.eta.resize(static_cast<std::size_t>(n_samples) + 1);
  const double h = 2.0 * half / n_samples;

  // cumulative trapezoid of E_l - E'(k) from -pi/a, then rebase to k = 0
  std::vector<double> phase(out.kx.size());
  double acc = 0.0;
  double prev = energy - modified_energy(band, F0, xnn, -half);
  phase[0] = 0.0;
  for (int i = 1; i <= n_samples; ++i) {
    const double k = -half + h * i;
    const double cur = energy - modified_energy(band, F0, xnn, k);
    acc += 0.5 * h * (prev + cur);
    phase[static_cast<std::size_t>(i)] = acc;
    prev = cur;
  }
  const double at_zero = phase[static_cast<std::size_t>(n_samples / 2)];
  for (int i = 0; i <= n_samples; ++i) {
    out.kx[static_cast<std::size_t>(i)] = -half + h * i;
    out.eta[static_cast<std::size_t>(i)] =
        std::polar(1.0, -(phase[static_cast<std::size_t>(i)] - at_zero) / F0);
  }
  return out;
}

LocalizationLengths localization_lengths(double bandwidth, double wannier_extent,
                                         double F0) {
  if (!(F0 > 0)) throw ConfigError("localization_lengths: field must be positive");
  if (!(bandwidth >= 0) || !(wannier_extent >= 0)) {
    throw ConfigError("localization_lengths: bandwidth and Wannier extent must be >= 0");
  }
  LocalizationLengths out;
  out.L_SC = bandwidth / F0;
  out.L_K = std::hypot(out.L_SC, wannier_extent);
  return out;
}

WSLevels ws_levels(const KaneRung& rung_c, const KaneRung& rung_v,
                   const std::vector<double>& couplings, int truncation) {
  if (truncation < 2) throw ConfigError("ws_levels: truncation must be >= 2");
  auto coupling_at = [&couplings](int dl) -> double {
    const std::size_t idx = static_cast<std::size_t>(std::abs(dl));
    return idx < couplings.size() ? couplings[idx] : 0.0;
  };

  WSLevels out;
  if (truncation == 2) {
    const double ec = rung_c.energy, ev = rung_v.energy;
    const double v = coupling_at(rung_v.l - rung_c.l);
    const double mid = 0.5 * (ec + ev);
    const double split = 0.5 * std::hypot(ec - ev, 2.0 * v);
    out.energies = {mid - split, mid + split};
    return out;
  }

  const int n_c = (truncation + 1) / 2;
  const int n_v = truncation / 2;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(truncation, truncation);
  for (int i = 0; i < n_c; ++i) {
    h(i, i) = rung_c.e_bar + (rung_c.l + i) * rung_c.hbar_omegaB;
  }
  for (int j = 0; j < n_v; ++j) {
    h(n_c + j, n_c + j) = rung_v.e_bar + (rung_v.l + j) * rung_v.hbar_omegaB;
  }
  for (int i = 0; i < n_c; ++i) {
    for (int j = 0; j < n_v; ++j) {
      const int dl = (rung_v.l + j) - (rung_c.l + i);
      h(i, n_c + j) = coupling_at(dl);
      h(n_c + j, i) = coupling_at(dl);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("ws_levels: eigenvalue solver failed");
  }
  out.energies.assign(solver.eigenvalues().data(),
                      solver.eigenvalues().data() + truncation);
  return out;
}

std::vector<double> ws_eigenvalues(const std::vector<std::complex<double>>& matrix, int n) {
  if (n < 1 || matrix.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw ConfigError("ws_eigenvalues: matrix size mismatch");
  }
  Eigen::MatrixXcd h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      h(i, j) = matrix[static_cast<std::size_t>(i) * n + j];
    }
  }
  if (!h.isApprox(h.adjoint(), 1e-12)) {
    throw ConfigError("ws_eigenvalues: coupling matrix must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("ws_eigenvalues: eigenvalue solver failed");
  }
  return std::vector<double>(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
}

double hybridization_field(double Eg, double a, int ell) {
  if (!(Eg > 0) || !(a > 0) || ell < 1) {
    throw ConfigError("hybridization_field: need Eg > 0, a > 0, ell >= 1");
  }
  return Eg / (ell * a);
}

FkeResult fke_absorption(double hbar_omega, double F0, double m, double Eg) {
  if (!(F0 > 0)) throw ConfigError("fke_absorption: field must be positive");
  if (!(m > 0) || !(Eg > 0)) throw ConfigError("fke_absorption: m and Eg must be positive");
  constexpr double delta = 1e-6;  // eV
  if (hbar_omega >= Eg - delta) {
    throw ConfigError("fke_absorption: photon energy too close to the gap; the 1/(Eg - hbar omega) prefactor diverges");
  }
  FkeResult out;
  out.hbar_theta =
      std::cbrt(F0 * F0 * constants::hbar2_over_m0 / (2.0 * m));
  const double r = (Eg - hbar_omega) / out.hbar_theta;
  out.alpha_rel = std::exp(-(4.0 / 3.0) * (std::pow(r, 1.5) - 1.0)) / r;
  return out;
}

}  // namespace blochwave
