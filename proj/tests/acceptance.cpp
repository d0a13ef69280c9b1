// Acceptance suite: one pass/fail line per criterion, every tolerance pinned
// in code. Exit status is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "blochwave/band.hpp"
#include "blochwave/constants.hpp"
#include "blochwave/geometry.hpp"
#include "blochwave/interband.hpp"
#include "blochwave/intraband.hpp"
#include "blochwave/ladders.hpp"
#include "blochwave/pulse.hpp"
#include "blochwave/regimes.hpp"
#include "blochwave/resonant.hpp"
#include "blochwave/special_functions.hpp"

using namespace blochwave;
namespace bc = blochwave::constants;
using std::complex;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

int worker_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(4u, hw ? hw : 1u));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// quartz-like nonparabolic gap with the tabulated interband dipole
TwoBandModel quartz_kane_model() {
  TwoBandModel model = TwoBandModel::kane(9.0, 0.5, 4.9);
  model.xi_cv = [](double) { return complex<double>(0.37, 0.0); };
  return model;
}

// ---------------------------------------------------------------- A01

void a01_channel_closing() {
  const double hw0 = 1.8;
  const auto model = quartz_kane_model();
  KGrid grid;
  grid.points[0] = 64;
  grid.fraction[0] = 1.5;  // the gap model is unbounded; cover the active shells
  const auto ks = grid.axis(0, model.a);
  std::vector<double> f0s;
  for (int i = 0; i < 40; ++i) f0s.push_back(0.4 * std::pow(2.0 / 0.4, i / 39.0));
  const auto rows = excitation_rate_scan(model, f0s, hw0, 10.0, ks,
                                         {1e-13, 1e-13, 1e-3, 1e-15}, worker_threads());

  // slopes over the rising parts of the two staircase segments around the
  // first channel step; the decreasing intervals are the closing itself
  const long long n_below = rows.front().N_tilde;
  std::vector<double> xb, yb, xa, ya;
  bool closing_near_one = false;
  for (const auto& r : rows) {
    if (r.closing) {
      const double gnp = model_ponderomotive(model, r.F0, hw0) / hw0;
      if (gnp >= 0.6 && gnp <= 1.6) closing_near_one = true;
      continue;
    }
    if (r.N_tilde == n_below) {
      xb.push_back(std::log(r.F0));
      yb.push_back(std::log(r.rate));
    } else if (r.N_tilde == n_below + 1) {
      xa.push_back(std::log(r.F0));
      ya.push_back(std::log(r.rate));
    }
  }
  const double below = fit_slope(xb, yb);
  const double above = fit_slope(xa, ya);
  const bool pass = std::abs(below - 10.0) <= 1.0 && std::abs(above - 12.0) <= 1.5 &&
                    closing_near_one && xb.size() >= 8 && xa.size() >= 4;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "slope below first closing %.2f (want 10+-1, %zu pts), above %.2f "
                "(want 12+-1.5, %zu pts), decreasing interval near gamma_NP=1: %s",
                below, xb.size(), above, ya.size(), closing_near_one ? "yes" : "no");
  report("A01 channel-closing staircase", pass, buf);
}

// ---------------------------------------------------------------- A02

void a02_dynamic_localization() {
  const TightBinding band{4.9, {0.0, -1.65}};
  const double k0 = 0.5 * bc::pi / band.a;
  const double scale = std::abs(weak_field_drift_scale(band, k0));
  bool pass = true;
  std::string detail;
  for (int n = 1; n <= 2; ++n) {
    const double drift = std::abs(cycle_drift(band, k0, bessel_j0_zero(n)));
    pass = pass && drift < 1e-6 * scale;
    detail += "drift/scale at zero " + std::to_string(n) + ": " +
              std::to_string(drift / scale) + "  ";
  }
  const double ratio = cycle_drift(band, k0, 2.0) / weak_field_drift_scale(band, k0);
  pass = pass && std::abs(ratio - 0.2239) <= 1e-3 * 0.2239;
  detail += "ratio at gamma_DL=2: " + std::to_string(ratio) + " (want 0.2239 +- 0.1%)";
  report("A02 dynamic localization", pass, detail);
}

// ---------------------------------------------------------------- A03

void a03_trajectory_regimes() {
  const TightBinding band{4.9, {0.0, -1.65}};
  const double hw0 = PulseSpec::photon_energy_from_wavelength_nm(750.0);
  const double m = curvature_mass(band);
  auto rms_diff = [&](double f0) {
    const auto p = PulseSpec::monochromatic_cycles(f0, hw0, 8.0);
    const auto tb = trajectory(BandDispersion{band}, 0.0, p, 2048);
    const auto ema = trajectory(BandDispersion{EffectiveMass{m}}, 0.0, p, 2048);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < tb.v.size(); ++i) {
      num += (tb.v[i] - ema.v[i]) * (tb.v[i] - ema.v[i]);
      den += tb.v[i] * tb.v[i];
    }
    return std::sqrt(num / den);
  };
  const double weak = rms_diff(0.05);
  const double strong = rms_diff(1.0);
  const bool pass = weak < 0.02 && strong > 0.20;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "rms velocity difference: %.4f at 0.05 V/A (want < 0.02), %.3f at 1 V/A "
                "(want > 0.20)",
                weak, strong);
  report("A03 trajectory regimes", pass, buf);
}

// ---------------------------------------------------------------- A04

void a04_localization_lengths() {
  const auto l = localization_lengths(3.3, 3.0, 0.1);
  const double closed_form = std::sqrt(33.0 * 33.0 + 3.0 * 3.0);
  bool pass = std::abs(l.L_K - closed_form) < 1e-9;
  bool approach = true;
  for (double f0 : {10.0, 20.0, 50.0}) {
    const double lk = localization_lengths(3.3, 3.0, f0).L_K;
    approach = approach && lk >= 3.0 && lk <= 1.05 * 3.0;
  }
  pass = pass && approach;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "L_K(0.1 V/A) = %.9f A (closed form %.9f), approaches 3 A within 5%% for "
                "F0 >= 10: %s",
                l.L_K, closed_form, approach ? "yes" : "no");
  report("A04 localization lengths", pass, buf);
}

// ---------------------------------------------------------------- A05

void a05_anticrossing() {
  const double a = 4.9, ebar_c = 5.0, ebar_v = 4.4, v_coupling = 0.05;
  const int ell = 2;
  // degeneracy of c(l=0) and v(l=2) at F0* = (ebar_c - ebar_v) / (ell a)
  const double f_star = (ebar_c - ebar_v) / (ell * a);
  double min_gap = 1e300;
  const int n = 1000;  // even count: the midpoint hits F0* exactly
  for (int i = 0; i <= n; ++i) {
    const double f0 = f_star * (0.5 + 1.0 * i / n);
    const KaneRung rung_c{0, ebar_c, ebar_c, f0 * a};
    const KaneRung rung_v{ell, ebar_v + ell * f0 * a, ebar_v, f0 * a};
    const auto ws = ws_levels(rung_c, rung_v, {0.0, 0.0, v_coupling}, 2);
    min_gap = std::min(min_gap, ws.energies[1] - ws.energies[0]);
  }
  const bool pass = std::abs(min_gap - 2.0 * v_coupling) < 1e-9;
  char buf[128];
  std::snprintf(buf, sizeof buf, "minimum gap over the sweep %.12f eV (want 2|V| = %.12f)",
                min_gap, 2.0 * v_coupling);
  report("A05 ladder anticrossing", pass, buf);
}

// ---------------------------------------------------------------- A06

void a06_rabi_regimes() {
  const double hw0 = 2.0 * bc::pi * bc::hbar / 2.8;
  const double sine_square_ratio = PulseSpec::sine_square_duration(1.0);

  // (a) envelope regime, resonant
  const TwoLevelSystem resonant{0.0, hw0, 1.0};
  const double f0_weak = 0.05 * hw0;
  const double t_weak = 4.0 * bc::pi * bc::hbar / f0_weak;  // envelope area 2 pi
  const auto p_weak =
      PulseSpec::sine_square_fwhm(f0_weak, hw0, t_weak / sine_square_ratio);
  const auto weak = solve_two_level(resonant, p_weak, {1e-11, 1e-11, 1e-3, 1e-15}, 2001);
  double max_dev = 0.0;
  for (const auto& b : weak) {
    max_dev = std::max(max_dev, std::abs(b.w - rwa_envelope_inversion(resonant, p_weak, b.t)));
  }
  const double end_weak = std::abs(weak.back().w + 1.0);

  // (b) carrier-wave regime: the cited inversion dynamics are those of an
  // off-resonantly driven line under a near-IR carrier
  const TwoLevelSystem detuned{0.0, 1.42 * hw0, 1.0};
  const double f0_strong = hw0;  // gamma_RF0 = 1
  const double t_strong = 4.0 * bc::pi * bc::hbar / hw0;  // two-cycle window
  const auto p_strong =
      PulseSpec::sine_square_fwhm(f0_strong, hw0, t_strong / sine_square_ratio);
  const auto strong = solve_two_level(detuned, p_strong, {1e-11, 1e-11, 1e-3, 1e-15}, 2001);
  const double end_strong = std::abs(strong.back().w + 1.0);

  const bool pass = end_weak <= 0.01 && max_dev <= 0.05 && end_strong > 0.05;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "weak: |w_end+1| = %.4f (<= 0.01), max RWA deviation %.4f (<= 0.05); "
                "strong: |w_end+1| = %.3f (> 0.05)",
                end_weak, max_dev, end_strong);
  report("A06 Rabi regimes", pass, buf);
}

// ---------------------------------------------------------------- A07

void a07_perturbative_consistency() {
  const double hw0 = 1.8;
  const auto model = quartz_kane_model();
  const double k = 0.30;
  bool five_percent = true, improvement = true;
  int gated = 0;
  for (int i = 0; i < 20; ++i) {
    const double f0 = 0.05 * std::pow(0.45 / 0.05, i / 19.0);  // below the first closing
    const auto p = PulseSpec::monochromatic_cycles(f0, hw0, 10.0);
    const auto traj =
        propagate_two_band(model, {k}, p, {1e-13, 1e-13, 1e-3, 1e-15}, 24, 1);
    double peak = 0.0;
    for (const auto& snap : traj.snapshots) peak = std::max(peak, std::norm(snap.a_c[0]));
    const auto corr = dyson_corrections(model, k, p, p.t_end, 2, 4096);
    const double full = traj.final_population[0];
    const double pop1 = std::norm(corr[0]);
    const double pop2 = std::norm(corr[0] + corr[1]);
    if (peak < 1e-4) {
      ++gated;
      if (std::abs(full - pop1) > 0.05 * pop1) five_percent = false;
    }
    if (std::abs(pop2 - full) >= std::abs(pop1 - full)) improvement = false;
  }
  const bool pass = five_percent && improvement && gated >= 5;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "first-order within 5%% at %d gated points: %s; order-2 strictly reduces "
                "the error at all 20 points: %s",
                gated, five_percent ? "yes" : "no", improvement ? "yes" : "no");
  report("A07 perturbative consistency", pass, buf);
}

// ---------------------------------------------------------------- A08

void a08_unitarity_physicality() {
  const TightBinding cv{3.19, {5.95, -2.5}};
  auto model = TwoBandModel::tight_binding(cv, 1.74);
  const double hw0 = PulseSpec::photon_energy_from_wavelength_nm(750.0);
  const auto p = PulseSpec::sine_square_fwhm(0.5, hw0, 3.7);
  KGrid grid;
  grid.points[0] = 96;
  const auto ks = grid.axis(0, cv.a);
  const int threads = worker_threads();

  const auto coherent = propagate_two_band(model, ks, p, {}, 2, threads);
  double max_drift = 0.0;
  for (double d : coherent.norm_drift) max_drift = std::max(max_drift, d);

  const auto dm = propagate_with_dephasing(model, ks, p, 2.0, {}, 16, threads);
  double min_eig = 1.0, max_eig = 0.0;
  for (const auto& snap : dm.snapshots) {
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const double mid = 0.5 * (snap.f_v[i] + snap.f_c[i]);
      const double rad = std::sqrt(0.25 * std::pow(snap.f_v[i] - snap.f_c[i], 2) +
                                   std::norm(snap.rho_cv[i]));
      min_eig = std::min(min_eig, mid - rad);
      max_eig = std::max(max_eig, mid + rad);
    }
  }

  const auto undamped = propagate_with_dephasing(
      model, ks, p, std::numeric_limits<double>::infinity(), {}, 2, threads);
  double max_pop_diff = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    max_pop_diff = std::max(max_pop_diff, std::abs(undamped.final_population[i] -
                                                   coherent.final_population[i]));
  }

  const bool pass = max_drift < 1e-8 && min_eig > -1e-9 && max_eig < 1.0 + 1e-9 &&
                    max_pop_diff < 1e-6;
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "norm drift %.2e (< 1e-8); density-matrix eigenvalues in [%.2e, 1%+.2e]; "
                "undamped-density-matrix vs amplitude populations differ by %.2e (< 1e-6)",
                max_drift, min_eig, max_eig - 1.0, max_pop_diff);
  report("A08 unitarity and physicality", pass, buf);
}

// ---------------------------------------------------------------- A09

void a09_topology() {
  std::mt19937 rng(20240817u);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * bc::pi);

  BlochModel2D qwz_m1{[](double kx, double ky) {
    return std::array<double, 3>{std::sin(kx), std::sin(ky), -1.0 + std::cos(kx) + std::cos(ky)};
  }};
  BlochModel2D qwz_m3{[](double kx, double ky) {
    return std::array<double, 3>{std::sin(kx), std::sin(ky), -3.0 + std::cos(kx) + std::cos(ky)};
  }};
  const auto r1 = chern_and_curvature(qwz_m1, 0, 200, 200);
  const auto r0 = chern_and_curvature(qwz_m3, 0, 200, 200);

  BlochModel1D ssh_topo{[](double k) {
    return std::array<double, 3>{0.4 + 1.0 * std::cos(k), 1.0 * std::sin(k), 0.0};
  }};
  BlochModel1D ssh_triv{[](double k) {
    return std::array<double, 3>{1.0 + 0.4 * std::cos(k), 0.4 * std::sin(k), 0.0};
  }};
  // winding of the planar vector as the independent oracle
  auto winding = [](const BlochModel1D& m) {
    double total = 0.0;
    double prev = std::atan2(m.d(-bc::pi)[1], m.d(-bc::pi)[0]);
    for (int j = 1; j <= 4096; ++j) {
      const double k = -bc::pi + 2.0 * bc::pi * j / 4096;
      const double cur = std::atan2(m.d(k)[1], m.d(k)[0]);
      total += std::remainder(cur - prev, 2.0 * bc::pi);
      prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * bc::pi)));
  };
  const double z_topo = zak_phase(ssh_topo, 0);
  const double z_triv = zak_phase(ssh_triv, 0);
  const bool zak_ok = winding(ssh_topo) == 1 && std::abs(z_topo - bc::pi) < 1e-9 &&
                      winding(ssh_triv) == 0 &&
                      std::min(z_triv, 2.0 * bc::pi - z_triv) < 1e-9;

  // gauge invariance: rebuild the Wilson loop from randomly redressed spinors
  const int nk = 512;
  complex<double> wilson{1.0, 0.0};
  std::vector<std::array<complex<double>, 2>> u(nk);
  for (int j = 0; j < nk; ++j) {
    const double k = -bc::pi + 2.0 * bc::pi * j / nk;
    u[static_cast<std::size_t>(j)] = bloch_spinor(ssh_topo.d(k), 0);
    const auto ph = std::polar(1.0, phase(rng));
    u[static_cast<std::size_t>(j)][0] *= ph;
    u[static_cast<std::size_t>(j)][1] *= ph;
  }
  for (int j = 0; j < nk; ++j) {
    const auto& A = u[static_cast<std::size_t>(j)];
    const auto& B = u[static_cast<std::size_t>((j + 1) % nk)];
    const auto link = std::conj(A[0]) * B[0] + std::conj(A[1]) * B[1];
    wilson *= link / std::abs(link);
  }
  double z_redressed = -std::arg(wilson);
  if (z_redressed < 0) z_redressed += 2.0 * bc::pi;
  const bool gauge_ok = std::abs(z_redressed - zak_phase(ssh_topo, 0, nk)) < 1e-9;

  const bool pass = std::abs(r1.C) == 1 && r1.residual < 1e-6 && r0.C == 0 &&
                    r0.residual < 1e-6 && zak_ok && gauge_ok;
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "C(u=-1) = %ld (residual %.1e), C(u=-3) = %ld (residual %.1e); zak {pi, 0} "
                "match winding oracle: %s; gauge redressing at 1e-9: %s",
                r1.C, r1.residual, r0.C, r0.residual, zak_ok ? "yes" : "no",
                gauge_ok ? "yes" : "no");
  report("A09 topology", pass, buf);
}

// ---------------------------------------------------------------- A10

void a10_ponderomotive_limits() {
  const TightBinding cv{4.9, {10.95, -1.95}};  // gap 9 eV at the zone center
  const double hw0 = PulseSpec::photon_energy_from_wavelength_nm(750.0);
  const double m = curvature_mass(cv);
  bool weak_ok = true;
  for (double gamma_dl : {0.01, 0.03, 0.049}) {
    const double f0 = gamma_dl * hw0 / cv.a;
    const auto p = PulseSpec::monochromatic_cycles(f0, hw0, 10.0);
    const double tb = ponderomotive(p, cv);
    const double ema = ponderomotive(p, EffectiveMass{m});
    if (std::abs(tb - ema) >= 0.01 * ema) weak_ok = false;
  }
  const double limit = cv.eps[0] - band_energy(BandDispersion{cv}, 0.0);
  bool strong_ok = true;
  double sample_dev = 0.0, sample_env = 0.0;
  for (double f0 : {3.5, 5.0, 8.0}) {  // hbar wB > 10 hbar w0 throughout
    const double gamma_dl = f0 * cv.a / hw0;
    const auto p = PulseSpec::monochromatic_cycles(f0, hw0, 10.0);
    const double up = ponderomotive(p, cv);
    double envelope = 0.0;
    for (std::size_t l = 1; l < cv.eps.size(); ++l) {
      envelope += std::abs(cv.eps[l]) * std::sqrt(2.0 / (bc::pi * l * gamma_dl));
    }
    if (std::abs(up - limit) >= envelope) strong_ok = false;
    sample_dev = std::abs(up - limit);
    sample_env = envelope;
  }
  const bool pass = weak_ok && strong_ok;
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "parabolic agreement < 1%% for gamma_DL < 0.05: %s; strong-field value "
                "within one oscillation amplitude of the hopping offset (|dev| %.3f vs "
                "envelope %.3f at 8 V/A): %s",
                weak_ok ? "yes" : "no", sample_dev, sample_env, strong_ok ? "yes" : "no");
  report("A10 ponderomotive limits", pass, buf);
}

}  // namespace

int main() {
  std::printf("acceptance suite (units: eV, fs, A, V/A)\n");
  a01_channel_closing();
  a02_dynamic_localization();
  a03_trajectory_regimes();
  a04_localization_lengths();
  a05_anticrossing();
  a06_rabi_regimes();
  a07_perturbative_consistency();
  a08_unitarity_physicality();
  a09_topology();
  a10_ponderomotive_limits();
  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures;
}