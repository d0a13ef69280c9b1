#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "blochwave/band.hpp"
#include "blochwave/ode.hpp"
#include "blochwave/pulse.hpp"

namespace blochwave {

// Two-band model in the Houston basis: gap dispersion Ecv(k), interband
// dipole xi_cv(k), and the difference of the diagonal Berry connections
// xi_nn(k) = xi_cc(k) - xi_vv(k) entering the modified gap
// E'cv(K) = Ecv(K) + e F(t) xi_nn(K). All k arguments are taken at the
// kinetic momentum K(t); tables must be 2pi/a-periodic.
struct TwoBandModel {
  std::function<double(double)> Ecv;                 // eV
  std::function<std::complex<double>(double)> xi_cv; // A
  std::function<double(double)> xi_nn;               // A; zero by default
  double a = 0.0;                                    // A

  /// Nonparabolic gap Ecv = Eg sqrt(1 + hbar^2 k^2/(m Eg)) with the constant
  /// dipole xi = hbar / (2 sqrt(m Eg)).
  static TwoBandModel kane(double Eg, double m, double a);
  /// Gap from a conduction-valence difference cosine series with a constant
  /// dipole.
  static TwoBandModel tight_binding(const TightBinding& cv_difference, double xi);

  void validate() const;
};

/// First-order adiabatic amplitude of the conduction Houston state,
/// a_c(t) = -(i/hbar) int V_cv(t1) exp(i phi'_cv(t1)) dt1 with
/// V_cv = e F(t) xi_cv(K(t)). `samples_per_cycle` controls the quadrature.
std::complex<double> houston_amplitude_first_order(const TwoBandModel& model, double k,
                                                   const PulseSpec& pulse, double t,
                                                   int samples_per_cycle = 512);

/// n-th nonvanishing correction to the conduction amplitude from the
/// time-ordered expansion of the two-band evolution (2n-1 nested integrals);
/// order 1 follows the same quadrature path as
/// houston_amplitude_first_order. Orders above `max_order_guard` are
/// rejected.
std::complex<double> dyson_correction(const TwoBandModel& model, double k,
                                      const PulseSpec& pulse, double t, int order,
                                      int samples_per_cycle = 512, int max_order_guard = 3);

/// Corrections 1..order in one pass.
std::vector<std::complex<double>> dyson_corrections(const TwoBandModel& model, double k,
                                                    const PulseSpec& pulse, double t,
                                                    int order, int samples_per_cycle = 512,
                                                    int max_order_guard = 3);

// Snapshot of the k-resolved amplitude pair; phi is the accumulated
// gap phase (1/hbar) int E'cv dt used to rotate back to the bare frame.
struct TwoBandState {
  double time = 0.0;
  std::vector<std::complex<double>> a_v, a_c;
  std::vector<double> phi;
};

struct TwoBandTrajectory {
  std::vector<double> k;
  std::vector<TwoBandState> snapshots;     // includes the final time
  std::vector<double> final_population;    // |a_c|^2 per k at t_end
  std::vector<double> norm_drift;          // | |a_v|^2 + |a_c|^2 - 1 | per k
};

/// Snapshots span [t_start, max(t_final, t_end)]; a t_final beyond the pulse
/// window follows the field-free evolution (amplitudes frozen, phase
/// accumulating).
TwoBandTrajectory propagate_two_band(const TwoBandModel& model,
                                     const std::vector<double>& kgrid,
                                     const PulseSpec& pulse,
                                     const OdeTolerances& tol = {},
                                     int n_snapshots = 2, int threads = 1,
                                     double t_final = 0.0);

// k-resolved 2x2 density matrix (f_v, f_c, rho_cv) with pure dephasing of
// the interband coherence at rate 1/T2; populations are not damped.
struct DensityMatrixState {
  double time = 0.0;
  std::vector<double> f_v, f_c;
  std::vector<std::complex<double>> rho_cv;
};

struct DensityMatrixTrajectory {
  std::vector<double> k;
  std::vector<DensityMatrixState> snapshots;
  std::vector<double> final_population;
};

/// T2 in fs; pass std::numeric_limits<double>::infinity() for no dephasing.
DensityMatrixTrajectory propagate_with_dephasing(const TwoBandModel& model,
                                                 const std::vector<double>& kgrid,
                                                 const PulseSpec& pulse, double T2,
                                                 const OdeTolerances& tol = {},
                                                 int n_snapshots = 2, int threads = 1);

struct RateScanRow {
  double F0 = 0.0;          // V/A
  double rate = 0.0;        // k-averaged final population per fs
  long long N_tilde = 1;    // channel count at this amplitude
  bool closing = false;     // rate decreased from the previous grid point
};

/// Cycle-averaged excitation rate over an amplitude grid for a monochromatic
/// drive of at least 10 cycles; the channel count tracks the numerically
/// cycle-averaged gap of the same model.
std::vector<RateScanRow> excitation_rate_scan(const TwoBandModel& model,
                                              const std::vector<double>& f0_grid,
                                              double hbar_omega0, double n_cycles,
                                              const std::vector<double>& kgrid,
                                              const OdeTolerances& tol = {},
                                              int threads = 1);

/// Numerical cycle-averaged gap increase of the model at crystal momentum k
/// for a monochromatic drive (peak amplitude F0), in eV.
double model_ponderomotive(const TwoBandModel& model, double F0, double hbar_omega0,
                           double k = 0.0);

/// Periodic linear interpolation of uniformly spaced samples over one zone
/// [-pi/a, pi/a); usable as a k-dependent dipole or connection table.
std::function<std::complex<double>(double)> periodic_table(
    std::vector<std::complex<double>> samples, double a);

}  // namespace blochwave
