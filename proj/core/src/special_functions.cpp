#include "blochwave/special_functions.hpp"

#include <cmath>
#include <stdexcept>

#include "blochwave/constants.hpp"
#include "blochwave/errors.hpp"

namespace blochwave {

namespace {

// Hankel coefficients (0,k) for the order-zero asymptotic expansion:
// (0,0) = 1, (0,k+1) = -(0,k) * (k+1/2)^2 / (k+1).
constexpr int kHankelTerms = 10;

double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 60; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double j0_asymptotic(double x) {
  double h[2 * kHankelTerms];
  h[0] = 1.0;
  for (int k = 1; k < 2 * kHankelTerms; ++k) {
    const double half = k - 0.5;
    h[k] = -h[k - 1] * half * half / k;
  }
  const double inv2x = 1.0 / (2.0 * x);
  double p = 0.0, q = 0.0, prev = 1e300;
  for (int k = 0; k < kHankelTerms; ++k) {
    const double tp = ((k % 2) ? -1.0 : 1.0) * h[2 * k] * std::pow(inv2x, 2 * k);
    if (std::abs(tp) > prev) break;  // asymptotic series: stop at smallest term
    p += tp;
    const double tq = ((k % 2) ? -1.0 : 1.0) * h[2 * k + 1] * std::pow(inv2x, 2 * k + 1);
    q += tq;
    prev = std::abs(tp);
  }
  const double chi = x - 0.25 * constants::pi;
  return std::sqrt(2.0 / (constants::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  // The series keeps full accuracy through x ~ 12 (cancellation costs only a
  // few digits there); the Hankel expansion is at machine level beyond.
  x = std::abs(x);
  return (x < 12.0) ? j0_series(x) : j0_asymptotic(x);
}

double bessel_j0_zero(int n) {
  if (n < 1 || n > 3) throw ConfigError("bessel_j0_zero: n must be 1, 2, or 3");
  // bracketing intervals around the first three zeros
  static const double lo[3] = {2.0, 5.0, 8.0};
  static const double hi[3] = {3.0, 6.0, 9.0};
  double a = lo[n - 1], b = hi[n - 1];
  double fa = bessel_j0(a);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = bessel_j0(m);
    if ((fa < 0) == (fm < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
    if (b - a < 1e-16 * b) break;
  }
  return 0.5 * (a + b);
}

namespace {

// Ai(0) and -Ai'(0)
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAip0 = 0.25881940379280679841;

double ai_series(double x) {
  // Ai(x) = Ai(0) * f(x) - Ai'(0)... with f, g the two power-series solutions
  // of y'' = x y, f(0)=1, f'(0)=0 and g(0)=0, g'(0)=1.
  const double x3 = x * x * x;
  double f_term = 1.0, f_sum = 1.0;
  double g_term = x, g_sum = x;
  for (int k = 0; k < 80; ++k) {
    f_term *= x3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
    g_term *= x3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
    f_sum += f_term;
    g_sum += g_term;
    if (std::abs(f_term) < 1e-18 * std::abs(f_sum) &&
        std::abs(g_term) < 1e-18 * (std::abs(g_sum) + 1e-30)) {
      break;
    }
  }
  return kAi0 * f_sum - kAip0 * g_sum;
}

// u_k coefficients of the Airy asymptotic expansions
// u_0 = 1, u_k = u_{k-1} * (6k-5)(6k-3)(6k-1) / (216 k (2k-1))
void airy_u(double* u, int n) {
  u[0] = 1.0;
  for (int k = 1; k < n; ++k) {
    u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
           (216.0 * k * (2.0 * k - 1.0));
  }
}

double ai_asymptotic_pos(double x) {
  const double zeta = (2.0 / 3.0) * std::pow(x, 1.5);
  double u[16];
  airy_u(u, 16);
  double sum = 0.0, prev = 1e300;
  for (int k = 0; k < 16; ++k) {
    const double t = ((k % 2) ? -1.0 : 1.0) * u[k] / std::pow(zeta, k);
    if (std::abs(t) > prev) break;
    sum += t;
    prev = std::abs(t);
  }
  return std::exp(-zeta) / (2.0 * std::sqrt(constants::pi) * std::pow(x, 0.25)) * sum;
}

double ai_asymptotic_neg(double x) {
  // x < 0; let y = -x > 0
  const double y = -x;
  const double zeta = (2.0 / 3.0) * std::pow(y, 1.5);
  double u[16];
  airy_u(u, 16);
  double s_even = 0.0, s_odd = 0.0;
  for (int k = 0; k < 8; ++k) {
    s_even += ((k % 2) ? -1.0 : 1.0) * u[2 * k] / std::pow(zeta, 2 * k);
    s_odd += ((k % 2) ? -1.0 : 1.0) * u[2 * k + 1] / std::pow(zeta, 2 * k + 1);
  }
  const double arg = zeta + 0.25 * constants::pi;
  return (std::sin(arg) * s_even - std::cos(arg) * s_odd) /
         (std::sqrt(constants::pi) * std::pow(y, 0.25));
}

}  // namespace

double airy_ai(double x) {
  if (std::abs(x) <= 6.0) return ai_series(x);
  return (x > 0) ? ai_asymptotic_pos(x) : ai_asymptotic_neg(x);
}

}  // namespace blochwave
