#pragma once

namespace blochwave {

/// Bessel function of the first kind, order zero.
/// Power series at small |x|, Hankel asymptotic expansion beyond.
double bessel_j0(double x);

/// n-th positive zero of J0 (n = 1, 2, 3), refined to machine precision.
double bessel_j0_zero(int n);

/// Airy function Ai(x).
/// Maclaurin series for |x| <= 6, asymptotic expansions beyond.
double airy_ai(double x);

}  // namespace blochwave
