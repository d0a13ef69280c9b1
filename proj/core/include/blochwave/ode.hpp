#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "blochwave/errors.hpp"

namespace blochwave {

struct OdeTolerances {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double first_step = 1e-3;   // fs
  double min_step = 1e-12;    // fs; falling below raises NumericalError
  double max_step = 1e30;     // fs
};

// Embedded Dormand-Prince 5(4) pair with adaptive step control.
// State is a fixed-size array of doubles; Rhs is f(t, y, dydt).
template <std::size_t N, typename Rhs>
class DormandPrince {
 public:
  DormandPrince(Rhs rhs, OdeTolerances tol) : rhs_(std::move(rhs)), tol_(tol) {}

  // Advance y from t to t_target.
  void integrate_to(double& t, std::array<double, N>& y, double t_target) {
    if (t_target <= t) return;
    double h = std::min(tol_.first_step, t_target - t);
    while (t < t_target) {
      const double remaining = t_target - t;
      if (remaining <= 8.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(t), std::abs(t_target))) {
        t = t_target;  // below resolution of the time variable
        break;
      }
      h = std::min({h, remaining, tol_.max_step});
      // underflow only when the error controller forced the step down, not
      // when the natural remainder of the interval is small
      if (h < tol_.min_step && h < remaining) {
        throw NumericalError("ode: step size underflow at t = " + std::to_string(t));
      }
      std::array<double, N> y5, y4;
      const double err = step(t, y, h, y5, y4);
      if (err <= 1.0) {
        t += h;
        y = y5;
        const double grow = (err > 1e-30) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
      } else {
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      }
    }
  }

 private:
  // returns scaled error estimate; fills 5th-order solution
  double step(double t, const std::array<double, N>& y, double h,
              std::array<double, N>& y5, std::array<double, N>& y4) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double d1 = 5179.0 / 57600, d3 = 7571.0 / 16695, d4 = 393.0 / 640,
                            d5 = -92097.0 / 339200, d6 = 187.0 / 2100, d7 = 1.0 / 40;

    std::array<double, N> k1, k2, k3, k4, k5, k6, k7, tmp;
    rhs_(t, y, k1);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    rhs_(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs_(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs_(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs_(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs_(t + h, tmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs_(t + h, y5, k7);
    for (std::size_t i = 0; i < N; ++i)
      y4[i] = y[i] + h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                          d7 * k7[i]);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double scale =
          tol_.abs_tol + tol_.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(y5[i] - y4[i]) / scale);
    }
    return err;
  }

  Rhs rhs_;
  OdeTolerances tol_;
};

template <std::size_t N, typename Rhs>
DormandPrince<N, Rhs> make_dormand_prince(Rhs rhs, OdeTolerances tol) {
  return DormandPrince<N, Rhs>(std::move(rhs), tol);
}

}  // namespace blochwave
