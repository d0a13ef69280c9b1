#include "doctest.h"

#include <cmath>

#include "blochwave/constants.hpp"
#include "blochwave/errors.hpp"
#include "blochwave/pulse.hpp"
#include "test_util.hpp"

using namespace blochwave;
namespace bc = blochwave::constants;

TEST_CASE("field crest of a monochromatic wave") {
  const auto p = PulseSpec::monochromatic_cycles(1.0, 1.5, 10.0);
  CHECK(p.field(p.t_peak()) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("closed-form vector potential vs quadrature") {
  // symmetric integer-cycle window: A(t) = -(F0/w0) sin(w0 t)
  const double hw0 = 1.5;
  const double T0 = 2.0 * bc::pi * bc::hbar / hw0;
  const auto p = PulseSpec::monochromatic_cycles(0.8, hw0, 10.0, 0.0, 0.0, -5.0 * T0);
  const double w0 = p.omega0();
  for (double t : {-3.3, -1.0, 0.4, 2.9, 5.1}) {
    const double analytic = -0.8 / w0 * std::sin(w0 * t);
    CHECK(std::abs(p.vector_potential(t) - analytic) < 1e-9 * std::abs(0.8 / w0));
    const double quad = -testutil::integrate([&](double s) { return p.field(s); }, p.t_start, t);
    CHECK(std::abs(p.vector_potential(t) - quad) < 1e-9 * std::abs(0.8 / w0));
  }
}

TEST_CASE("sine-square pulse: quadrature check and end behavior") {
  const auto p = PulseSpec::sine_square_fwhm(1.2, 1.6531, 3.7, 0.3);
  for (double frac : {0.1, 0.37, 0.5, 0.81, 1.0}) {
    const double t = p.t_start + frac * p.duration();
    const double quad = -testutil::integrate([&](double s) { return p.field(s); }, p.t_start, t);
    CHECK(std::abs(p.vector_potential(t) - quad) < 1e-9);
  }
  // after the pulse: field off, vector potential frozen
  CHECK(p.field(p.t_end + 1.0) == 0.0);
  CHECK(p.vector_potential(p.t_end + 5.0) == p.vector_potential(p.t_end));
  CHECK(p.vector_potential(p.t_start) == 0.0);
  // intensity FWHM matches the construction
  const double half_peak = p.F0 * p.F0 / 2.0;
  const double t1 = p.t_peak() - 0.5 * p.fwhm, t2 = p.t_peak() + 0.5 * p.fwhm;
  CHECK(std::pow(p.envelope_at(t1), 2) == doctest::Approx(half_peak).epsilon(1e-10));
  CHECK(std::pow(p.envelope_at(t2), 2) == doctest::Approx(half_peak).epsilon(1e-10));
}

TEST_CASE("vector potential integral matches quadrature of A") {
  const auto p = PulseSpec::sine_square_fwhm(0.7, 2.1, 2.5, 0.9);
  for (double frac : {0.25, 0.6, 1.0}) {
    const double t = p.t_start + frac * p.duration();
    const double quad =
        testutil::integrate([&](double s) { return p.vector_potential(s); }, p.t_start, t);
    CHECK(std::abs(p.vector_potential_integral(t) - quad) < 1e-9);
  }
  const auto mono = PulseSpec::monochromatic_cycles(0.5, 1.2, 6.0);
  const double t = mono.t_start + 0.77 * mono.duration();
  const double quad =
      testutil::integrate([&](double s) { return mono.vector_potential(s); }, mono.t_start, t);
  CHECK(std::abs(mono.vector_potential_integral(t) - quad) < 1e-9);
}

TEST_CASE("kinetic momentum") {
  SUBCASE("static field gives a linear ramp") {
    const auto p = PulseSpec::static_field(0.3, 50.0);
    for (double t : {1.0, 10.0, 42.0}) {
      CHECK(kinetic_momentum(p, 0.2, t) ==
            doctest::Approx(0.2 - 0.3 * t / bc::hbar).epsilon(1e-14));
    }
  }
  SUBCASE("oscillating field vs quadrature") {
    const auto p = PulseSpec::monochromatic_cycles(0.6, 1.9, 8.0);
    const double t = 3.1;
    const double quad = -testutil::integrate([&](double s) { return p.field(s); }, p.t_start, t);
    CHECK(kinetic_momentum(p, 0.1, t) ==
          doctest::Approx(0.1 + quad / bc::hbar).epsilon(1e-10));
  }
  SUBCASE("zero field leaves k unchanged") {
    const auto p = PulseSpec::monochromatic_cycles(0.0, 1.5, 4.0);
    CHECK(kinetic_momentum(p, 0.37, 2.0) == 0.37);
  }
}

TEST_CASE("BZ reduction stays in [-pi/a, pi/a)") {
  const double a = 4.9;
  const double half = bc::pi / a;
  for (int i = 0; i < 200; ++i) {
    const double k = testutil::uniform(-40.0, 40.0);
    const double r = reduce_to_first_bz(k, a);
    CHECK(r >= -half);
    CHECK(r < half);
    // reduced value differs from k by a multiple of 2 pi / a
    const double n = (k - r) / (2.0 * half);
    CHECK(std::abs(n - std::round(n)) < 1e-9);
  }
}

TEST_CASE("circular components degenerate at linear polarization") {
  const auto [fp, fm] = circular_amplitudes(1.3, 0.0);
  CHECK(fp == fm);
  const auto [cp, cm] = circular_amplitudes(1.0, 1.0);
  CHECK(cm == 0.0);
  CHECK(cp == 1.0);
  // recover beta from the definition
  for (double beta : {-0.7, -0.2, 0.4, 0.9}) {
    const auto [p, m] = circular_amplitudes(2.0, beta);
    CHECK((p - m) / (p + m) == doctest::Approx(beta).epsilon(1e-14));
  }
}

TEST_CASE("A is continuous across the window edges") {
  const auto p = PulseSpec::sine_square_fwhm(1.0, 1.7, 3.0);
  const double eps = 1e-9;
  CHECK(std::abs(p.vector_potential(p.t_start + eps) - p.vector_potential(p.t_start - eps)) <
        1e-8);
  CHECK(std::abs(p.vector_potential(p.t_end + eps) - p.vector_potential(p.t_end - eps)) < 1e-8);
}

TEST_CASE("invalid pulses are rejected") {
  CHECK_THROWS_AS(PulseSpec::sine_square_fwhm(1.0, 1.5, -3.7), ConfigError);
  CHECK_THROWS_AS(PulseSpec::monochromatic_cycles(1.0, -2.0, 4.0), ConfigError);
  PulseSpec p = PulseSpec::monochromatic_cycles(1.0, 1.5, 4.0);
  p.beta = 1.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("flat-top envelope closed forms") {
  const auto p = PulseSpec::flat_top_cycles(1.0, 1.8, 6.0, 2.0);
  SUBCASE("vector potential matches quadrature across all three segments") {
    // integrate piecewise: the envelope has derivative kinks at the ramps
    auto quad_to = [&](double t) {
      const double edges[] = {p.t_start, p.t_start + p.ramp, p.t_end - p.ramp, p.t_end};
      double acc = 0.0;
      double lo = p.t_start;
      for (double edge : edges) {
        const double hi = std::min(edge, t);
        if (hi > lo) {
          acc += testutil::integrate([&](double s) { return p.field(s); }, lo, hi);
          lo = hi;
        }
      }
      if (t > lo) acc += testutil::integrate([&](double s) { return p.field(s); }, lo, t);
      return -acc;
    };
    for (double frac : {0.1, 0.2, 0.5, 0.8, 0.93, 1.0}) {
      const double t = p.t_start + frac * p.duration();
      CHECK(std::abs(p.vector_potential(t) - quad_to(t)) < 1e-9);
    }
  }
  SUBCASE("integral of A matches quadrature of the closed form") {
    for (double frac : {0.15, 0.6, 1.0}) {
      const double t = p.t_start + frac * p.duration();
      const double quad =
          testutil::integrate([&](double s) { return p.vector_potential(s); }, p.t_start, t);
      CHECK(std::abs(p.vector_potential_integral(t) - quad) < 1e-8);
    }
  }
  SUBCASE("envelope is continuous and flat on the plateau") {
    const double ramp_end = p.t_start + p.ramp;
    CHECK(p.envelope_at(ramp_end - 1e-9) == doctest::Approx(p.F0).epsilon(1e-6));
    CHECK(p.envelope_at(p.t_peak()) == p.F0);
    CHECK(p.envelope_at(p.t_start) == 0.0);
    CHECK(p.envelope_at(p.t_end) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("ramps must fit into the window") {
    PulseSpec bad = p;
    bad.ramp = p.duration();
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  }
}

TEST_CASE("elliptical components obey the closed forms") {
  auto p = PulseSpec::monochromatic_cycles(0.7, 1.5, 6.0, 0.4, 0.6);
  for (double frac : {0.3, 0.77}) {
    const double t = p.t_start + frac * p.duration();
    const double quad =
        -testutil::integrate([&](double s) { return p.field_y(s); }, p.t_start, t);
    CHECK(std::abs(p.vector_potential_y(t) - quad) < 1e-9);
  }
  auto s2 = PulseSpec::sine_square_fwhm(0.7, 1.5, 4.0, 0.1, -0.4);
  const double t = s2.t_start + 0.6 * s2.duration();
  const double quad =
      -testutil::integrate([&](double s) { return s2.field_y(s); }, s2.t_start, t);
  CHECK(std::abs(s2.vector_potential_y(t) - quad) < 1e-9);
}
