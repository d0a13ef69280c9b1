#include "doctest.h"

#include <cmath>
#include <complex>

#include "blochwave/constants.hpp"
#include "blochwave/errors.hpp"
#include "blochwave/ladders.hpp"
#include "test_util.hpp"

using namespace blochwave;
namespace bc = blochwave::constants;

namespace {
const TightBinding kBand{4.9, {1.2, -1.65, 0.2}};
}

TEST_CASE("ladder rungs are spaced by the Bloch energy") {
  const auto ladder = kane_ladder(kBand, 0.13, nullptr, -3, 3);
  CHECK(ladder.hbar_omegaB == doctest::Approx(0.13 * 4.9).epsilon(1e-14));
  // zone average of the cosine series is the offset term
  CHECK(ladder.e_bar == doctest::Approx(1.2).epsilon(1e-12));
  for (std::size_t i = 1; i < ladder.rungs.size(); ++i) {
    CHECK(ladder.rungs[i].energy - ladder.rungs[i - 1].energy ==
          doctest::Approx(ladder.hbar_omegaB).epsilon(1e-12));
  }
  CHECK_THROWS_AS(kane_ladder(kBand, 0.0, nullptr, 0, 2), ConfigError);
}

TEST_CASE("phase function is single-valued only on quantized rungs") {
  const double F0 = 0.2;
  const auto ladder = kane_ladder(kBand, F0, nullptr, 2, 2);
  const auto on_rung = kane_eta(kBand, F0, nullptr, ladder.rungs[0].energy);
  CHECK(std::abs(on_rung.eta.front() - on_rung.eta.back()) < 1e-9);

  const auto detuned = kane_eta(kBand, F0, nullptr, ladder.rungs[0].energy + 0.37 * F0 * 4.9);
  CHECK(std::abs(detuned.eta.front() - detuned.eta.back()) > 1e-3);
}

TEST_CASE("strong fields push the phase function to a plane wave") {
  const int l = 2;
  double prev = 1e9;
  for (double F0 : {10.0, 100.0, 1000.0}) {
    const auto ladder = kane_ladder(kBand, F0, nullptr, l, l);
    const auto eta = kane_eta(kBand, F0, nullptr, ladder.rungs[0].energy);
    double dev = 0.0;
    for (std::size_t i = 0; i < eta.kx.size(); ++i) {
      dev = std::max(dev, std::abs(eta.eta[i] - std::polar(1.0, -eta.kx[i] * l * kBand.a)));
    }
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("localization lengths") {
  SUBCASE("quartz-like numbers") {
    const auto l = localization_lengths(3.3, 3.0, 0.1);
    CHECK(l.L_SC == doctest::Approx(33.0).epsilon(1e-14));
    CHECK(l.L_K == doctest::Approx(std::sqrt(33.0 * 33.0 + 9.0)).epsilon(1e-14));
  }
  SUBCASE("strong-field limit approaches the Wannier extent") {
    CHECK(localization_lengths(3.3, 3.0, 50.0).L_K == doctest::Approx(3.0).epsilon(1e-3));
  }
  SUBCASE("pointlike Wannier function reduces to the semiclassical length") {
    const auto l = localization_lengths(2.0, 0.0, 0.4);
    CHECK(l.L_K == l.L_SC);
  }
  SUBCASE("monotone in the field and bounded below") {
    double prev = 1e300;
    for (double f0 = 0.05; f0 < 30.0; f0 *= 1.7) {
      const auto l = localization_lengths(3.3, 3.0, f0);
      CHECK(l.L_K < prev);
      CHECK(l.L_K >= 3.0);
      prev = l.L_K;
    }
  }
  SUBCASE("zero field is rejected") {
    CHECK_THROWS_AS(localization_lengths(3.3, 3.0, 0.0), ConfigError);
  }
}

TEST_CASE("coupled ladder levels") {
  const KaneRung c{0, 5.0, 5.0, 0.3};
  const KaneRung v{2, 5.0, 4.4, 0.3};  // degenerate with c at l = 2

  SUBCASE("zero coupling returns the bare rungs") {
    const auto ws = ws_levels(c, v, {0.0, 0.0, 0.0}, 2);
    CHECK(ws.energies[0] == doctest::Approx(5.0));
    CHECK(ws.energies[1] == doctest::Approx(5.0));
  }
  SUBCASE("degenerate rungs split by twice the coupling") {
    const auto ws = ws_levels(c, v, {0.0, 0.0, 0.1}, 2);
    CHECK(ws.energies[1] - ws.energies[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(ws.energies[0] == doctest::Approx(4.9).epsilon(1e-12));
  }
  SUBCASE("larger truncations keep the rungs at zero coupling") {
    const auto ws = ws_levels(c, v, {0.0}, 6);
    // diagonal: three conduction rungs from l=0, three valence from l=2
    CHECK(ws.energies.size() == 6);
    double expected[] = {5.0, 5.0, 5.3, 5.3, 5.6, 5.6};
    for (int i = 0; i < 6; ++i) CHECK(ws.energies[static_cast<std::size_t>(i)] == doctest::Approx(expected[i]));
  }
  SUBCASE("levels evolve continuously through an anticrossing") {
    // sweep the field through the degeneracy of c(l=0) and v(l=+2)
    const double a = 4.9, ebar_c = 5.0, ebar_v = 4.4;
    const double v_coupling = 0.05;
    double prev_lo = 0.0, prev_hi = 0.0;
    bool first = true;
    double min_gap = 1e300;
    for (int i = 0; i <= 400; ++i) {
      const double f0 = 0.02 + (0.1 - 0.02) * i / 400.0;
      const KaneRung rc{0, ebar_c, ebar_c, f0 * a};
      const KaneRung rv{2, ebar_v + 2.0 * f0 * a, ebar_v, f0 * a};
      const auto ws = ws_levels(rc, rv, {0.0, 0.0, v_coupling}, 2);
      min_gap = std::min(min_gap, ws.energies[1] - ws.energies[0]);
      if (!first) {
        CHECK(std::abs(ws.energies[0] - prev_lo) < 3.0 * a * (0.08 / 400.0) + 0.01);
        CHECK(std::abs(ws.energies[1] - prev_hi) < 3.0 * a * (0.08 / 400.0) + 0.01);
      }
      prev_lo = ws.energies[0];
      prev_hi = ws.energies[1];
      first = false;
    }
    CHECK(min_gap >= 2.0 * v_coupling - 1e-12);
  }
  SUBCASE("explicit matrices must be Hermitian") {
    std::vector<std::complex<double>> bad{{1.0, 0.0}, {0.2, 0.1}, {0.2, 0.1}, {2.0, 0.0}};
    CHECK_THROWS_AS(ws_eigenvalues(bad, 2), ConfigError);
    std::vector<std::complex<double>> good{{1.0, 0.0}, {0.2, 0.1}, {0.2, -0.1}, {2.0, 0.0}};
    const auto e = ws_eigenvalues(good, 2);
    CHECK(e[0] < e[1]);
  }
  SUBCASE("truncation below two is rejected") {
    CHECK_THROWS_AS(ws_levels(c, v, {0.1}, 1), ConfigError);
  }
}

TEST_CASE("hybridization field") {
  CHECK(hybridization_field(9.0, 4.9, 2) == doctest::Approx(9.0 / 9.8).epsilon(1e-14));
  CHECK(hybridization_field(9.0, 4.9, 2) == doctest::Approx(0.918).epsilon(1e-3));
}

TEST_CASE("below-gap absorption") {
  SUBCASE("electro-optic energy scale") {
    const auto r = fke_absorption(8.0, 1e-3, 0.5, 9.0);
    CHECK(r.hbar_theta ==
          doctest::Approx(std::cbrt(1e-6 * bc::hbar2_over_m0 / 1.0)).epsilon(1e-14));
    CHECK(r.hbar_theta == doctest::Approx(0.0197).epsilon(2e-3));
  }
  SUBCASE("cube-root field scaling") {
    const auto r1 = fke_absorption(8.0, 0.02, 0.5, 9.0);
    const auto r2 = fke_absorption(8.0, 0.04, 0.5, 9.0);
    CHECK(r2.hbar_theta / r1.hbar_theta == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-12));
  }
  SUBCASE("normalized to one at unit reduced detuning") {
    const double m = 0.5, Eg = 9.0, F0 = 0.05;
    const double theta = std::cbrt(F0 * F0 * bc::hbar2_over_m0 / (2.0 * m));
    const auto r = fke_absorption(Eg - theta, F0, m, Eg);
    CHECK(r.alpha_rel == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("matches the raw exponential form up to the common prefactor") {
    const double m = 0.4, Eg = 7.0, F0 = 0.08;
    const double theta = std::cbrt(F0 * F0 * bc::hbar2_over_m0 / (2.0 * m));
    auto raw = [&](double hw) {
      return std::pow(theta, 1.5) / (Eg - hw) *
             std::exp(-4.0 / 3.0 * std::pow((Eg - hw) / theta, 1.5));
    };
    const auto r1 = fke_absorption(6.0, F0, m, Eg);
    const auto r2 = fke_absorption(6.6, F0, m, Eg);
    CHECK(r2.alpha_rel / r1.alpha_rel == doctest::Approx(raw(6.6) / raw(6.0)).epsilon(1e-10));
  }
  SUBCASE("strictly increasing in the field below the gap") {
    double prev = 0.0;
    for (double f0 = 0.01; f0 < 3.0; f0 *= 1.5) {
      const auto r = fke_absorption(8.2, f0, 0.5, 9.0);
      CHECK(r.alpha_rel > prev);
      prev = r.alpha_rel;
    }
  }
  SUBCASE("photon energies at the gap are rejected by name") {
    try {
      fke_absorption(9.0, 0.1, 0.5, 9.0);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("diverges") != std::string::npos);
    }
  }
}

TEST_CASE("diagonal connections shift the ladder average") {
  const double F0 = 0.25;
  const auto plain = kane_ladder(kBand, F0, nullptr, 0, 0);
  const auto shifted = kane_ladder(
      kBand, F0, [](double) { return 0.6; }, 0, 0);
  CHECK(shifted.e_bar - plain.e_bar == doctest::Approx(F0 * 0.6).epsilon(1e-12));
}
