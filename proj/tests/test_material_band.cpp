#include "doctest.h"

#include <cmath>

#include "blochwave/band.hpp"
#include "blochwave/constants.hpp"
#include "blochwave/errors.hpp"
#include "blochwave/material.hpp"

using namespace blochwave;
namespace bc = blochwave::constants;

TEST_CASE("embedded material records") {
  const auto& gaas = material_lookup("GaAs");
  CHECK(gaas.Eg == 1.43);
  CHECK(gaas.a == 5.65);
  CHECK(gaas.xi_max == 3.42);

  const auto& sio2 = material_lookup("SiO2");
  CHECK(sio2.Eg == 9.0);
  CHECK(sio2.a == 4.9);
  CHECK(sio2.c.value() == 5.4);
  CHECK(sio2.xi_max == 0.37);

  const auto& mgo = material_lookup("MgO");
  CHECK(mgo.Eg == 7.8);
  CHECK(mgo.a == 4.2);
  CHECK(mgo.xi_max == 0.96);
}

TEST_CASE("lookup is case-insensitive and supports aliases") {
  CHECK(material_lookup("gaas").name == "GaAs");
  CHECK(material_lookup("ZNO").name == "ZnO");
  CHECK(material_lookup("diamond").name == "C");
  CHECK(material_lookup("alpha-SiO2").name == "SiO2");
}

TEST_CASE("unknown materials raise a listing error") {
  try {
    material_lookup("unobtainium");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("GaAs") != std::string::npos);
    CHECK(msg.find("SiO2") != std::string::npos);
  }
}

TEST_CASE("band dispersions and velocities") {
  SUBCASE("parabolic") {
    const BandDispersion b = EffectiveMass{0.5};
    CHECK(band_energy(b, 0.2) ==
          doctest::Approx(bc::hbar2_over_m0 * 0.04 / 1.0).epsilon(1e-14));
    CHECK(band_velocity(b, 0.1) == doctest::Approx(bc::hbar_over_m0 * 0.1 / 0.5));
  }
  SUBCASE("nonparabolic gap grows monotonically") {
    const BandDispersion b = KaneTwoBand{9.0, 0.5};
    CHECK(band_energy(b, 0.0) == 9.0);
    double prev = 9.0;
    for (double k = 0.1; k < 2.0; k += 0.1) {
      const double e = band_energy(b, k);
      CHECK(e > prev);
      prev = e;
    }
  }
  SUBCASE("cosine series and its derivative") {
    const TightBinding tb{4.9, {2.0, -1.65}};
    const BandDispersion b = tb;
    CHECK(band_energy(b, 0.0) == doctest::Approx(0.35));
    const double k = 0.3;
    const double num =
        (band_energy(b, k + 1e-6) - band_energy(b, k - 1e-6)) / 2e-6 / bc::hbar;
    CHECK(band_velocity(b, k) == doctest::Approx(num).epsilon(1e-7));
    CHECK(curvature_mass(tb) == doctest::Approx(bc::hbar2_over_m0 / (1.65 * 4.9 * 4.9)));
  }
}

TEST_CASE("gap dipole estimate") {
  // xi = hbar / (2 sqrt(m Eg)); for m = 0.5 m0, Eg = 9 eV
  CHECK(kane_dipole(9.0, 0.5) ==
        doctest::Approx(0.5 * std::sqrt(bc::hbar2_over_m0 / (0.5 * 9.0))).epsilon(1e-14));
}

TEST_CASE("k grid generation") {
  KGrid g;
  g.points[0] = 8;
  const auto ks = g.axis(0, 4.9);
  CHECK(ks.size() == 8);
  CHECK(ks.front() == doctest::Approx(-bc::pi / 4.9));
  // right endpoint excluded (periodic identification)
  CHECK(ks.back() < bc::pi / 4.9);
  KGrid bad;
  bad.points[0] = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
