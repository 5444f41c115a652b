// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "trap/constants.hpp"

using namespace trap;

TEST_CASE("constants are the CODATA 2018 values") {
  const PhysicalConstants& c = PhysicalConstants::codata2018();
  CHECK(c.hbar == 1.054571817e-34);
  CHECK(c.electron_mass == 9.1093837015e-31);
  CHECK(c.elementary_charge == 1.602176634e-19);
  CHECK(c.hbar > 0.0);
  CHECK(c.electron_mass > 0.0);
  CHECK(c.elementary_charge > 0.0);
  CHECK(c.ev_per_joule > 0.0);
}

TEST_CASE("energy scale of a 10 um well") {
  double e = energy_scale(10e-6);
  CHECK(e == doctest::Approx(6.105e-29).epsilon(5e-4));
  CHECK(joule_to_ev(e) == doctest::Approx(3.811e-10).epsilon(5e-4));
}

TEST_CASE("energy scale inverse-square law") {
  double base = energy_scale(10e-6);
  CHECK(energy_scale(5e-6) == doctest::Approx(4.0 * base).epsilon(1e-12));
  CHECK(energy_scale(1e-6) == doctest::Approx(100.0 * base).epsilon(1e-12));
  for (double alpha : {0.1, 0.5, 2.0, 7.3, 100.0}) {
    CHECK(energy_scale(alpha * 10e-6) ==
          doctest::Approx(base / (alpha * alpha)).epsilon(1e-12));
  }
  // strictly decreasing
  double prev = energy_scale(1e-7);
  for (double L = 2e-7; L < 1e-3; L *= 1.7) {
    double cur = energy_scale(L);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("dimensionless barrier at the canonical well") {
  double ebt = dimensionless_barrier(ev_to_joule(6e-8), 10e-6);
  CHECK(ebt == doctest::Approx(157.48).epsilon(1e-3));
}

TEST_CASE("dimensionless barrier identities") {
  for (double L : {1e-6, 1e-5, 3.3e-4}) {
    CHECK(dimensionless_barrier(energy_scale(L), L) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  double e = ev_to_joule(2e-8);
  CHECK(dimensionless_barrier(2.0 * e, 1e-5) ==
        doctest::Approx(2.0 * dimensionless_barrier(e, 1e-5)).epsilon(1e-14));
}

TEST_CASE("eV/J conversions") {
  CHECK(ev_to_joule(1.0) == 1.602176634e-19);
  CHECK(ev_to_joule(0.0) == 0.0);
  for (double x : {1e-12, 0.3, 17.0, 6.5e8}) {
    CHECK(joule_to_ev(ev_to_joule(x)) == doctest::Approx(x).epsilon(1e-15));
    CHECK(ev_to_joule(joule_to_ev(x)) == doctest::Approx(x).epsilon(1e-15));
  }
}

TEST_CASE("domain errors on non-positive inputs") {
  CHECK_THROWS_AS(energy_scale(0.0), std::domain_error);
  CHECK_THROWS_AS(energy_scale(-1e-6), std::domain_error);
  CHECK_THROWS_AS(dimensionless_barrier(0.0, 1e-5), std::domain_error);
  CHECK_THROWS_AS(dimensionless_barrier(1e-27, -1.0), std::domain_error);
}
