// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trap/bessel.hpp"

using trap::bessel_j1;

namespace {

// mpmath besselj(1, x) at 40 digits, evaluated at the exact double x.
struct Ref {
  double x, j1;
};
constexpr Ref kRefs[] = {
    {1e-08, 5.00000000000000004211e-9},
    {0.001, 0.000499999937500002614575},
    {0.1, 0.0499375260362420003215},
    {0.5, 0.242268457674873886384},
    {1.0, 0.440050585744933515960},
    {2.0, 0.576724807756873387202},
    {3.0, 0.339058958525936458926},
    {5.0, -0.327579137591465222038},
    {7.9, 0.219179399921751203273},
    {8.0, 0.234636346853914624381},
    {8.1, 0.247607766981592876634},
    {10.0, 0.0434727461688614366697},
    {12.0, -0.223447104490627612368},
    {17.9, -0.186765368913496625257},
    {18.0, -0.187994885488069594007},
    {18.1, -0.187350182706376146648},
    {25.0, -0.125350249580289904652},
    {50.0, -0.0975118281251751376615},
    {100.0, -0.0771453520141121580327},
    {1000.0, 0.00472831190708952391758},
    {12345.6789, -0.00718086400495269758111},
    {99999.5, 0.00244492169359007419900},
    {100000.0, 0.00184675756288256771636},
    {314159.2653589793, -0.00100658304060368698146},
};

double amplitude(double x) { return std::sqrt(2.0 / (M_PI * x)); }

}  // namespace

TEST_CASE("J1 matches high-precision references") {
  for (const Ref& r : kRefs) {
    double v = bessel_j1(r.x);
    // relative to the local oscillation amplitude, the honest yardstick
    // for an oscillatory function
    double tol = 1e-13 * std::max(amplitude(r.x), std::abs(r.j1));
    CHECK(std::abs(v - r.j1) <= tol);
  }
}

TEST_CASE("J1 near its first zero") {
  double z = 3.8317059702075125;  // nearest double to the zero
  CHECK(std::abs(bessel_j1(z)) < 1e-15);
  CHECK(bessel_j1(z - 1e-3) > 0.0);
  CHECK(bessel_j1(z + 1e-3) < 0.0);
}

TEST_CASE("J1 odd symmetry and origin") {
  CHECK(bessel_j1(0.0) == 0.0);
  for (double x : {0.3, 4.7, 19.4, 512.0}) {
    CHECK(bessel_j1(-x) == -bessel_j1(x));
  }
}

TEST_CASE("J1 agrees with the standard library where both are reliable") {
  for (double x = 0.05; x < 30.0; x += 0.37) {
    double mine = bessel_j1(x);
    double std_v = std::cyl_bessel_j(1.0, x);
    CHECK(std::abs(mine - std_v) <= 1e-10 * std::max(1.0, std::abs(std_v)));
  }
}

TEST_CASE("J1 small-argument expansion") {
  // J1(x) = x/2 - x^3/16 + O(x^5)
  for (double x : {1e-10, 1e-7, 1e-4}) {
    double expect = 0.5 * x - x * x * x / 16.0;
    CHECK(bessel_j1(x) == doctest::Approx(expect).epsilon(1e-12));
  }
}
