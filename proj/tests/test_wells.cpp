// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "trap/constants.hpp"
#include "trap/errors.hpp"
#include "trap/wells.hpp"

using namespace trap;

namespace {
const TrapGeometry kGeom{100e-6, 4.45, 5.6};
constexpr double kV1 = -12.8, kV2 = -11.4;
}  // namespace

TEST_CASE("shape from coefficients: algebra check") {
  QuarticCoefficients c{16.0, 8.0, 0.0};
  DoubleWellShape s = shape_from_coefficients(c, 1.0);
  CHECK(s.well_distance_m == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.barrier_height_J == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("doubling r1 doubles L and leaves E_b alone") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  for (int i = 0; i < 20; ++i) {
    QuarticCoefficients c{dist(rng) * 1e-21, dist(rng) * 1e-23, 0.0};
    double r1 = dist(rng) * 1e-4;
    DoubleWellShape s1 = shape_from_coefficients(c, r1);
    DoubleWellShape s2 = shape_from_coefficients(c, 2.0 * r1);
    CHECK(s2.well_distance_m ==
          doctest::Approx(2.0 * s1.well_distance_m).epsilon(1e-14));
    CHECK(s2.barrier_height_J ==
          doctest::Approx(s1.barrier_height_J).epsilon(1e-12));
  }
}

TEST_CASE("regime errors") {
  CHECK_THROWS_AS(shape_from_coefficients({1.0, -1.0, 0.0}, 1.0),
                  SingleWellError);
  CHECK_THROWS_AS(shape_from_coefficients({1.0, 0.0, 0.0}, 1.0),
                  SingleWellError);
  CHECK_THROWS_AS(shape_from_coefficients({-1.0, 1.0, 0.0}, 1.0),
                  UnconfinedError);
}

TEST_CASE("coefficients from shape invert the forward map") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  for (int i = 0; i < 100; ++i) {
    double a = dist(rng) * 1e-21, b = dist(rng) * 1e-23;
    double r1 = dist(rng) * 1e-4;
    DoubleWellShape s = shape_from_coefficients({a, b, 0.0}, r1);
    QuarticCoefficients c =
        coefficients_from_shape(s.well_distance_m, s.barrier_height_J, r1);
    CHECK(c.a == doctest::Approx(a).epsilon(1e-12));
    CHECK(c.b == doctest::Approx(b).epsilon(1e-12));
    DoubleWellShape s2 = shape_from_coefficients(c, r1);
    CHECK(s2.well_distance_m ==
          doctest::Approx(s.well_distance_m).epsilon(1e-12));
    CHECK(s2.barrier_height_J ==
          doctest::Approx(s.barrier_height_J).epsilon(1e-12));
  }
}

TEST_CASE("canonical well: minima placement and depth") {
  double L = 10e-6, Eb = ev_to_joule(6e-8), r1 = 100e-6;
  QuarticCoefficients c = coefficients_from_shape(L, Eb, r1);
  auto u = [&](double delta_m) {
    double d = delta_m / r1;  // dimensionless
    return c.a * d * d * d * d - c.b * d * d;
  };
  CHECK(u(0.5 * L) == doctest::Approx(-Eb).epsilon(1e-12));
  CHECK(u(-0.5 * L) == doctest::Approx(-Eb).epsilon(1e-12));
  // stationary at the minima: dU/dd = (4 a d^3 - 2 b d)/r1 cancels exactly
  double d = 0.5 * L / r1;
  double slope_scale = 8.0 * Eb / L;
  double du = (4.0 * c.a * d * d * d - 2.0 * c.b * d) / r1;
  CHECK(std::abs(du) < 1e-10 * slope_scale);
}

TEST_CASE("classical axial frequency of the canonical well") {
  DoubleWellShape s{10e-6, ev_to_joule(6e-8), 100e-6};
  double f = classical_axial_frequency(s);
  CHECK(f == doctest::Approx(9.25e6).epsilon(2e-3));  // derived value
  CHECK(f == doctest::Approx(10e6).epsilon(0.10));    // reported 10 MHz

  // quadrupling E_b doubles the frequency
  DoubleWellShape s4{10e-6, 4.0 * ev_to_joule(6e-8), 100e-6};
  CHECK(classical_axial_frequency(s4) == doctest::Approx(2.0 * f).epsilon(1e-12));
}

TEST_CASE("frequency equals the curvature at the minima") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(0.2, 5.0);
  for (int i = 0; i < 50; ++i) {
    double L = dist(rng) * 1e-5;
    double Eb = dist(rng) * 1e-26;
    double r1 = 1e-4;
    DoubleWellShape s{L, Eb, r1};
    QuarticCoefficients c = coefficients_from_shape(L, Eb, r1);
    auto u = [&](double delta_m) {
      double d = delta_m / r1;
      return c.a * d * d * d * d - c.b * d * d;
    };
    double h = L * 1e-4;
    double upp =
        (u(0.5 * L + h) - 2.0 * u(0.5 * L) + u(0.5 * L - h)) / (h * h);
    double omega = 2.0 * M_PI * classical_axial_frequency(s);
    CHECK(constants::electron_mass * omega * omega ==
          doctest::Approx(upp).epsilon(1e-6));
  }
}

TEST_CASE("sub-quantum barrier flag") {
  double L = 10e-6;
  DoubleWellShape deep{L, 10.0 * energy_scale(L), L * 10};
  DoubleWellShape shallow{L, 1e-4 * energy_scale(L), L * 10};
  CHECK(!sub_quantum_barrier(deep));
  CHECK(sub_quantum_barrier(shallow));
}

TEST_CASE("inverse design for the flagship well distance") {
  double vstar = transition_voltage(kGeom, kV1, kV2);
  double v3 = solve_v3_for_shape(kGeom, kV1, kV2,
                                 {WellTarget::Kind::distance, 10e-6});
  // detuning below the transition matches the 1.3 mV scale
  CHECK(vstar - v3 == doctest::Approx(0.0013).epsilon(0.4));
  CHECK(std::abs(v3 - (vstar - 0.0013)) < 5e-4);

  QuarticCoefficients c = quartic_coefficients(kGeom, {kV1, kV2, v3});
  DoubleWellShape s = shape_from_coefficients(c, kGeom.r1_m);
  CHECK(s.well_distance_m == doctest::Approx(10e-6).epsilon(1e-6));
}

TEST_CASE("inverse design round-trips on the barrier too") {
  double target = ev_to_joule(6e-8);
  double v3 = solve_v3_for_shape(kGeom, kV1, kV2,
                                 {WellTarget::Kind::barrier, target});
  QuarticCoefficients c = quartic_coefficients(kGeom, {kV1, kV2, v3});
  DoubleWellShape s = shape_from_coefficients(c, kGeom.r1_m);
  CHECK(s.barrier_height_J == doctest::Approx(target).epsilon(1e-6));
}

TEST_CASE("zero-barrier target returns the transition voltage") {
  double vstar = transition_voltage(kGeom, kV1, kV2);
  CHECK(solve_v3_for_shape(kGeom, kV1, kV2,
                           {WellTarget::Kind::barrier, 0.0}) == vstar);
  CHECK(solve_v3_for_shape(kGeom, kV1, kV2,
                           {WellTarget::Kind::distance, 0.0}) == vstar);
}

TEST_CASE("unreachable target raises a bracketing error") {
  CHECK_THROWS_AS(solve_v3_for_shape(kGeom, kV1, kV2,
                                     {WellTarget::Kind::distance, 1.0}),
                  ConfigError);
}
