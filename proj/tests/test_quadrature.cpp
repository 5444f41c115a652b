// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trap/quadrature.hpp"

using namespace trap;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int order : {2, 8, 16, 32}) {
    const GaussRule& rule = gauss_legendre(order);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
    // degree 2*order-1 is exact; check a few powers
    for (int p = 0; p <= 2 * order - 1; p += 4) {
      double acc = 0.0;
      for (int i = 0; i < order; ++i)
        acc += rule.weights[i] * std::pow(rule.nodes[i], p);
      double exact = (p % 2 == 0) ? 2.0 / (p + 1) : 0.0;
      CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
    }
    // weights sum to 2
    double ws = 0.0;
    for (double w : rule.weights) ws += w;
    CHECK(ws == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("panel integration of a damped exponential") {
  // int_0^40 e^-x = 1 - e^-40
  auto f = [](double x) { return std::exp(-x); };
  double v = integrate_panels_fixed(f, 0.0, 0.5, 80, 16);
  CHECK(v == doctest::Approx(1.0 - std::exp(-40.0)).epsilon(1e-14));
}

TEST_CASE("panel integration of an oscillatory integrand") {
  // int_0^{20 pi} sin(x) dx = 0, panels of half a period
  auto f = [](double x) { return std::sin(x); };
  double v = integrate_panels_fixed(f, 0.0, M_PI, 20, 16);
  CHECK(std::abs(v) < 1e-13);
  // int_0^{19.5 pi} sin = 1 (cos 0 - cos 19.5pi = 1 - 0)
  double v2 = integrate_panels_fixed(f, 0.0, M_PI * 0.75, 26, 16);
  CHECK(v2 == doctest::Approx(1.0).epsilon(1e-13));
}
