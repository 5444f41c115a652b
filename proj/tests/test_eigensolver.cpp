// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "support/oracles.hpp"
#include "trap/eigensolver.hpp"
#include "trap/errors.hpp"

using namespace trap;

namespace {

std::vector<double> box_potential(const Grid1D& g) {
  return std::vector<double>(g.n_points, 0.0);
}

std::vector<double> harmonic_potential(const Grid1D& g) {
  std::vector<double> u(g.n_points);
  for (int i = 0; i < g.n_points; ++i) u[i] = g.point(i) * g.point(i);
  return u;
}

double grid_dot(const std::vector<double>& a, const std::vector<double>& b,
                double h) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * h;
}

}  // namespace

TEST_CASE("dimensionless quartic landmarks") {
  for (double ebt : {1.0, 157.4, 500.0}) {
    CHECK(dimensionless_quartic(0.0, ebt) == 0.0);
    CHECK(dimensionless_quartic(0.5, ebt) == doctest::Approx(-ebt));
    CHECK(dimensionless_quartic(-0.5, ebt) == doctest::Approx(-ebt));
    CHECK(dimensionless_quartic(0.5 / std::sqrt(2.0), ebt) ==
          doctest::Approx(-0.75 * ebt).epsilon(1e-12));
  }
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    double z = dist(rng);
    CHECK(dimensionless_quartic(z, 80.0) ==
          doctest::Approx(dimensionless_quartic(-z, 80.0)).epsilon(1e-14));
  }
}

TEST_CASE("hamiltonian stencil layout") {
  Grid1D g{2.0, 5};
  std::vector<double> u = {7.0, 1.0, 2.0, 3.0, 7.0};
  SymTridiagonal t = build_hamiltonian(u, g);
  double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  REQUIRE(t.diag.size() == 3);
  REQUIRE(t.off.size() == 2);
  CHECK(t.diag[0] == 2.0 * inv_h2 + 1.0);
  CHECK(t.diag[1] == 2.0 * inv_h2 + 2.0);
  CHECK(t.diag[2] == 2.0 * inv_h2 + 3.0);
  CHECK(t.off[0] == -inv_h2);
  CHECK(t.off[1] == -inv_h2);
}

TEST_CASE("particle in a box eigenvalues, second-order convergence") {
  const double W = 4.0;
  std::vector<double> err0;
  for (int n : {101, 201, 401}) {
    Grid1D g{W / 2.0, n};
    SymTridiagonal t = build_hamiltonian(box_potential(g), g);
    EigenPairs p = lowest_eigenpairs(t, 5, g.spacing());
    for (int m = 0; m < 5; ++m) {
      double exact = std::pow((m + 1) * M_PI / W, 2);
      double h = g.spacing();
      // discrete dispersion: within O(h^2) of the continuum value
      CHECK(std::abs(p.values[m] - exact) <
            2.0 * std::pow((m + 1) * M_PI / W, 4) * h * h);
    }
    err0.push_back(std::abs(p.values[0] - std::pow(M_PI / W, 2)));
  }
  double order1 = std::log2(err0[0] / err0[1]);
  double order2 = std::log2(err0[1] / err0[2]);
  CHECK(order1 == doctest::Approx(2.0).epsilon(0.05));
  CHECK(order2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("harmonic oscillator levels 2n+1") {
  Grid1D g{8.0, 4001};
  SymTridiagonal t = build_hamiltonian(harmonic_potential(g), g);
  EigenPairs p = lowest_eigenpairs(t, 6, g.spacing());
  for (int n = 0; n < 6; ++n)
    CHECK(std::abs(p.values[n] - (2.0 * n + 1.0)) < 1e-4);
  CHECK(p.values[1] - p.values[0] == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("dense Jacobi oracle equivalence at n=201") {
  Grid1D g{2.0, 201};
  std::vector<double> u(g.n_points);
  for (int i = 0; i < g.n_points; ++i)
    u[i] = dimensionless_quartic(g.point(i), 30.0);
  SymTridiagonal t = build_hamiltonian(u, g);
  const int k = 6;
  EigenPairs mine = lowest_eigenpairs(t, k, g.spacing());

  int m = static_cast<int>(t.diag.size());
  std::vector<std::vector<double>> dense(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i) {
    dense[i][i] = t.diag[i];
    if (i + 1 < m) dense[i][i + 1] = dense[i + 1][i] = t.off[i];
  }
  oracle::DenseEigen ref = oracle::jacobi_eigen(std::move(dense));

  for (int i = 0; i < k; ++i) {
    CHECK(std::abs(mine.values[i] - ref.values[i]) <=
          1e-9 * std::max(1.0, std::abs(ref.values[i])));
    // vectors (l2-normalized), up to sign
    std::vector<double> v = mine.vectors[i];
    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    for (double& x : v) x /= nv;
    double dplus = 0.0, dminus = 0.0;
    for (int j = 0; j < m; ++j) {
      dplus += std::pow(v[j] - ref.vectors[i][j], 2);
      dminus += std::pow(v[j] + ref.vectors[i][j], 2);
    }
    CHECK(std::sqrt(std::min(dplus, dminus)) < 1e-6);
  }
}

TEST_CASE("quartic spectrum at the canonical barrier") {
  EigenSolution s = quartic_spectrum(157.4, 4);
  CHECK(s.warning.empty());
  // frozen from three independent solvers (FD tridiagonal at n = 2001,
  // 4001, 8001 and an 800-state Hermite-basis diagonalization)
  CHECK(s.eigenvalues[1] - s.eigenvalues[0] ==
        doctest::Approx(0.162743).epsilon(2e-4));

  // near-degenerate pair far below the single-well spacing
  double pair = s.eigenvalues[1] - s.eigenvalues[0];
  double well = s.eigenvalues[2] - s.eigenvalues[1];
  CHECK(pair / well < 0.1);

  // parity: ground even, first excited odd
  int n = s.grid.n_points;
  double resid_even = 0.0, resid_odd = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    resid_even += std::pow(s.eigenvectors[0][i] - s.eigenvectors[0][n - 1 - i], 2);
    resid_odd += std::pow(s.eigenvectors[1][i] + s.eigenvectors[1][n - 1 - i], 2);
    scale = std::max(scale, std::abs(s.eigenvectors[0][i]));
  }
  CHECK(std::sqrt(resid_even * s.grid.spacing()) < 1e-6);
  CHECK(std::sqrt(resid_odd * s.grid.spacing()) < 1e-6);

  // node structure
  CHECK(oracle::count_nodes(s.eigenvectors[0]) == 0);
  CHECK(oracle::count_nodes(s.eigenvectors[1]) == 1);

  // orthonormality under the grid inner product
  double h = s.grid.spacing();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j <= i; ++j) {
      double expect = i == j ? 1.0 : 0.0;
      CHECK(std::abs(grid_dot(s.eigenvectors[i], s.eigenvectors[j], h) -
                     expect) < 1e-8);
    }

  // strictly ascending
  for (int i = 1; i < 4; ++i) CHECK(s.eigenvalues[i] > s.eigenvalues[i - 1]);
}

TEST_CASE("splitting shrinks as the barrier grows") {
  double prev = 1e300;
  for (double ebt : {20.0, 40.0, 80.0, 160.0, 320.0}) {
    EigenSolution s = quartic_spectrum(ebt, 2);
    double split = s.eigenvalues[1] - s.eigenvalues[0];
    CHECK(split < prev);
    CHECK(s.eigenvalues[1] < 0.0);  // pair bound below the barrier top
    prev = split;
  }
}

TEST_CASE("near-degeneracy at a high barrier") {
  EigenSolution s = quartic_spectrum(320.0, 3);
  double split = s.eigenvalues[1] - s.eigenvalues[0];
  double spacing = s.eigenvalues[2] - s.eigenvalues[0];
  CHECK(split < 1e-2 * spacing);
}

TEST_CASE("per-well spacing approaches the classical frequency") {
  // dimensionless per-well quantum: 8 sqrt(Eb~) from the curvature at the
  // minima; anharmonic corrections fall off as 1/sqrt(Eb~)
  for (double ebt : {400.0, 500.0}) {
    EigenSolution s = quartic_spectrum(ebt, 3);
    double spacing = s.eigenvalues[2] - s.eigenvalues[0];
    CHECK(spacing == doctest::Approx(8.0 * std::sqrt(ebt)).epsilon(0.10));
  }
  // at the canonical barrier the correction is still ~20%
  EigenSolution s = quartic_spectrum(157.4, 3);
  double spacing = s.eigenvalues[2] - s.eigenvalues[0];
  CHECK(spacing == doctest::Approx(8.0 * std::sqrt(157.4)).epsilon(0.25));
}

TEST_CASE("grid convergence of the splitting") {
  for (double ebt : {20.0, 157.4, 500.0}) {
    EigenSolution a = quartic_spectrum(ebt, 2, Grid1D{2.0, 4001});
    EigenSolution b = quartic_spectrum(ebt, 2, Grid1D{2.0, 8001});
    double fa = a.eigenvalues[1] - a.eigenvalues[0];
    double fb = b.eigenvalues[1] - b.eigenvalues[0];
    CHECK(std::abs(fa - fb) < 0.01 * std::abs(fb));
  }
}

TEST_CASE("domain warning for a squeezed grid") {
  EigenSolution s = quartic_spectrum(10.0, 1, Grid1D{0.55, 21});
  CHECK(!s.warning.empty());
  EigenSolution ok = quartic_spectrum(157.4, 2);
  CHECK(ok.warning.empty());
}

TEST_CASE("solver is deterministic") {
  EigenSolution a = quartic_spectrum(157.4, 2);
  EigenSolution b = quartic_spectrum(157.4, 2);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(Grid1D({2.0, 4000}).validate(), ConfigError);
  CHECK_THROWS_AS(Grid1D({0.4, 4001}).validate(), ConfigError);
  CHECK_THROWS_AS(quartic_spectrum(-1.0, 2), std::domain_error);
  Grid1D g{2.0, 11};
  std::vector<double> u(11, 0.0);
  SymTridiagonal t = build_hamiltonian(u, g);
  CHECK_THROWS_AS(lowest_eigenpairs(t, 0), ConfigError);
  CHECK_THROWS_AS(lowest_eigenpairs(t, 100), ConfigError);
  std::vector<double> wrong(10, 0.0);
  CHECK_THROWS_AS(build_hamiltonian(wrong, g), ConfigError);
}
