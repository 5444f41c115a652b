// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "trap/bessel.hpp"
#include "trap/constants.hpp"
#include "trap/eigensolver.hpp"
#include "trap/electrostatics.hpp"
#include "trap/tunneling.hpp"

namespace {

const trap::TrapGeometry kGeom{100e-6, 4.45, 5.6};

void BM_bessel_j1_series(benchmark::State& state) {
  double x = 7.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(trap::bessel_j1(x));
  }
}
BENCHMARK(BM_bessel_j1_series);

void BM_bessel_j1_asymptotic(benchmark::State& state) {
  double x = 4812.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(trap::bessel_j1(x));
  }
}
BENCHMARK(BM_bessel_j1_asymptotic);

void BM_phi_kernel(benchmark::State& state) {
  double z = 1e-4 * state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trap::phi_kernel(2, z, kGeom));
  }
}
// near the plane, mid-gap, near the far plane
BENCHMARK(BM_phi_kernel)->Arg(1)->Arg(28000)->Arg(55999);

void BM_expansion_integrals(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(trap::expansion_integrals(kGeom));
  }
}
BENCHMARK(BM_expansion_integrals);

void BM_quartic_fit(benchmark::State& state) {
  trap::VoltageSet volt{-12.8, -11.4, -12.7897};
  for (auto _ : state) {
    benchmark::DoNotOptimize(trap::quartic_fit(kGeom, volt));
  }
}
BENCHMARK(BM_quartic_fit);

void BM_quartic_spectrum(benchmark::State& state) {
  trap::Grid1D grid{2.0, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(trap::quartic_spectrum(157.4, 2, grid));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_quartic_spectrum)->Arg(1001)->Arg(4001)->Arg(16001)->Complexity();

void BM_crank_nicolson_step(benchmark::State& state) {
  trap::Grid1D grid{1.2, static_cast<int>(state.range(0))};
  trap::EigenSolution sol = trap::quartic_spectrum(157.4, 2, grid);
  trap::WaveState st;
  st.grid = grid;
  st.amplitudes.assign(grid.n_points, {0.0, 0.0});
  for (int i = 0; i < grid.n_points; ++i)
    st.amplitudes[i] = sol.eigenvectors[0][i];
  double h = grid.spacing();
  double umax = 0.0;
  for (double u : sol.potential) umax = std::max(umax, std::abs(u));
  double dt = 0.45 / (umax + 4.0 / (h * h));
  const long steps_per_iter = 256;
  for (auto _ : state) {
    st = trap::propagate(st, sol.potential, dt, steps_per_iter);
    benchmark::DoNotOptimize(st.amplitudes.data());
  }
  state.SetItemsProcessed(state.iterations() * steps_per_iter *
                          grid.n_points);
}
BENCHMARK(BM_crank_nicolson_step)->Arg(201)->Arg(1001)->Arg(4001);

}  // namespace

BENCHMARK_MAIN();
