// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

#include "csv.hpp"
#include "trap/constants.hpp"
#include "trap/errors.hpp"
#include "trap/tunneling.hpp"
#include "trap/wells.hpp"

namespace trapcli {
namespace {

using namespace trap;

/// Index-parallel map with deterministic placement; worker count capped by
/// TRAP_THREADS when set.
void parallel_rows(long n, const std::function<void(long)>& fn) {
  long workers = static_cast<long>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TRAP_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) workers = std::min(workers, cap);
  }
  workers = std::max(1L, std::min(workers, n));
  if (workers == 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (long w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (long i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string regime_label(const SweepRow& row) {
  if (row.regime == WellRegime::single_well) return "single";
  return row.sub_quantum ? "double_subquantum" : "double";
}

/// Well shape of the scenario trap (throws if it is not a double well).
DoubleWellShape scenario_shape(const Scenario& s, double v3) {
  QuarticCoefficients c = quartic_coefficients(s.geometry, {s.v1, s.v2, v3});
  if (!(c.b > 0.0))
    throw ConfigError(
        "scenario trap is in the single-well regime at this v3; lower v3 "
        "below the transition or use direct tunneling.L_m/Eb_eV inputs");
  return shape_from_coefficients(c, s.geometry.r1_m);
}

std::string meta_block(const Scenario& s, const std::string& extra) {
  std::ostringstream out;
  out << "version = " << tool_version() << "\n" << render_scenario(s) << extra;
  return out.str();
}

std::string potential_csv(const Scenario& s, double v3, long samples) {
  VoltageSet volt{s.v1, s.v2, v3};
  double zc = s.geometry.zc_tilde;
  std::ostringstream out;
  out << "z_tilde,z_m,V_volts,U_eV\n";
  std::vector<std::string> rows(samples);
  parallel_rows(samples, [&](long i) {
    double f = static_cast<double>(i) / (samples - 1);
    double z = (0.05 + 0.90 * f) * zc;
    double v = axial_potential(z, s.geometry, volt);
    double u_ev = joule_to_ev(-constants::elementary_charge * v);
    rows[i] = csv_row({num17(z), num17(z * s.geometry.r1_m), num17(v),
                       num17(u_ev)});
  });
  for (const auto& r : rows) out << r;
  return out.str();
}

}  // namespace

CommandOutput cmd_potential(const Scenario& s) {
  CommandOutput out;
  out.csv = potential_csv(s, resolved_v3(s), s.potential_samples);
  return out;
}

CommandOutput cmd_transition(const Scenario& s) {
  ExpansionIntegrals in = expansion_integrals(s.geometry);
  double vstar = transition_voltage(s.geometry, s.v1, s.v2);
  QuarticCoefficients at = quartic_coefficients(s.geometry, {s.v1, s.v2, vstar});

  // finite-difference cross-check: the fitted b changes sign across vstar
  const double dv = 1e-4;
  double b_lo = quartic_fit(s.geometry, {s.v1, s.v2, vstar - dv}).b;
  double b_hi = quartic_fit(s.geometry, {s.v1, s.v2, vstar + dv}).b;
  double fit_zero = vstar;
  if (b_lo != b_hi)
    fit_zero = (vstar - dv) + 2.0 * dv * b_lo / (b_lo - b_hi);

  std::ostringstream r;
  r << "a1 = " << num17(in.a1) << "\n"
    << "a2 = " << num17(in.a2) << "\n"
    << "b1 = " << num17(in.b1) << "\n"
    << "b2 = " << num17(in.b2) << "\n"
    << "V3_transition_V = " << num17(vstar) << "\n"
    << "b_at_transition_J = " << num17(at.b) << "\n"
    << "fit_b_below_J = " << num17(b_lo) << "  # at V3 = transition - 1e-4 V\n"
    << "fit_b_above_J = " << num17(b_hi) << "  # at V3 = transition + 1e-4 V\n"
    << "fit_b_zero_V = " << num17(fit_zero) << "\n";
  CommandOutput out;
  out.report = r.str();
  return out;
}

CommandOutput cmd_sweep(const Scenario& s) {
  SweepSpec spec;
  if (s.sweep_v3) {
    spec = *s.sweep_v3;
  } else {
    double vstar = transition_voltage(s.geometry, s.v1, s.v2);
    spec = SweepSpec{vstar - 0.05, vstar + 0.01, 121, false};
  }
  std::vector<double> grid = spec.grid();
  auto rows = sweep_v3(s.geometry, s.v1, s.v2, grid);

  std::ostringstream out;
  out << "V3_volts,L_m,Eb_eV,regime\n";
  for (const auto& row : rows) {
    out << csv_row(
        {num17(row.v3),
         row.well_distance_m ? num17(*row.well_distance_m) : std::string{},
         row.barrier_height_J ? num17(joule_to_ev(*row.barrier_height_J))
                              : std::string{},
         regime_label(row)});
  }
  CommandOutput res;
  res.csv = out.str();
  return res;
}

CommandOutput cmd_tunneling(const Scenario& s) {
  double L, eb_ev;
  std::string mode;
  if (s.tunneling_Eb_eV) {
    L = s.tunneling_L_m.value_or(10e-6);
    eb_ev = *s.tunneling_Eb_eV;
    mode = "direct";
  } else {
    DoubleWellShape shape = scenario_shape(s, resolved_v3(s));
    L = s.tunneling_L_m.value_or(shape.well_distance_m);
    eb_ev = joule_to_ev(shape.barrier_height_J);
    mode = "scenario";
  }

  double eb_J = ev_to_joule(eb_ev);
  TunnelingResult point = characterize_tunneling(L, eb_J, s.solver_grid);
  double wz = classical_axial_frequency({L, eb_J, s.geometry.r1_m});

  std::ostringstream r;
  r << "mode = " << mode << "\n"
    << "L_m = " << num17(L) << "\n"
    << "Eb_eV = " << num17(eb_ev) << "\n"
    << "Eb_tilde = " << num17(dimensionless_barrier(eb_J, L)) << "\n"
    << "f = " << num17(point.f_value) << "\n"
    << "regime = " << to_string(point.regime) << "\n"
    << "wz_Hz = " << num17(wz) << "\n";
  if (point.tunneling_frequency_Hz)
    r << "freq_Hz = " << num17(*point.tunneling_frequency_Hz) << "\n";
  else
    r << "freq_Hz =\n";

  SweepSpec spec = s.tunneling_eb.value_or(
      SweepSpec{eb_ev / 10.0, eb_ev * 10.0, 41, true});
  std::vector<double> grid = spec.grid();
  std::vector<std::string> rows(grid.size());
  parallel_rows(static_cast<long>(grid.size()), [&](long i) {
    double row_eb_J = ev_to_joule(grid[i]);
    TunnelingResult t = characterize_tunneling(L, row_eb_J, s.solver_grid);
    double row_wz = classical_axial_frequency({L, row_eb_J, s.geometry.r1_m});
    std::string freq;
    if (t.tunneling_frequency_Hz) freq = num17(*t.tunneling_frequency_Hz);
    rows[i] = csv_row({num17(grid[i]), num17(t.f_value), freq, num17(row_wz),
                       to_string(t.regime)});
  });

  std::ostringstream out;
  out << "Eb_eV,f,freq_Hz,wz_Hz,regime\n";
  for (const auto& row : rows) out << row;

  CommandOutput res;
  res.report = r.str();
  res.csv = out.str();
  return res;
}

CommandOutput cmd_evolve(const Scenario& s) {
  double ebt, L;
  if (s.evolve_eb_tilde) {
    ebt = *s.evolve_eb_tilde;
    L = s.evolve_L_m.value_or(10e-6);
  } else {
    DoubleWellShape shape = scenario_shape(s, resolved_v3(s));
    L = s.evolve_L_m.value_or(shape.well_distance_m);
    ebt = dimensionless_barrier(shape.barrier_height_J, L);
  }

  const Grid1D& grid = s.evolve_grid;
  EigenSolution sol = quartic_spectrum(ebt, 2, grid);
  double split = sol.eigenvalues[1] - sol.eigenvalues[0];
  if (!(split > 0.0) || sol.eigenvalues[1] >= 0.0)
    throw ConfigError(
        "evolve: no bound tunneling pair at this barrier; nothing to evolve");
  LocalizedPair pair =
      localized_states(sol.eigenvectors[0], sol.eigenvectors[1], grid);

  // time unit: hbar / (hbar^2/2mL^2) = 2 m L^2 / hbar
  double tau = 2.0 * constants::electron_mass * L * L / constants::hbar;

  double h = grid.spacing();
  double umax = 0.0;
  for (double u : sol.potential) umax = std::max(umax, std::abs(u));
  double dt_guard = 0.45 / (umax + 4.0 / (h * h));
  double dt_rabi = 1e-3 / split;
  double dt_well = 2.0 * M_PI / (8.0 * std::sqrt(ebt)) / 1000.0;
  double dt = std::min({dt_guard, dt_rabi, dt_well});
  if (s.evolve_dt_s) dt = *s.evolve_dt_s / tau;  // explicit override, checked below

  double duration = s.evolve_duration_s ? *s.evolve_duration_s / tau
                                        : 2.0 * M_PI / split;  // one period

  long samples = s.evolve_samples;
  long total_steps = std::max(1L, static_cast<long>(std::ceil(duration / dt)));
  long chunk = std::max(1L, total_steps / samples);

  WaveState state;
  state.grid = grid;
  state.amplitudes.assign(grid.n_points, {0.0, 0.0});
  for (int i = 0; i < grid.n_points; ++i) state.amplitudes[i] = pair.right[i];

  std::ostringstream out;
  out << "t_s,P_left,P_right,P_right_twolevel\n";
  std::ostringstream snap;
  snap << "t_s,zeta,density\n";
  long snap_every =
      s.evolve_snapshots > 0
          ? std::max(1L, (total_steps / chunk) / s.evolve_snapshots)
          : 0;

  long done = 0;
  long row_index = 0;
  while (true) {
    auto [pl, pr] = well_populations(state);
    double tl = std::pow(std::cos(0.5 * split * done * dt), 2);
    out << csv_row({num17(done * dt * tau), num17(pl), num17(pr), num17(tl)});
    if (snap_every > 0 && row_index % snap_every == 0) {
      std::vector<double> dens = state.density();
      for (int i = 0; i < grid.n_points; ++i)
        snap << csv_row({num17(done * dt * tau), num17(grid.point(i)),
                         num17(dens[i])});
    }
    if (done >= total_steps) break;
    long n = std::min(chunk, total_steps - done);
    state = propagate(state, sol.potential, dt, n);
    done += n;
    ++row_index;
  }

  CommandOutput res;
  res.csv = out.str();
  std::ostringstream r;
  r << "Eb_tilde = " << num17(ebt) << "\n"
    << "L_m = " << num17(L) << "\n"
    << "splitting = " << num17(split) << "\n"
    << "rabi_period_s = " << num17(2.0 * M_PI / split * tau) << "\n"
    << "dt_s = " << num17(dt * tau) << "\n"
    << "steps = " << total_steps << "\n";
  res.report = r.str();
  if (s.evolve_snapshots > 0)
    res.files.emplace_back("snapshots.csv", snap.str());
  return res;
}

CommandOutput cmd_figure(const Scenario& s, int number) {
  CommandOutput res;
  std::string meta_extra;
  switch (number) {
    case 2: {
      double vstar = transition_voltage(s.geometry, s.v1, s.v2);
      const struct {
        const char* name;
        double v3;
      } panels[] = {{"fig2_below.csv", vstar - 0.0013},
                    {"fig2_at.csv", vstar},
                    {"fig2_above.csv", vstar + 0.0013}};
      for (const auto& p : panels) {
        res.files.emplace_back(p.name,
                               potential_csv(s, p.v3, s.potential_samples));
        meta_extra += std::string(p.name) + ".v3_V = " + num17(p.v3) + "\n";
      }
      break;
    }
    case 3: {
      CommandOutput sweep = cmd_sweep(s);
      res.files.emplace_back("fig3.csv", sweep.csv);
      break;
    }
    case 4:
    case 7: {
      // frequency vs barrier height for three well distances
      const double lengths[] = {5e-6, 10e-6, 20e-6};
      SweepSpec spec{1e-9, 1e-5, 61, true};
      std::vector<double> grid = spec.grid();
      long total = static_cast<long>(grid.size()) * 3;
      std::vector<std::string> rows(total);
      parallel_rows(total, [&](long idx) {
        double L = lengths[idx / grid.size()];
        double eb_ev = grid[idx % grid.size()];
        double eb_J = ev_to_joule(eb_ev);
        TunnelingResult t =
            f_of_barrier(dimensionless_barrier(eb_J, L), s.solver_grid);
        if (number == 4) {
          double wz = classical_axial_frequency({L, eb_J, s.geometry.r1_m});
          rows[idx] = csv_row({num17(L), num17(eb_ev), num17(wz),
                               to_string(t.regime)});
        } else {
          std::string freq;
          if (t.regime == TunnelRegime::tunneling)
            freq = num17(t.f_value * constants::hbar /
                         (4.0 * M_PI * constants::electron_mass * L * L));
          rows[idx] = csv_row(
              {num17(L), num17(eb_ev), freq, to_string(t.regime)});
        }
      });
      std::ostringstream out;
      out << (number == 4 ? "L_m,Eb_eV,wz_Hz,regime\n"
                          : "L_m,Eb_eV,freq_Hz,regime\n");
      for (const auto& r : rows) out << r;
      res.files.emplace_back(number == 4 ? "fig4.csv" : "fig7.csv", out.str());
      break;
    }
    case 6: {
      SweepSpec spec{10.0, 1000.0, 61, true};
      std::vector<double> grid = spec.grid();
      std::vector<std::string> rows(grid.size());
      parallel_rows(static_cast<long>(grid.size()), [&](long i) {
        TunnelingResult t = f_of_barrier(grid[i], s.solver_grid);
        if (t.regime == TunnelRegime::tunneling)
          rows[i] = csv_row({num17(grid[i]), num17(t.f_value)});
      });
      std::ostringstream out;
      out << "Eb_tilde,f\n";
      for (const auto& r : rows) out << r;
      res.files.emplace_back("fig6.csv", out.str());
      break;
    }
    default:
      throw ConfigError("figure: number must be one of 2, 3, 4, 6, 7");
  }
  res.files.emplace_back("fig" + std::to_string(number) + ".meta",
                         "# trap figure " + std::to_string(number) + "\n" +
                             meta_block(s, meta_extra));
  return res;
}

}  // namespace trapcli
