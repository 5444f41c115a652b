// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

#include "trap/eigensolver.hpp"
#include "trap/electrostatics.hpp"

namespace trapcli {

struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  long count = 0;
  bool log = false;

  std::vector<double> grid() const;
};

/// Fully resolved run configuration. Defaults reproduce the canonical trap:
/// r2~ = 4.45, zc~ = 5.6, V1 = -12.8 V, V2 = -11.4 V, r1 = 100 um, with V3
/// placed 1.3 mV below the computed single->double-well transition.
struct Scenario {
  trap::TrapGeometry geometry{100e-6, 4.45, 5.6};
  double v1 = -12.8;
  double v2 = -11.4;
  std::optional<double> v3;  // absent: transition voltage - 1.3 mV

  trap::Grid1D solver_grid{2.0, 4001};
  long potential_samples = 501;

  std::optional<SweepSpec> sweep_v3;  // volts; default set by cmd_sweep

  std::optional<double> tunneling_L_m;     // direct mode
  std::optional<double> tunneling_Eb_eV;   // direct mode
  std::optional<SweepSpec> tunneling_eb;   // barrier grid, eV

  std::optional<double> evolve_eb_tilde;
  std::optional<double> evolve_L_m;
  std::optional<double> evolve_duration_s;
  std::optional<double> evolve_dt_s;
  long evolve_samples = 200;
  long evolve_snapshots = 0;
  trap::Grid1D evolve_grid{1.2, 201};
};

/// Parse `key = value` lines; '#' starts a comment. Returns the raw map.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Build a scenario from key/value pairs. Unknown keys and malformed or
/// out-of-range values raise trap::ConfigError naming the offending key.
Scenario scenario_from_kv(const std::map<std::string, std::string>& kv);

/// The v3 actually used: the configured value, or the computed transition
/// voltage minus 1.3 mV.
double resolved_v3(const Scenario& s);

/// Canonical key = value rendering of the resolved scenario (for .meta
/// files and reports). Deterministic.
std::string render_scenario(const Scenario& s);

const char* tool_version();

}  // namespace trapcli
