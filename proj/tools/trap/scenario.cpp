// SPDX-License-Identifier: Apache-2.0
#include "scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <vector>

#include "csv.hpp"
#include "trap/errors.hpp"

namespace trapcli {

const char* tool_version() { return "trapsim " TRAPSIM_VERSION; }

std::vector<double> SweepSpec::grid() const {
  std::vector<double> g;
  g.reserve(count);
  if (count == 1) {
    g.push_back(start);
    return g;
  }
  for (long i = 0; i < count; ++i) {
    double f = static_cast<double>(i) / (count - 1);
    if (log)
      g.push_back(start * std::pow(stop / start, f));
    else
      g.push_back(start + (stop - start) * f);
  }
  return g;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw trap::ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw trap::ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");
    if (kv.count(key))
      throw trap::ConfigError("config: duplicate key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

namespace {

double parse_number(const std::string& key, const std::string& value) {
  const char* s = value.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !std::isfinite(v))
    throw trap::ConfigError("config: key '" + key +
                            "': not a finite number: '" + value + "'");
  return v;
}

long parse_count(const std::string& key, const std::string& value) {
  double v = parse_number(key, value);
  long n = static_cast<long>(v);
  if (n != v || n < 1)
    throw trap::ConfigError("config: key '" + key +
                            "': must be a positive integer");
  return n;
}

bool parse_scale(const std::string& key, const std::string& value) {
  if (value == "log") return true;
  if (value == "linear") return false;
  throw trap::ConfigError("config: key '" + key +
                          "': expected 'linear' or 'log'");
}

// sweep specs are assembled from their parts after the main pass
struct SweepParts {
  std::optional<double> start, stop;
  std::optional<long> count;
  bool log = false;
  bool touched = false;
};

std::optional<SweepSpec> finish_sweep(const std::string& prefix,
                                      const SweepParts& p,
                                      bool positive_required) {
  if (!p.touched) return {};
  if (!p.start || !p.stop || !p.count)
    throw trap::ConfigError("config: sweep '" + prefix +
                            "': start, stop and count are all required");
  SweepSpec s{*p.start, *p.stop, *p.count, p.log};
  if (s.log && !(s.start > 0.0 && s.stop > 0.0))
    throw trap::ConfigError("config: sweep '" + prefix +
                            "': log scale needs positive endpoints");
  if (positive_required && !(s.start > 0.0 && s.stop > 0.0))
    throw trap::ConfigError("config: sweep '" + prefix +
                            "': endpoints must be positive");
  return s;
}

}  // namespace

Scenario scenario_from_kv(const std::map<std::string, std::string>& kv) {
  Scenario s;
  SweepParts sweep_v3, tun_eb;
  for (const auto& [key, value] : kv) {
    if (key == "geometry.r1_m")
      s.geometry.r1_m = parse_number(key, value);
    else if (key == "geometry.r2_tilde")
      s.geometry.r2_tilde = parse_number(key, value);
    else if (key == "geometry.zc_tilde")
      s.geometry.zc_tilde = parse_number(key, value);
    else if (key == "voltages.v1_V")
      s.v1 = parse_number(key, value);
    else if (key == "voltages.v2_V")
      s.v2 = parse_number(key, value);
    else if (key == "voltages.v3_V")
      s.v3 = parse_number(key, value);
    else if (key == "solver.half_width")
      s.solver_grid.half_width = parse_number(key, value);
    else if (key == "solver.n_points")
      s.solver_grid.n_points = static_cast<int>(parse_count(key, value));
    else if (key == "potential.samples")
      s.potential_samples = parse_count(key, value);
    else if (key == "sweep.v3.start_V")
      sweep_v3.start = parse_number(key, value), sweep_v3.touched = true;
    else if (key == "sweep.v3.stop_V")
      sweep_v3.stop = parse_number(key, value), sweep_v3.touched = true;
    else if (key == "sweep.v3.count")
      sweep_v3.count = parse_count(key, value), sweep_v3.touched = true;
    else if (key == "sweep.v3.scale")
      sweep_v3.log = parse_scale(key, value), sweep_v3.touched = true;
    else if (key == "tunneling.L_m")
      s.tunneling_L_m = parse_number(key, value);
    else if (key == "tunneling.Eb_eV")
      s.tunneling_Eb_eV = parse_number(key, value);
    else if (key == "tunneling.eb.start_eV")
      tun_eb.start = parse_number(key, value), tun_eb.touched = true;
    else if (key == "tunneling.eb.stop_eV")
      tun_eb.stop = parse_number(key, value), tun_eb.touched = true;
    else if (key == "tunneling.eb.count")
      tun_eb.count = parse_count(key, value), tun_eb.touched = true;
    else if (key == "tunneling.eb.scale")
      tun_eb.log = parse_scale(key, value), tun_eb.touched = true;
    else if (key == "evolve.Eb_tilde")
      s.evolve_eb_tilde = parse_number(key, value);
    else if (key == "evolve.L_m")
      s.evolve_L_m = parse_number(key, value);
    else if (key == "evolve.duration_s")
      s.evolve_duration_s = parse_number(key, value);
    else if (key == "evolve.dt_s")
      s.evolve_dt_s = parse_number(key, value);
    else if (key == "evolve.samples")
      s.evolve_samples = parse_count(key, value);
    else if (key == "evolve.snapshots")
      s.evolve_snapshots = parse_count(key, value);
    else if (key == "evolve.grid.half_width")
      s.evolve_grid.half_width = parse_number(key, value);
    else if (key == "evolve.grid.n_points")
      s.evolve_grid.n_points = static_cast<int>(parse_count(key, value));
    else
      throw trap::ConfigError("config: unknown key '" + key + "'");
  }
  s.sweep_v3 = finish_sweep("sweep.v3", sweep_v3, false);
  s.tunneling_eb = finish_sweep("tunneling.eb", tun_eb, true);

  // validate against the module preconditions up front
  s.geometry.validate();
  trap::VoltageSet{s.v1, s.v2, s.v3.value_or(0.0)}.validate();
  s.solver_grid.validate();
  s.evolve_grid.validate();
  if (s.potential_samples < 2)
    throw trap::ConfigError("config: key 'potential.samples': need >= 2");
  if (s.tunneling_L_m && !(*s.tunneling_L_m > 0.0))
    throw trap::ConfigError("config: key 'tunneling.L_m': must be positive");
  if (s.tunneling_Eb_eV && !(*s.tunneling_Eb_eV > 0.0))
    throw trap::ConfigError("config: key 'tunneling.Eb_eV': must be positive");
  if (s.evolve_eb_tilde && !(*s.evolve_eb_tilde > 0.0))
    throw trap::ConfigError("config: key 'evolve.Eb_tilde': must be positive");
  if (s.evolve_L_m && !(*s.evolve_L_m > 0.0))
    throw trap::ConfigError("config: key 'evolve.L_m': must be positive");
  if (s.evolve_duration_s && !(*s.evolve_duration_s > 0.0))
    throw trap::ConfigError(
        "config: key 'evolve.duration_s': must be positive");
  if (s.evolve_dt_s && !(*s.evolve_dt_s > 0.0))
    throw trap::ConfigError("config: key 'evolve.dt_s': must be positive");
  return s;
}

double resolved_v3(const Scenario& s) {
  if (s.v3) return *s.v3;
  return trap::transition_voltage(s.geometry, s.v1, s.v2) - 1.3e-3;
}

std::string render_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "geometry.r1_m = " << num17(s.geometry.r1_m) << "\n"
      << "geometry.r2_tilde = " << num17(s.geometry.r2_tilde) << "\n"
      << "geometry.zc_tilde = " << num17(s.geometry.zc_tilde) << "\n"
      << "voltages.v1_V = " << num17(s.v1) << "\n"
      << "voltages.v2_V = " << num17(s.v2) << "\n";
  if (s.v3)
    out << "voltages.v3_V = " << num17(*s.v3) << "\n";
  else
    out << "voltages.v3_V = auto  # transition voltage - 1.3 mV\n";
  out << "solver.half_width = " << num17(s.solver_grid.half_width) << "\n"
      << "solver.n_points = " << s.solver_grid.n_points << "\n";
  return out.str();
}

}  // namespace trapcli
