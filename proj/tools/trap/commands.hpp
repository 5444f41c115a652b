// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scenario.hpp"

namespace trapcli {

/// What a subcommand produced. `csv` goes to --out (or stdout), `report`
/// to stdout; `files` are named artifacts (the figure command).
struct CommandOutput {
  std::string csv;
  std::string report;
  std::vector<std::pair<std::string, std::string>> files;
};

CommandOutput cmd_potential(const Scenario& s);
CommandOutput cmd_transition(const Scenario& s);
CommandOutput cmd_sweep(const Scenario& s);
CommandOutput cmd_tunneling(const Scenario& s);
CommandOutput cmd_evolve(const Scenario& s);
CommandOutput cmd_figure(const Scenario& s, int number);

}  // namespace trapcli
