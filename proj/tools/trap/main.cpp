// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "csv.hpp"
#include "scenario.hpp"
#include "trap/errors.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path,
                  "configuration file (key = value lines)");
  cmd->add_option("--out", args.out_path,
                  "output CSV path (figure: output directory)");
  cmd->add_option("overrides", args.overrides,
                  "key=value configuration overrides");
}

trapcli::Scenario build_scenario(const CommonArgs& args) {
  std::map<std::string, std::string> kv;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path, std::ios::binary);
    if (!in)
      throw trap::ConfigError("cannot read config file: " + args.config_path);
    std::ostringstream text;
    text << in.rdbuf();
    kv = trapcli::parse_config_text(text.str());
  }
  for (const std::string& ov : args.overrides) {
    auto eq = ov.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == ov.size())
      throw trap::ConfigError("override must look like key=value: '" + ov +
                              "'");
    kv.insert_or_assign(ov.substr(0, eq), ov.substr(eq + 1));
  }
  return trapcli::scenario_from_kv(kv);
}

void emit(const trapcli::CommandOutput& out, const CommonArgs& args,
          bool files_to_directory) {
  if (!out.report.empty()) std::cout << out.report;
  if (!out.csv.empty()) {
    if (args.out_path.empty()) {
      std::cout << out.csv;
    } else {
      trapcli::atomic_write_file(args.out_path, out.csv);
    }
  }
  if (!out.files.empty()) {
    fs::path dir;
    std::string prefix;
    if (files_to_directory) {
      dir = args.out_path.empty() ? fs::path(".") : fs::path(args.out_path);
      fs::create_directories(dir);
    } else {
      // side files land next to the main output
      fs::path base = args.out_path.empty() ? fs::path("evolve.csv")
                                            : fs::path(args.out_path);
      dir = base.parent_path().empty() ? fs::path(".") : base.parent_path();
      prefix = base.stem().string() + ".";
    }
    for (const auto& [name, content] : out.files)
      trapcli::atomic_write_file((dir / (prefix + name)).string(), content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"axial double-well simulator for mirror-image planar Penning "
               "traps"};
  app.set_version_flag("--version", trapcli::tool_version());
  app.require_subcommand(1);

  CommonArgs args;
  int figure_number = 0;

  CLI::App* potential =
      app.add_subcommand("potential", "on-axis potential profile CSV");
  CLI::App* transition =
      app.add_subcommand("transition", "single->double well transition report");
  CLI::App* sweep =
      app.add_subcommand("sweep", "well shape vs V3 sweep CSV");
  CLI::App* tunneling =
      app.add_subcommand("tunneling", "tunneling frequency report and CSV");
  CLI::App* evolve =
      app.add_subcommand("evolve", "two-well population dynamics CSV");
  CLI::App* figure = app.add_subcommand(
      "figure", "write figN.csv/figN.meta reproduction datasets");
  figure->add_option("number", figure_number, "figure number (2, 3, 4, 6, 7)")
      ->required();
  for (CLI::App* cmd : {potential, transition, sweep, tunneling, evolve, figure})
    add_common(cmd, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    trapcli::Scenario scenario = build_scenario(args);
    trapcli::CommandOutput out;
    bool to_dir = false;
    if (potential->parsed()) {
      out = trapcli::cmd_potential(scenario);
    } else if (transition->parsed()) {
      out = trapcli::cmd_transition(scenario);
    } else if (sweep->parsed()) {
      out = trapcli::cmd_sweep(scenario);
    } else if (tunneling->parsed()) {
      out = trapcli::cmd_tunneling(scenario);
    } else if (evolve->parsed()) {
      out = trapcli::cmd_evolve(scenario);
    } else if (figure->parsed()) {
      out = trapcli::cmd_figure(scenario, figure_number);
      to_dir = true;
    }
    emit(out, args, to_dir);
    return 0;
  } catch (const trap::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const trap::NumericalError& e) {
    std::cerr << "numerical error: " << e.what()
              << " (achieved error estimate " << e.achieved_error() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
}
