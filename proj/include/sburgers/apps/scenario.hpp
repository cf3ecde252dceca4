#pragma once

#include <string>
#include <vector>

#include "sburgers/apps/checks.hpp"
#include "sburgers/apps/io.hpp"

namespace sburgers {

/// Exit codes of a scenario run.
enum ExitCode : int { kExitSuccess = 0, kExitToleranceFailure = 2, kExitConfigurationError = 3 };

struct ScenarioReport {
  Summary summary;
  std::vector<CheckResult> checks;
  /// Paths written, relative to the output directory, in write order.
  std::vector<std::string> files;

  int exit_code() const { return summary.all_passed() ? kExitSuccess : kExitToleranceFailure; }
};

/// Runs the checks of `config.application` without touching the file system.
ScenarioReport evaluate_scenario(const ScenarioConfig& config, Artifacts* artifacts);

/// Evaluates the scenario, then writes `summary.json`, `fields/*.csv`, `series/*.csv` and
/// `plot.gp` under `config.output_dir`. Nothing is written if evaluation throws.
ScenarioReport run_scenario(const ScenarioConfig& config);

/// gnuplot script for the CSV files already present under `output_dir`.
std::string plot_script_for(const std::string& output_dir);

}  // namespace sburgers
