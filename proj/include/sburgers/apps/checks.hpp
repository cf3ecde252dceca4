#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sburgers/apps/config.hpp"

namespace sburgers {

struct CheckResult {
  /// Acceptance criterion number; 0 for auxiliary checks.
  int id = 0;
  std::string name;
  bool passed = false;
  std::vector<std::pair<std::string, double>> metrics;
  std::string detail;
  double seconds = 0.0;
  /// Wall-clock budget in seconds; 0 means none.
  double budget_seconds = 0.0;

  bool within_budget() const { return budget_seconds <= 0.0 || seconds <= budget_seconds; }
};

using SeriesTable = std::vector<std::pair<std::string, Eigen::VectorXd>>;

/// Optional outputs collected while checks run.
struct Artifacts {
  std::vector<std::pair<std::string, Field>> fields;
  std::vector<std::pair<std::string, SeriesTable>> series;
};

CheckResult check_forward_cross_validation(const ScenarioConfig& config, Artifacts* artifacts = nullptr);
CheckResult check_point_transform(const ScenarioConfig& config);
CheckResult check_generalized_transform(const ScenarioConfig& config, Artifacts* artifacts = nullptr);
CheckResult check_terminal_compatibility(const ScenarioConfig& config);
CheckResult check_fk_forward(const ScenarioConfig& config);
CheckResult check_fk_backward(const ScenarioConfig& config);
CheckResult check_fbsde(const ScenarioConfig& config);
CheckResult check_controllability(const ScenarioConfig& config, Artifacts* artifacts = nullptr);
CheckResult check_pricing(const ScenarioConfig& config, Artifacts* artifacts = nullptr);
/// Controllability and pricing together.
CheckResult check_applications(const ScenarioConfig& config, Artifacts* artifacts = nullptr);
CheckResult check_infrastructure(const ScenarioConfig& config);
/// Kernel equation and the constraints on Psi^V under refinement.
CheckResult check_constraints(const ScenarioConfig& config);

/// Criteria 1 through 9 in order.
std::vector<CheckResult> run_acceptance(const ScenarioConfig& config, Artifacts* artifacts = nullptr);

/// `[PASS] 3 generalized_transform (12.3 s / 120 s) key=value ...`
std::string format_check_line(const CheckResult& result);

}  // namespace sburgers
