#include "sburgers/apps/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace sburgers {

namespace fs = std::filesystem;

ScenarioReport evaluate_scenario(const ScenarioConfig& config, Artifacts* artifacts) {
  validate_config(config);
  const std::string& app = config.application;
  ScenarioReport report;
  auto& checks = report.checks;
  if (app == "simulate-forward") {
    checks.push_back(check_forward_cross_validation(config, artifacts));
  } else if (app == "verify-colehopf") {
    checks.push_back(check_point_transform(config));
    checks.push_back(check_generalized_transform(config, artifacts));
    checks.push_back(check_terminal_compatibility(config));
  } else if (app == "verify-constraints") {
    checks.push_back(check_constraints(config));
  } else if (app == "feynman-kac") {
    checks.push_back(check_fk_forward(config));
    checks.push_back(check_fk_backward(config));
  } else if (app == "fbsde-check") {
    checks.push_back(check_fbsde(config));
  } else if (app == "controllability") {
    checks.push_back(check_controllability(config, artifacts));
  } else if (app == "price-claim") {
    checks.push_back(check_pricing(config, artifacts));
  } else if (app == "suite") {
    checks = run_acceptance(config, artifacts);
    checks.push_back(check_constraints(config));
  } else {
    throw ConfigurationError("application: unknown value '" + app + "'");
  }

  report.summary.application = app;
  for (const CheckResult& c : checks) {
    report.summary.checks.emplace_back(c.name, c.passed);
    for (const auto& [key, value] : c.metrics) report.summary.scalars.emplace_back(c.name + "." + key, value);
  }
  return report;
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
  Artifacts artifacts;
  ScenarioReport report = evaluate_scenario(config, &artifacts);

  const fs::path root(config.output_dir);
  std::vector<std::string> field_files, series_files;
  if (!artifacts.fields.empty()) fs::create_directories(root / "fields");
  if (!artifacts.series.empty()) fs::create_directories(root / "series");
  fs::create_directories(root);
  for (const auto& [name, field] : artifacts.fields) {
    const std::string rel = "fields/" + name + ".csv";
    export_field_csv(field, (root / rel).string());
    field_files.push_back(rel);
  }
  for (const auto& [name, table] : artifacts.series) {
    const std::string rel = "series/" + name + ".csv";
    export_series_csv(table, (root / rel).string());
    series_files.push_back(rel);
  }
  export_summary_json(report.summary, (root / "summary.json").string());
  {
    std::ofstream out(root / "plot.gp", std::ios::binary);
    out << gnuplot_script(field_files, series_files);
    if (!out) throw Error("cannot write " + (root / "plot.gp").string());
  }
  report.files = field_files;
  report.files.insert(report.files.end(), series_files.begin(), series_files.end());
  report.files.push_back("summary.json");
  report.files.push_back("plot.gp");
  return report;
}

std::string plot_script_for(const std::string& output_dir) {
  const fs::path root(output_dir);
  if (!fs::is_directory(root)) throw ConfigurationError("--out: no directory " + output_dir);
  auto list = [&](const char* sub) {
    std::vector<std::string> out;
    if (fs::is_directory(root / sub))
      for (const auto& e : fs::directory_iterator(root / sub))
        if (e.path().extension() == ".csv") out.push_back(std::string(sub) + "/" + e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
  };
  return gnuplot_script(list("fields"), list("series"));
}

}  // namespace sburgers
