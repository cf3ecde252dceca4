// Command-line front end: one subcommand per application plus `plot-script`.
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sburgers/apps/scenario.hpp"

int main(int argc, char** argv) {
  using namespace sburgers;
  CLI::App app{"Stochastic Burgers and Cole-Hopf verification tool"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<Index> refine;
  app.add_option("--config", config_path, "JSON scenario file; defaults apply to absent keys");
  app.add_option("--seed", seed, "Root seed of every random stream");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--refine", refine, "Number of refinement levels");

  for (const std::string& name : known_applications()) app.add_subcommand(name, "Run the " + name + " checks");
  CLI::App* plot = app.add_subcommand("plot-script", "Print a gnuplot script for the CSV files in the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigurationError;
  }

  try {
    ScenarioConfig config = config_path.empty() ? ScenarioConfig{} : load_config(config_path);
    if (seed) config.seed = *seed;
    if (out_dir) config.output_dir = *out_dir;
    if (refine) config.refine_levels = *refine;

    if (plot->parsed()) {
      std::fputs(plot_script_for(config.output_dir).c_str(), stdout);
      return kExitSuccess;
    }
    config.application = app.get_subcommands().front()->get_name();
    validate_config(config);

    const ScenarioReport report = run_scenario(config);
    for (const CheckResult& c : report.checks) std::printf("%s\n", format_check_line(c).c_str());
    std::printf("%s: %s, outputs in %s\n", config.application.c_str(),
                report.summary.all_passed() ? "all checks passed" : "tolerance failure", config.output_dir.c_str());
    return report.exit_code();
  } catch (const ConfigurationError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfigurationError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitToleranceFailure;
  }
}
