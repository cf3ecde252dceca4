#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sburgers/apps/checks.hpp"
#include "sburgers/apps/io.hpp"
#include "sburgers/apps/reports.hpp"
#include "sburgers/apps/scenario.hpp"
#include "sburgers/closedform/families.hpp"

using namespace sburgers;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("sburgers_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void expect_config_error(const std::string& json, const std::string& fragment) {
  try {
    parse_config(json);
    FAIL() << "accepted " << json;
  } catch (const ConfigurationError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(Config, EmptyDocumentGivesDefaults) {
  const ScenarioConfig c = parse_config("{}");
  EXPECT_EQ(c.application, "suite");
  EXPECT_EQ(c.backward.grid.nx, 21);
  EXPECT_EQ(c.backward.families.size(), 2u);
  EXPECT_EQ(config_to_json(c), config_to_json(ScenarioConfig{}));
}

TEST(Config, ShippedDefaultFileMatchesDefaults) {
  const ScenarioConfig c = load_config(SBURGERS_SOURCE_DIR "/config/default.json");
  EXPECT_EQ(config_to_json(c), config_to_json(ScenarioConfig{}));
  EXPECT_THROW(load_config(SBURGERS_SOURCE_DIR "/config/missing.json"), ConfigurationError);
}

TEST(Config, RoundTripsThroughJson) {
  ScenarioConfig c;
  c.seed = 99;
  c.application = "price-claim";
  c.forward.p0 = {"tabulated", 0.0, 1.0, 1.0, std::vector<double>(401, 0.5)};
  c.infrastructure.se_seeds = {4, 5};
  const ScenarioConfig back = parse_config(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.forward.p0.values.size(), 401u);
}

TEST(Config, RejectsMalformedInput) {
  expect_config_error("{\"seed\": 1", "");
  expect_config_error("[1, 2]", "");
  expect_config_error("{\"forward\": {\"sigmaa\": 1}}", "forward.sigmaa");
  expect_config_error("{\"forward\": {\"paths\": 1.5}}", "forward.paths");
  expect_config_error("{\"application\": \"dance\"}", "application");
  expect_config_error("{\"backward\": {\"families\": [{\"family\": 3}]}}", "family");
  expect_config_error("{\"fbsde\": {\"grid\": {\"nt\": 801}}}", "fbsde");
  expect_config_error("{\"refine_levels\": -1}", "refine_levels");
}

TEST(Config, TabulatedProfileMustMatchGrid) {
  const Grid g(-1.0, 1.0, 5, 0.1, 4);
  ProfileSpec spec{"tabulated", 0.0, 1.0, 1.0, {1.0, 2.0, 3.0}};
  EXPECT_THROW(make_profile(spec, g), SizingError);
  spec.values = {1.0, 2.0, 3.0, 4.0, 5.0};
  const Profile p = make_profile(spec, g);
  EXPECT_NEAR(p.f[2], 3.0, 1e-15);
  EXPECT_NEAR(p.d1[2], 2.0, 1e-12);
}

TEST(Io, FieldCsvHasHeaderAndOneRowPerNode) {
  const Grid g(0.0, 1.0, 3, 1.0, 1);
  const Field f = Field::tabulate(g, [](double t, double x) { return t + 10.0 * x; });
  const auto dir = scratch_dir("csv");
  export_field_csv(f, (dir / "f.csv").string());
  std::istringstream in(read_file(dir / "f.csv"));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0], "t,x,value");
  EXPECT_EQ(lines[1], "0,0,0");
  EXPECT_EQ(lines[3], "0,1,10");
  EXPECT_EQ(lines[6], "1,1,11");
}

TEST(Io, ReExportIsByteIdentical) {
  const Grid g(-1.0, 1.0, 7, 0.3, 3);
  const Field f = Field::tabulate(g, [](double t, double x) { return std::sin(x + 0.1) * std::exp(t / 3.0); });
  const auto dir = scratch_dir("bytes");
  export_field_csv(f, (dir / "a.csv").string());
  export_field_csv(f, (dir / "b.csv").string());
  EXPECT_EQ(read_file(dir / "a.csv"), read_file(dir / "b.csv"));
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
}

TEST(Io, SummaryReportsAllPassed) {
  Summary s{"suite", {{"x.value", 1.5}}, {{"a", true}, {"b", true}}};
  const auto dir = scratch_dir("summary");
  export_summary_json(s, (dir / "s.json").string());
  const std::string text = read_file(dir / "s.json");
  EXPECT_NE(text.find("\"all_passed\": true"), std::string::npos) << text;
  s.checks.emplace_back("c", false);
  EXPECT_FALSE(s.all_passed());
  s.scalars.emplace_back("a.passed", 0.0);
  EXPECT_THROW(export_summary_json(s, (dir / "t.json").string()), ConfigurationError);
}

TEST(Io, WriteFailureNamesPath) {
  const Grid g(0.0, 1.0, 3, 1.0, 1);
  try {
    export_field_csv(Field::constant(g, 1.0), "/nonexistent_dir/x.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent_dir/x.csv"), std::string::npos);
  }
}

namespace {

ControllabilityReport constant_control(int family, double param, double sigma) {
  const Grid g(-1.0, 1.0, 21, 0.5, 100);
  const BrownianPath path = make_brownian_path(11, 0, g);
  FamilyOptions opts;
  if (param != 0.0) opts.pinned_m = finance_parameters(family, param, sigma).m;
  const FamilySpec spec{family, ProfileSpec{"sin", param, 0.0, 1.0, {}}};
  return controllability_report(spec, SigmaModel{sigma, 0.0}, path, opts);
}

}  // namespace

TEST(Controllability, SecondFamilyConstant) {
  const ControllabilityReport r = constant_control(2, 1.0, -1.0);
  EXPECT_LE((r.p0.array() - 1.0).abs().maxCoeff(), 1e-12);
  EXPECT_LE(r.control_u1.values().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(r.control_u2.values().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(r.terminal_gap, 1e-10);
}

TEST(Controllability, FirstFamilyConstant) {
  const ControllabilityReport r = constant_control(1, 2.0, -1.0);
  EXPECT_LE((r.p0.array() - 2.0).abs().maxCoeff(), 1e-12);
  EXPECT_LE(r.control_u1.values().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(r.terminal_gap, 1e-10);
}

TEST(Controllability, ZeroProfile) {
  const ControllabilityReport r = constant_control(1, 0.0, -1.0);
  EXPECT_LE(r.p0.cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(r.control_u1.values().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(r.control_u2.values().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Controllability, TerminalGapDecaysForSinProfile) {
  const Grid fine(-1.0, 1.0, 81, 0.5, 1600);
  const BrownianPath top = make_brownian_path(3, 0, fine);
  const FamilySpec spec{1, ProfileSpec{"sin", 0.0, 1.0, 1.0, {}}};
  const SigmaModel sigma{1.0, 0.2};
  std::vector<double> gaps;
  for (Index level = 0; level < 3; ++level) {
    const Index factor = Index(1) << (2 * (2 - level));
    BrownianPath p = factor == 1 ? top : coarsen_path(top, factor);
    p.grid = p.grid.with_space_nodes(20 * (Index(1) << level) + 1);
    gaps.push_back(controllability_report(spec, sigma, p).terminal_gap);
  }
  EXPECT_GT(gaps[0], 0.0);
  EXPECT_GT(gaps[0] / gaps[1], 2.83) << gaps[0] << " " << gaps[1];
  EXPECT_GT(gaps[1] / gaps[2], 2.83) << gaps[1] << " " << gaps[2];
}

TEST(Controllability, RejectsFamilyWithoutClosedForm) {
  const Grid g(-1.0, 1.0, 11, 0.5, 10);
  const BrownianPath path = make_brownian_path(1, 0, g);
  EXPECT_THROW(controllability_report(FamilySpec{3, {}}, SigmaModel{}, path), ConfigurationError);
}

namespace {

MarketModel constant_market(int family, double param, double sigma) {
  MarketModel m;
  m.sigma = sigma;
  m.mu = sigma * finance_parameters(family, param, sigma).m;
  return m;
}

}  // namespace

TEST(Pricing, FirstFamilyConstant) {
  const Grid g(-1.0, 1.0, 21, 0.5, 200);
  const BrownianPath path = make_brownian_path(5, 0, g);
  for (double x0 : {-0.4, 0.0, 0.7}) {
    const PricingReport r = pricing_report(constant_market(1, 2.0, -1.0), 1, 2.0, x0, path);
    EXPECT_NEAR(r.price_y0, 2.0, 1e-12);
    EXPECT_LE(r.hedge_pi.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(r.payoff, 2.0, 1e-12);
    EXPECT_LE(r.replication_gap, 1e-10);
  }
}

TEST(Pricing, SecondFamilyConstant) {
  const Grid g(-1.0, 1.0, 21, 0.5, 200);
  const BrownianPath path = make_brownian_path(6, 0, g);
  const PricingReport r = pricing_report(constant_market(2, 1.0, -0.5), 2, 1.0, 0.0, path);
  EXPECT_NEAR(r.price_y0, 2.0, 1e-12);
  EXPECT_LE(r.hedge_pi.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pricing, ZeroClaimUsesZeroWealthShortcut) {
  const Grid g(-1.0, 1.0, 21, 0.5, 50);
  const BrownianPath path = make_brownian_path(7, 0, g);
  MarketModel m;
  m.sigma = -1.0;
  const PricingReport r = pricing_report(m, 1, 0.0, 0.0, path);
  EXPECT_EQ(r.price_y0, 0.0);
  EXPECT_EQ(r.hedge_pi.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(r.wealth.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Pricing, RejectsInconsistentMarket) {
  const Grid g(-1.0, 1.0, 21, 0.5, 50);
  const BrownianPath path = make_brownian_path(7, 0, g);
  MarketModel m = constant_market(1, 2.0, -1.0);
  m.mu += 0.3;
  EXPECT_THROW(pricing_report(m, 1, 2.0, 0.0, path), ConfigurationError);
  m = constant_market(1, 2.0, -1.0);
  m.consumption = Eigen::VectorXd::Constant(51, 0.1);
  EXPECT_THROW(pricing_report(m, 1, 2.0, 0.0, path), ConfigurationError);
}

TEST(Scenario, ConstraintRunPassesAndWritesSummary) {
  ScenarioConfig c;
  c.application = "verify-constraints";
  c.output_dir = scratch_dir("scenario").string() + "/out";
  const ScenarioReport r = run_scenario(c);
  EXPECT_EQ(r.exit_code(), kExitSuccess);
  const std::string summary = read_file(std::filesystem::path(c.output_dir) / "summary.json");
  EXPECT_NE(summary.find("constraints.family2.mid_constraint_residual"), std::string::npos);
  EXPECT_NE(summary.find("\"all_passed\": true"), std::string::npos);
}

TEST(Scenario, ToleranceFailureGivesExitTwo) {
  ScenarioConfig c;
  c.application = "verify-colehopf";
  c.point_transform.tolerance = 1e-30;
  Artifacts a;
  const ScenarioReport r = evaluate_scenario(c, &a);
  EXPECT_EQ(r.exit_code(), kExitToleranceFailure);
}

TEST(Scenario, ForwardSummaryCarriesRelativeError) {
  ScenarioConfig c;
  c.application = "simulate-forward";
  c.forward.paths = 1;
  c.forward.grid = {-6.0, 6.0, 121, 0.25, 1600};
  Artifacts a;
  const ScenarioReport r = evaluate_scenario(c, &a);
  bool found = false;
  for (const auto& [key, value] : r.summary.scalars) {
    if (key == "forward_cross_validation.l2_relative_error") {
      found = true;
      EXPECT_LE(value, c.forward.max_gap);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(r.exit_code(), kExitSuccess);
}
