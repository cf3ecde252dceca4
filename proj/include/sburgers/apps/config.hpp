#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sburgers/closedform/scenario.hpp"

namespace sburgers {

struct GridSpec {
  double x_min = -1.0;
  double x_max = 1.0;
  Index nx = 21;
  double horizon = 0.5;
  Index nt = 100;

  Grid make() const { return Grid(x_min, x_max, nx, horizon, nt); }
};

/// sin: shift + amplitude sin(frequency x); tanh: shift + amplitude tanh(frequency x);
/// tabulated: `values` on the grid nodes (derivatives by finite differences).
struct ProfileSpec {
  std::string kind = "sin";
  double shift = 0.0;
  double amplitude = 1.0;
  double frequency = 1.0;
  std::vector<double> values;
};

Profile make_profile(const ProfileSpec& spec, const Grid& grid);

struct FamilySpec {
  int family = 1;
  ProfileSpec profile;
};

/// Forward cross-validation with constant linearizable coefficients.
struct ForwardConfig {
  GridSpec grid{-8.0, 8.0, 401, 0.25, 16000};
  double sigma = 1.0;
  double b = 0.0;
  double m = 0.0;
  double f = 0.0;
  double c_bar = 0.0;
  ProfileSpec p0{"tanh", 0.0, 1.0, 1.0, {}};
  Index paths = 8;
  Index output_stride = 16;
  double max_gap = 2e-2;
  double min_shrink = 2.0;
};

struct PointTransformConfig {
  Index points = 1000;
  double min_abs = 0.1;
  double max_abs = 2.0;
  double tolerance = 1e-10;
};

/// Residual sweeps on the closed-form backward families.
struct BackwardConfig {
  GridSpec grid{-1.0, 1.0, 21, 0.5, 1600};
  SigmaModel sigma{1.0, 0.2};
  std::vector<FamilySpec> families{{1, {"sin", 0.0, 1.0, 1.0, {}}}, {2, {"sin", 2.0, 1.0, 2.0, {}}}};
  Index paths = 4;
  double control_m_shift = 0.5;
  double rate_low = 2.83;
  double rate_high = 5.66;
  double control_max_ratio = 1.5;
};

/// Constant scenarios: V = exp(alpha W) with sigma_1 and V = beta exp(W) with sigma_2.
struct ConstantScenarioConfig {
  double alpha = 2.0;
  double beta = 1.0;
  double sigma_1 = -1.0;
  double sigma_2 = -0.5;
  double tolerance = 1e-10;
};

struct FkForwardConfig {
  double lambda = 0.5;
  double k = 1.0;
  double sigma = 1.0;
  double c_bar = 0.2;
  double t = 0.25;
  double x = 0.0;
  Index samples = 100000;
  GridSpec pde_grid{-8.0, 8.0, 801, 0.25, 4000};
  double pde_tolerance = 1e-3;
};

struct FkBackwardConfig {
  double horizon = 0.5;
  Index nt = 50;
  double x = 0.0;
  Index samples = 100000;
  Index inner_batch = 16;
};

struct FbsdeConfig {
  GridSpec grid{-1.0, 1.0, 21, 0.5, 800};
  SigmaModel sigma{-0.9, 0.3};
  double alpha = 0.6;
  double beta = 1.5;
  Index paths = 8;
  double rate_low = 1.41;
  double rate_high = 2.83;
  double identity_tolerance = 1e-10;
};

struct ApplicationsConfig {
  GridSpec grid{-1.0, 1.0, 41, 0.5, 200};
  double x0 = 0.0;
  double rate = 0.0;
  double s0 = 1.0;
  /// Volatility of volatility for the random-sigma replication sweep.
  double vol_of_vol = 0.3;
  Index paths = 8;
  double gap_tolerance = 1e-10;
  /// Gaps below this are treated as exact when checking the halving.
  double exact_floor = 1e-12;
  double rate_low = 1.41;
  double rate_high = 2.83;
};

struct InfrastructureConfig {
  Index se_samples = 4000;
  std::vector<std::uint64_t> se_seeds{1, 2, 3};
  double se_ratio_tolerance = 0.2;
  double gauge_tolerance = 1e-12;
};

/// Complete run description. Every field has the default shown above; the JSON
/// reader rejects unknown keys and mistyped values.
struct ScenarioConfig {
  std::string application = "suite";
  std::uint64_t seed = 20240601;
  Index refine_levels = 1;
  std::string output_dir = "sburgers_out";
  ForwardConfig forward;
  PointTransformConfig point_transform;
  BackwardConfig backward;
  ConstantScenarioConfig constants;
  FkForwardConfig fk_forward;
  FkBackwardConfig fk_backward;
  FbsdeConfig fbsde;
  ApplicationsConfig applications;
  InfrastructureConfig infrastructure;
};

/// Applications accepted by `application`.
const std::vector<std::string>& known_applications();

/// Parses and validates a JSON document; throws ConfigurationError naming the offending key.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

/// Checks ranges and cross-field constraints; throws ConfigurationError.
void validate_config(const ScenarioConfig& config);

/// The configuration as JSON with every default spelled out.
std::string config_to_json(const ScenarioConfig& config);

}  // namespace sburgers
