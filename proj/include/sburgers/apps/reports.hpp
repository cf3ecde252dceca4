#pragma once

#include "sburgers/apps/config.hpp"
#include "sburgers/fbsde/triplet.hpp"

namespace sburgers {

/// U from the explicit forward solver and from the pathwise heat solve followed by
/// the Cole-Hopf transform, on the output levels of one path.
struct ForwardComparison {
  Field U_direct;
  Field U_heat;
  /// Relative L2 difference over all output levels and the reporting window.
  double l2_gap = 0.0;
};

/// exp(-int p0), normalised to 1 at the node nearest x = 0.
Eigen::VectorXd initial_heat_data(const ProfileSpec& p0, const Grid& grid);

ForwardComparison compare_forward_routes(const ForwardConfig& config, const BrownianPath& path);

/// U(T, x) of a closed-form family from its profile.
Eigen::VectorXd family_terminal_state(int family, const Profile& profile, double sigma_T, double w_T);

struct ControllabilityReport {
  /// Initial state U(0, .) that reaches the target.
  Eigen::VectorXd p0;
  /// U_1 = Psi^U and U_2 = Psi^U_x.
  Field control_u1;
  Field control_u2;
  /// max |U(T, .) - p| over the reporting window.
  double terminal_gap = 0.0;
};

/// Throws ConfigurationError for a family without a closed form.
ControllabilityReport controllability_report(const FamilySpec& family, const SigmaModel& sigma,
                                             const BrownianPath& path, const FamilyOptions& options = {});

struct MarketModel {
  double rate = 0.0;
  double mu = 0.0;
  double sigma = -1.0;
  double s0 = 1.0;
  /// Consumption rate on the lattice; empty means none.
  Eigen::VectorXd consumption;
  /// sigma(t) = sigma exp(vol_of_vol W(t)); when nonzero, mu(t) = rate + sigma(t) m(t) is derived from the family.
  double vol_of_vol = 0.0;

  double relative_risk() const { return (mu - rate) / sigma; }
};

struct PricingReport {
  double price_y0 = 0.0;
  Eigen::VectorXd hedge_pi;
  Eigen::VectorXd wealth;
  Eigen::VectorXd state_x;
  Eigen::VectorXd stock;
  double payoff = 0.0;
  /// |wealth(T) - payoff|.
  double replication_gap = 0.0;
};

/// Prices the claim p(X(T)) of the constant family (alpha for family 1, beta for family 2)
/// and replicates it by integrating the wealth equation with the hedge pi = Z / (sigma Y).
PricingReport pricing_report(const MarketModel& market, int family, double parameter, double x0,
                             const BrownianPath& path);

}  // namespace sburgers
