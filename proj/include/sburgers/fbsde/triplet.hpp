#pragma once

#include <functional>
#include <optional>

#include "sburgers/core/coefficient_field.hpp"
#include "sburgers/paths/increment_residual.hpp"

namespace sburgers {

/// Forward state x, backward pair (y, z) and the martingale part h of z along one path.
struct FbsdeTriplet {
  BrownianPath path;
  double x0 = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd z;
  std::optional<Eigen::VectorXd> h;
  /// Set when x left the reporting window; values there come from constant extrapolation.
  bool exited_window = false;
};

/// Euler scheme X_{n+1} = X_n + k(t_n, X_n) dt + sigma_n dW_n. A null k means no drift.
Eigen::VectorXd simulate_forward_state(double x0, const Process& sigma, const CoefficientField* k,
                                       const BrownianPath& path);

/// y = F(t, X), z = sigma F_x(t, X) + Psi^F(t, X) and, when F carries Psi^{Psi^F},
/// h = Psi^{Psi^F} + sigma^2 F_xx + Psi^sigma F_x + 2 sigma Psi^F_x, all at X(t).
FbsdeTriplet markovian_triplet(const Semimartingale& F, const Process& sigma, const Eigen::VectorXd& x_path,
                               const BrownianPath& path, double buffer_fraction = 0.2);

/// Driver g(n, t, x, y, z) of dy = g dt + z dW.
using Driver = std::function<double(Index n, double t, double x, double y, double z)>;

/// Increment residual of y against the driver; h (if present) supplies the Milstein term.
ResidualReport bsde_residual(const FbsdeTriplet& triplet, const Driver& driver);

/// max_n |Y_n + z_n / (sigma_n y_n)| between a Burgers-side and a heat-side triplet.
double point_transform_identity_gap(const FbsdeTriplet& burgers, const FbsdeTriplet& heat, const Process& sigma);

}  // namespace sburgers
