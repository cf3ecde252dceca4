#pragma once

#include "sburgers/burgers/coefficients.hpp"
#include "sburgers/paths/brownian.hpp"

namespace sburgers {

enum class TimeScheme {
  Milstein,       // adds (1/2) ell^2 U_xx (dW^2 - dt); strong order one for this noise
  EulerMaruyama,  // strong order one half
};

struct ForwardOptions {
  TimeScheme scheme = TimeScheme::Milstein;
  Index output_stride = 1;
  /// dt must not exceed stability_factor * dx^2 / ((5/2) max sigma^2).
  double stability_factor = 0.2;
};

struct ForwardSolution {
  Field U;
  Field psi_U;  // ell(t) U_x
};

/// Explicit finite differences for
///   dU = [(5/2) s^2 U_xx - s^2 U U_x + (b - 2 s m) U_x + e U + f] dt + ell U_x dW,  s = sigma,
/// with Neumann ends. Coefficients are frozen at the left endpoint of each step.
ForwardSolution solve_forward_burgers(const Eigen::VectorXd& p0, const CoefficientSet& coeffs,
                                      const BrownianPath& path, const ForwardOptions& options = {});

}  // namespace sburgers
