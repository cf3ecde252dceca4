#pragma once

#include "sburgers/core/coefficient_field.hpp"
#include "sburgers/core/field.hpp"

namespace sburgers {

/// Boundary closure for the pathwise heat solver.
enum class HeatBoundary {
  Neumann,     // G_x = 0
  LogNeumann,  // (log G)_x = 0, i.e. the transformed velocity vanishes at the ends
};

/// dG = {1/2 sigma^2 G_xx + k(t, x-H) G_x - c(t, x-H) G} dt with G(0) = q.
/// k and c are given in the lab frame and shifted by H(t) on every step.
struct HeatProblem {
  Grid grid;
  Eigen::VectorXd initial_q;
  Process sigma;
  CoefficientField k_field;
  CoefficientField c_field;
  Process h_path;
  /// W(t_n) used to evaluate path-dependent coefficient slices; empty means zero.
  Eigen::VectorXd brownian;
};

struct HeatOptions {
  HeatBoundary boundary = HeatBoundary::Neumann;
  /// Record every stride-th time level; the result lives on grid.with_time_steps(nt/stride).
  Index output_stride = 1;
};

/// IMEX Crank-Nicolson: implicit trapezoid on diffusion, explicit advection and
/// reaction frozen at the left endpoint. Requires dt <= dx / max|k|.
/// Throws ConfigurationError if that contract fails and NumericalFailure naming
/// the first (t, x) at which positivity is lost.
Field solve_pathwise_heat(const HeatProblem& problem, const HeatOptions& options = {});

/// V(t, x) = G(t, x + H(t)); H must live on the grid of G.
Field assemble_V(const Field& G, const Process& h_path);

/// Martingale part of the forward heat field, Psi^V = ell(t) V_x.
Field psiV_forward(const Field& V, const Process& ell);

}  // namespace sburgers
