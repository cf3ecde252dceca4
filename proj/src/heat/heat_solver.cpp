#include "sburgers/heat/heat_solver.hpp"

#include <cmath>
#include <sstream>

#include "sburgers/core/stencil.hpp"

namespace sburgers {

namespace {

// Solves a tridiagonal system in place (Thomas algorithm); lower[0] and upper[n-1] are unused.
void solve_tridiagonal(const Eigen::VectorXd& lower, Eigen::VectorXd diag, const Eigen::VectorXd& upper,
                       Eigen::VectorXd& rhs) {
  const Index n = diag.size();
  for (Index i = 1; i < n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (Index i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

}  // namespace

Field solve_pathwise_heat(const HeatProblem& problem, const HeatOptions& options) {
  const Grid& g = problem.grid;
  const Index nx = g.nx();
  const Index nt = g.nt();
  if (problem.initial_q.size() != nx) throw GridMismatch("heat solver: initial slice length differs from nx");
  require_same_grid(problem.sigma.grid(), g, "heat solver sigma");
  require_same_grid(problem.h_path.grid(), g, "heat solver H");
  require_same_grid(problem.k_field.grid(), g, "heat solver k");
  require_same_grid(problem.c_field.grid(), g, "heat solver c");
  if (problem.brownian.size() != 0 && problem.brownian.size() != nt + 1) {
    throw GridMismatch("heat solver: Brownian values must have length nt+1");
  }
  const Index stride = options.output_stride;
  if (stride < 1 || nt % stride != 0) throw ConfigurationError("heat solver: output stride must divide nt");
  for (Index i = 0; i < nx; ++i) {
    if (!(problem.initial_q[i] > 0.0) || !std::isfinite(problem.initial_q[i])) {
      std::ostringstream msg;
      msg << "heat solver: initial value must be positive and finite, fails at x=" << g.x(i);
      throw DomainError(msg.str());
    }
  }

  const double dx = g.dx();
  const double dt = g.dt();
  const bool log_neumann = options.boundary == HeatBoundary::LogNeumann;
  const Grid out_grid = g.with_time_steps(nt / stride);
  Matrix<double> out(out_grid.nt() + 1, nx);

  Eigen::VectorXd G = problem.initial_q;
  Eigen::VectorXd rhs(nx), lower(nx), diag(nx), upper(nx), advect(nx);
  out.row(0) = G.transpose();

  for (Index n = 0; n < nt; ++n) {
    const double w = problem.brownian.size() ? problem.brownian[n] : 0.0;
    const double h = problem.h_path[n];
    const double sig = problem.sigma[n];
    const double r = 0.25 * dt * sig * sig / (dx * dx);

    Eigen::VectorXd k;
    if (!problem.k_field.is_zero()) {
      k = interpolate_shifted<double>(problem.k_field.slice(n, w), g, -h);
      const double kmax = k.cwiseAbs().maxCoeff();
      if (kmax * dt > dx) {
        std::ostringstream msg;
        msg << "heat solver: dt=" << dt << " exceeds dx/max|k|=" << dx / kmax << " at t=" << g.t(n);
        throw ConfigurationError(msg.str());
      }
    }
    Eigen::VectorXd c;
    if (!problem.c_field.is_zero()) c = interpolate_shifted<double>(problem.c_field.slice(n, w), g, -h);

    // Ghost values beyond each end; log-Neumann uses G_{-1} = G_0^2 / G_1.
    const double ghost_l = log_neumann ? G[0] * G[0] / G[1] : G[1];
    const double ghost_r = log_neumann ? G[nx - 1] * G[nx - 1] / G[nx - 2] : G[nx - 2];
    const double rho_l = log_neumann ? (G[0] / G[1]) * (G[0] / G[1]) : 1.0;
    const double rho_r = log_neumann ? (G[nx - 1] / G[nx - 2]) * (G[nx - 1] / G[nx - 2]) : 1.0;

    for (Index i = 0; i < nx; ++i) {
      const double left = i == 0 ? ghost_l : G[i - 1];
      const double right = i == nx - 1 ? ghost_r : G[i + 1];
      rhs[i] = G[i] + r * (left - 2.0 * G[i] + right);
      advect[i] = (right - left) / (2.0 * dx);
    }
    if (k.size()) rhs.array() += dt * k.array() * advect.array();
    if (c.size()) rhs.array() -= dt * c.array() * G.array();

    diag.setConstant(1.0 + 2.0 * r);
    lower.setConstant(-r);
    upper.setConstant(-r);
    upper[0] = -r * (1.0 + rho_l);
    lower[nx - 1] = -r * (1.0 + rho_r);
    solve_tridiagonal(lower, diag, upper, rhs);
    G.swap(rhs);

    for (Index i = 0; i < nx; ++i) {
      if (!(G[i] > 0.0) || !std::isfinite(G[i])) {
        std::ostringstream msg;
        msg << "heat solver: positivity lost at t=" << g.t(n + 1) << ", x=" << g.x(i);
        throw NumericalFailure(msg.str());
      }
    }
    if ((n + 1) % stride == 0) out.row((n + 1) / stride) = G.transpose();
  }
  return Field(out_grid, std::move(out));
}

Field assemble_V(const Field& G, const Process& h_path) {
  require_same_grid(G.grid(), h_path.grid(), "assemble_V");
  const Grid& g = G.grid();
  Matrix<double> out(g.nt() + 1, g.nx());
  for (Index n = 0; n <= g.nt(); ++n) {
    out.row(n) = interpolate_shifted<double>(G.slice(n), g, h_path[n]).transpose();
  }
  return Field(g, std::move(out));
}

Field psiV_forward(const Field& V, const Process& ell) {
  require_same_grid(V.grid(), ell.grid(), "psiV_forward");
  const Field vx = central_derivative(V, 1);
  Matrix<double> out = vx.values();
  for (Index n = 0; n < out.rows(); ++n) out.row(n) *= ell[n];
  return Field(V.grid(), std::move(out));
}

}  // namespace sburgers
