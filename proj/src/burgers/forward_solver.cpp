#include "sburgers/burgers/forward_solver.hpp"

#include <cmath>
#include <sstream>

#include "sburgers/core/stencil.hpp"

namespace sburgers {

ForwardSolution solve_forward_burgers(const Eigen::VectorXd& p0, const CoefficientSet& coeffs,
                                      const BrownianPath& path, const ForwardOptions& options) {
  const Grid& g = coeffs.grid;
  require_same_grid(path.grid, g, "forward Burgers path");
  const Index nx = g.nx();
  const Index nt = g.nt();
  if (p0.size() != nx) throw GridMismatch("forward Burgers: initial slice length differs from nx");
  const Index stride = options.output_stride;
  if (stride < 1 || nt % stride != 0) throw ConfigurationError("forward Burgers: output stride must divide nt");

  const double dx = g.dx();
  const double dt = g.dt();
  const double smax = coeffs.sigma.values().cwiseAbs().maxCoeff();
  const double limit = options.stability_factor * dx * dx / (2.5 * smax * smax);
  if (dt > limit) {
    std::ostringstream msg;
    msg << "forward Burgers: dt=" << dt << " exceeds the stability limit " << limit;
    throw ConfigurationError(msg.str());
  }

  const bool milstein = options.scheme == TimeScheme::Milstein;
  const Grid out_grid = g.with_time_steps(nt / stride);
  Matrix<double> out(out_grid.nt() + 1, nx);
  Eigen::VectorXd U = p0;
  Eigen::VectorXd next(nx), ux(nx), uxx(nx), uxx_wide(nx);
  out.row(0) = U.transpose();

  for (Index n = 0; n < nt; ++n) {
    const double w = path.w[n];
    const double dW = path.dw[n];
    const double sig2 = coeffs.sigma[n] * coeffs.sigma[n];
    const double ell = coeffs.ell[n];

    // Neumann ends: U_{-1} = U_1, so U_x vanishes there and U_x is odd across the end.
    ux[0] = 0.0;
    ux[nx - 1] = 0.0;
    for (Index i = 1; i + 1 < nx; ++i) ux[i] = (U[i + 1] - U[i - 1]) / (2.0 * dx);
    uxx[0] = 2.0 * (U[1] - U[0]) / (dx * dx);
    uxx[nx - 1] = 2.0 * (U[nx - 2] - U[nx - 1]) / (dx * dx);
    for (Index i = 1; i + 1 < nx; ++i) uxx[i] = (U[i + 1] - 2.0 * U[i] + U[i - 1]) / (dx * dx);

    next = U + dt * (2.5 * sig2 * uxx - sig2 * U.cwiseProduct(ux)) + (ell * dW) * ux;
    if (!coeffs.k.is_zero()) next += dt * coeffs.k.slice(n, w).cwiseProduct(ux);
    if (!coeffs.e.is_zero()) next += dt * coeffs.e.slice(n, w).cwiseProduct(U);
    if (!coeffs.f.is_zero()) next += dt * coeffs.f.slice(n, w);
    if (milstein) {
      uxx_wide[0] = ux[1] / dx;
      uxx_wide[nx - 1] = -ux[nx - 2] / dx;
      for (Index i = 1; i + 1 < nx; ++i) uxx_wide[i] = (ux[i + 1] - ux[i - 1]) / (2.0 * dx);
      next += (0.5 * ell * ell * (dW * dW - dt)) * uxx_wide;
    }
    if (!next.allFinite()) {
      std::ostringstream msg;
      msg << "forward Burgers: solution blew up at t=" << g.t(n + 1);
      throw NumericalFailure(msg.str());
    }
    U.swap(next);
    if ((n + 1) % stride == 0) out.row((n + 1) / stride) = U.transpose();
  }

  Field u_field(out_grid, std::move(out));
  const Process ell_out = subsample(coeffs.ell, stride);
  Matrix<double> psi = central_derivative(u_field, 1).values();
  for (Index n = 0; n < psi.rows(); ++n) psi.row(n) *= ell_out[n];
  return ForwardSolution{std::move(u_field), Field(out_grid, std::move(psi))};
}

}  // namespace sburgers
