#include "sburgers/colehopf/constraints.hpp"

#include "sburgers/core/stencil.hpp"

namespace sburgers {

namespace {

struct SigmaParts {
  Eigen::ArrayXXd s, a, ps, aps, pps;
};

SigmaParts sigma_parts(const Process& sigma, Index nx) {
  return {broadcast(sigma.values(), nx), broadcast(sigma.drift_or_zero(), nx), broadcast(sigma.psi_or_zero(), nx),
          broadcast(sigma.drift_psi_or_zero(), nx), broadcast(sigma.psi_psi_or_zero(), nx)};
}

Eigen::ArrayXXd arr(const Field& f) { return f.values().array(); }
Eigen::ArrayXXd dx(const Field& f) { return central_derivative(f, 1).values().array(); }
Eigen::ArrayXXd dxx(const Field& f) { return central_derivative(f, 2).values().array(); }

}  // namespace

Matrix<double> r_bspde_drift(const TransformKernel& kernel, const CoefficientSet& coeffs, const BrownianPath& path) {
  const Grid& g = kernel.r.grid();
  require_same_grid(g, coeffs.grid, "r equation");
  require_same_grid(g, path.grid, "r equation");
  require_same_grid(g, kernel.sigma.grid(), "r equation");
  const SigmaParts sp = sigma_parts(kernel.sigma, g.nx());
  const Eigen::ArrayXXd m = along_path(coeffs.m, path).array();
  const Eigen::ArrayXXd c = along_path(coeffs.c, path).array();
  const Eigen::ArrayXXd r = arr(kernel.r.value);
  const Eigen::ArrayXXd pr = arr(kernel.r.psi);
  const Eigen::ArrayXXd& s = sp.s;
  Eigen::ArrayXXd drift = -0.5 * s.square() * dxx(kernel.r.value) + (sp.ps + s * m) * dx(kernel.r.value) +
                          (s * c - sp.ps * m - sp.ps.square() / s + sp.a) * r / s - s * dx(kernel.r.psi) +
                          (sp.ps / s + m) * pr;
  return drift.matrix();
}

ResidualReport residual_r_bspde(const TransformKernel& kernel, const CoefficientSet& coeffs,
                                const BrownianPath& path, const ResidualOptions& options) {
  const Matrix<double> drift = r_bspde_drift(kernel, coeffs, path);
  const auto& r = kernel.r;
  return increment_residual(r.value.values(), drift, r.psi.values(), r.psi_psi ? &r.psi_psi->values() : nullptr,
                            path, reporting_window(r.grid(), options.buffer_fraction));
}

Matrix<double> mid_constraint_drift(const Semimartingale& V, const CoefficientSet& coeffs,
                                    const BrownianPath& path) {
  if (!V.psi_psi) throw MissingParts("constraint on Psi^V: V must carry Psi^{Psi^V}");
  const Grid& g = V.grid();
  require_same_grid(g, coeffs.grid, "constraint on Psi^V");
  require_same_grid(g, path.grid, "constraint on Psi^V");
  const SigmaParts sp = sigma_parts(coeffs.sigma, g.nx());
  const Eigen::ArrayXXd m = along_path(coeffs.m, path).array();
  const Eigen::ArrayXXd c = along_path(coeffs.c, path).array();
  const Eigen::ArrayXXd& s = sp.s;
  Eigen::ArrayXXd drift = -0.5 * s.square() * dxx(V.psi) + (s * m + sp.ps) * dx(V.psi) +
                          (sp.a / s - sp.ps * m / s + c - sp.ps.square() / s.square()) * arr(V.psi) -
                          s * dx(*V.psi_psi) + (sp.ps / s + m) * arr(*V.psi_psi);
  return drift.matrix();
}

ResidualReport residual_mid_constraint(const Semimartingale& V, const CoefficientSet& coeffs,
                                       const BrownianPath& path, const ResidualOptions& options) {
  const Matrix<double> drift = mid_constraint_drift(V, coeffs, path);
  return increment_residual(V.psi.values(), drift, V.psi_psi->values(),
                            V.psi_psi_psi ? &V.psi_psi_psi->values() : nullptr, path,
                            reporting_window(V.grid(), options.buffer_fraction));
}

double residual_big_constraint(const TransformKernel& kernel, const Semimartingale& V,
                               const CoefficientSet& coeffs, const BrownianPath& path,
                               const ResidualOptions& options) {
  const auto& rk = kernel.r;
  if (!rk.drift_psi || !rk.psi_psi) throw MissingParts("algebraic constraint: r must carry A^{Psi^r} and Psi^{Psi^r}");
  if (!V.drift_psi || !V.psi_psi) throw MissingParts("algebraic constraint: V must carry A^{Psi^V} and Psi^{Psi^V}");
  const Grid& g = V.grid();
  require_same_grid(g, rk.grid(), "algebraic constraint");
  require_same_grid(g, coeffs.grid, "algebraic constraint");
  require_same_grid(g, path.grid, "algebraic constraint");
  require_same_grid(g, kernel.sigma.grid(), "algebraic constraint");
  const SigmaParts sp = sigma_parts(kernel.sigma, g.nx());
  const Eigen::ArrayXXd m = along_path(coeffs.m, path).array();
  const Eigen::ArrayXXd c = along_path(coeffs.c, path).array();
  const Eigen::ArrayXXd& s = sp.s;
  const Eigen::ArrayXXd& ps = sp.ps;
  const Eigen::ArrayXXd& pps = sp.pps;
  const Eigen::ArrayXXd& as = sp.a;

  const Eigen::ArrayXXd r = arr(rk.value);
  const Eigen::ArrayXXd pr = arr(rk.psi);
  const Eigen::ArrayXXd ppr = arr(*rk.psi_psi);
  const Eigen::ArrayXXd pv = arr(V.psi);
  const Eigen::ArrayXXd ppv = arr(*V.psi_psi);

  Eigen::ArrayXXd lhs = (-2.0 * ps.square() / s + pps) * dx(rk.value);
  lhs += (5.0 * ps.cube() / s.square() - 3.0 * pps * ps / s - pps * m + 2.0 * ps.square() * m / s -
          2.0 * as * ps / s + sp.aps) *
         r / s;
  lhs += -0.5 * s.square() * dxx(rk.psi) + (2.0 * ps + s * m) * dx(rk.psi);
  lhs += (2.0 * as / s - 5.0 * ps.square() / s.square() + pps / s + c - 2.0 * ps * m / s) * pr;
  lhs += -s * dx(*rk.psi_psi) + (2.0 * ps / s + m) * ppr;
  lhs += 0.5 * s.cube() * dxx(V.psi) - s * (s * m + ps) * dx(V.psi);
  lhs -= (as - ps * m + s * c - ps.square() / s) * pv;
  lhs += s * arr(*V.drift_psi) + s.square() * dx(*V.psi_psi) - (s * m + ps) * ppv - arr(*rk.drift_psi);

  const Window w = reporting_window(g, options.buffer_fraction);
  // The constraint holds on [0, T): the terminal level is excluded.
  return lhs.block(0, w.begin, g.nt(), w.size()).abs().maxCoeff();
}

}  // namespace sburgers
