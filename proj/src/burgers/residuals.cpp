#include "sburgers/burgers/residuals.hpp"

#include "sburgers/core/stencil.hpp"

namespace sburgers {

Matrix<double> along_path(const CoefficientField& field, const BrownianPath& path) {
  require_same_grid(field.grid(), path.grid, "coefficient along path");
  return field.materialize(path.w).values();
}

Eigen::ArrayXXd broadcast(const Eigen::VectorXd& process, Index nx) {
  return process.replicate(1, nx).array();
}

Matrix<double> backward_burgers_drift(const Field& U, const Field& psi_U, const CoefficientSet& coeffs,
                                      const BrownianPath& path) {
  const Grid& g = U.grid();
  require_same_grid(g, psi_U.grid(), "backward Burgers drift");
  require_same_grid(g, coeffs.grid, "backward Burgers drift");
  require_same_grid(g, path.grid, "backward Burgers drift");
  const Index nx = g.nx();
  const Eigen::ArrayXXd s = broadcast(coeffs.sigma.values(), nx);
  const auto u = U.values().array();
  const auto psi = psi_U.values().array();
  const Eigen::ArrayXXd ux = central_derivative(U, 1).values().array();
  const Eigen::ArrayXXd uxx = central_derivative(U, 2).values().array();
  const Eigen::ArrayXXd psix = central_derivative(psi_U, 1).values().array();
  const Eigen::ArrayXXd m = along_path(coeffs.m, path).array();
  const Eigen::ArrayXXd e = along_path(coeffs.e, path).array();
  const Eigen::ArrayXXd f = along_path(coeffs.f, path).array();
  Eigen::ArrayXXd drift = -0.5 * s.square() * uxx + s.square() * u * ux + s * u * psi + s * m * ux + e * u -
                          s * psix + m * psi + f;
  return drift.matrix();
}

Matrix<double> backward_heat_drift(const Field& V, const Field& psi_V, const CoefficientSet& coeffs,
                                   const BrownianPath& path) {
  const Grid& g = V.grid();
  require_same_grid(g, psi_V.grid(), "backward heat drift");
  require_same_grid(g, coeffs.grid, "backward heat drift");
  require_same_grid(g, path.grid, "backward heat drift");
  const Index nx = g.nx();
  const Eigen::ArrayXXd s = broadcast(coeffs.sigma.values(), nx);
  const auto v = V.values().array();
  const auto psi = psi_V.values().array();
  const Eigen::ArrayXXd vx = central_derivative(V, 1).values().array();
  const Eigen::ArrayXXd vxx = central_derivative(V, 2).values().array();
  const Eigen::ArrayXXd psix = central_derivative(psi_V, 1).values().array();
  const Eigen::ArrayXXd d = along_path(coeffs.d, path).array();
  const Eigen::ArrayXXd c = along_path(coeffs.c, path).array();
  Eigen::ArrayXXd drift = -0.5 * s.square() * vxx + s * d * vx - s * psix + d * psi + c * v;
  return drift.matrix();
}

ResidualReport residual_backward_burgers(const Field& U, const Field& psi_U, const std::optional<Field>& psi_psi_U,
                                         const CoefficientSet& coeffs, const BrownianPath& path,
                                         const ResidualOptions& options) {
  const Matrix<double> drift = backward_burgers_drift(U, psi_U, coeffs, path);
  if (psi_psi_U) require_same_grid(U.grid(), psi_psi_U->grid(), "backward Burgers residual");
  return increment_residual(U.values(), drift, psi_U.values(), psi_psi_U ? &psi_psi_U->values() : nullptr, path,
                            reporting_window(U.grid(), options.buffer_fraction));
}

ResidualReport residual_backward_heat(const Semimartingale& V, const CoefficientSet& coeffs,
                                      const BrownianPath& path, const ResidualOptions& options) {
  const Matrix<double> drift = backward_heat_drift(V.value, V.psi, coeffs, path);
  return increment_residual(V.value.values(), drift, V.psi.values(), V.psi_psi ? &V.psi_psi->values() : nullptr,
                            path, reporting_window(V.grid(), options.buffer_fraction));
}

}  // namespace sburgers
