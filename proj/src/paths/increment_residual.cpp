#include "sburgers/paths/increment_residual.hpp"

#include <cmath>

namespace sburgers {

ResidualReport increment_residual(const Matrix<double>& F, const Matrix<double>& A, const Matrix<double>& Psi,
                                  const Matrix<double>* psi_psi, const BrownianPath& path, Window window) {
  const Index nt = path.grid.nt();
  const Index rows = nt + 1;
  auto check = [&](const Matrix<double>& m) {
    if (m.rows() != rows || m.cols() != F.cols()) throw GridMismatch("increment residual: shape mismatch");
  };
  check(F);
  check(A);
  check(Psi);
  if (psi_psi) check(*psi_psi);
  if (window.begin < 0 || window.end >= F.cols() || window.begin > window.end) {
    throw ConfigurationError("increment residual: window outside the lattice");
  }
  const double dt = path.grid.dt();
  const Index width = window.size();
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(width);
  ResidualReport out;
  for (Index j = 0; j < nt; ++j) {
    const double dW = path.dw[j];
    const auto a = A.row(j).segment(window.begin, width).array().transpose();
    const auto p = Psi.row(j).segment(window.begin, width).array().transpose();
    Eigen::ArrayXd predicted = a * dt + p * dW;
    const Eigen::ArrayXd actual =
        (F.row(j + 1).segment(window.begin, width) - F.row(j).segment(window.begin, width)).array().transpose();
    out.max_step = std::max(out.max_step, (actual - predicted).abs().maxCoeff());
    if (psi_psi) {
      predicted += 0.5 * (dW * dW - dt) * psi_psi->row(j).segment(window.begin, width).array().transpose();
    }
    acc += actual - predicted;
    out.max_abs = std::max(out.max_abs, acc.abs().maxCoeff());
  }
  return out;
}

}  // namespace sburgers
