#include "sburgers/colehopf/transform.hpp"

#include <sstream>

#include "sburgers/colehopf/jet.hpp"
#include "sburgers/core/stencil.hpp"

namespace sburgers {

namespace {

void require_positive(const Field& V, const char* where) {
  const Grid& g = V.grid();
  for (Index n = 0; n <= g.nt(); ++n) {
    for (Index i = 0; i < g.nx(); ++i) {
      if (!(V(n, i) > 0.0)) {
        std::ostringstream msg;
        msg << where << ": V must be positive, V=" << V(n, i) << " at t=" << g.t(n) << ", x=" << g.x(i);
        throw DomainError(msg.str());
      }
    }
  }
}

void require_nonzero_sigma(const Process& sigma) {
  for (Index n = 0; n < sigma.size(); ++n) {
    if (sigma[n] == 0.0) {
      std::ostringstream msg;
      msg << "generalized transform: sigma vanishes at t=" << sigma.grid().t(n);
      throw DomainError(msg.str());
    }
  }
}

Eigen::ArrayXXd columns(const Eigen::VectorXd& v, Index nx) { return v.replicate(1, nx).array(); }

}  // namespace

Field forward_transform(const Field& V) {
  require_positive(V, "forward transform");
  const Matrix<double> vx = central_derivative(V, 1).values();
  Matrix<double> u = -(vx.array() / V.values().array()).matrix();
  return Field(V.grid(), std::move(u));
}

Field generalized_transform(const Field& V, const Field& psi_V, const Process& sigma) {
  require_same_grid(V.grid(), psi_V.grid(), "generalized transform");
  require_same_grid(V.grid(), sigma.grid(), "generalized transform");
  require_positive(V, "generalized transform");
  require_nonzero_sigma(sigma);
  const Eigen::ArrayXXd s = columns(sigma.values(), V.grid().nx());
  const auto v = V.values().array();
  const Eigen::ArrayXXd vx = central_derivative(V, 1).values().array();
  Eigen::ArrayXXd u = -vx / v - psi_V.values().array() / (s * v);
  return Field(V.grid(), u.matrix());
}

Field psiU_from_V(const Semimartingale& V, const Process& sigma) {
  if (!V.psi_psi) throw MissingParts("psiU_from_V: V must carry Psi^{Psi^V}");
  require_same_grid(V.grid(), sigma.grid(), "psiU_from_V");
  require_positive(V.value, "psiU_from_V");
  require_nonzero_sigma(sigma);
  const Index nx = V.grid().nx();
  const Eigen::ArrayXXd s = columns(sigma.values(), nx);
  const Eigen::ArrayXXd ps = columns(sigma.psi_or_zero(), nx);
  const auto v = V.value.values().array();
  const auto pv = V.psi.values().array();
  const auto ppv = V.psi_psi->values().array();
  const Eigen::ArrayXXd vx = central_derivative(V.value, 1).values().array();
  const Eigen::ArrayXXd pvx = central_derivative(V.psi, 1).values().array();
  Eigen::ArrayXXd out = -ppv / (s * v) + pv.square() / (s * v.square()) + ps * pv / (s.square() * v) - pvx / v +
                        pv * vx / v.square();
  return Field(V.grid(), out.matrix());
}

TransformedField generalized_transform_jet(const Semimartingale& V, const Process& sigma) {
  if (!V.psi_psi) throw MissingParts("generalized transform jet: V must carry Psi^{Psi^V}");
  require_same_grid(V.grid(), sigma.grid(), "generalized transform jet");
  require_positive(V.value, "generalized transform jet");
  require_nonzero_sigma(sigma);
  const Grid& g = V.grid();
  const Index nx = g.nx();
  const bool third = V.psi_psi_psi.has_value();
  const Eigen::ArrayXXd zero = Eigen::ArrayXXd::Zero(g.nt() + 1, nx);
  auto arr = [](const Field& f) -> Eigen::ArrayXXd { return f.values().array(); };
  auto dx = [](const Field& f) -> Eigen::ArrayXXd { return central_derivative(f, 1).values().array(); };

  using J = Jet<Eigen::ArrayXXd>;
  const J v{arr(V.value), arr(V.psi), arr(*V.psi_psi)};
  const J vx{dx(V.value), dx(V.psi), dx(*V.psi_psi)};
  const J pv{arr(V.psi), arr(*V.psi_psi), third ? arr(*V.psi_psi_psi) : zero};
  const J s{columns(sigma.values(), nx), columns(sigma.psi_or_zero(), nx), columns(sigma.psi_psi_or_zero(), nx)};

  const J u = -(vx / v) - pv / (s * v);
  TransformedField out{Field(g, u.v.matrix()), Field(g, u.d1.matrix()), std::nullopt};
  if (third) out.psi_psi_U = Field(g, u.d2.matrix());
  return out;
}

double terminal_compatibility_residual(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                                       const Eigen::VectorXd& psi_V_T, double sigma_T, const Grid& grid,
                                       double buffer_fraction) {
  const Index nx = grid.nx();
  if (p.size() != nx || q.size() != nx || psi_V_T.size() != nx) {
    throw GridMismatch("terminal compatibility: slice length differs from nx");
  }
  if (sigma_T == 0.0) throw DomainError("terminal compatibility: sigma(T) vanishes");
  for (Index i = 0; i < nx; ++i) {
    if (!(q[i] > 0.0)) {
      std::ostringstream msg;
      msg << "terminal compatibility: q must be positive, fails at x=" << grid.x(i);
      throw DomainError(msg.str());
    }
  }
  const Eigen::VectorXd qx = derivative<double>(q, grid.dx(), 1);
  const Window w = reporting_window(grid, buffer_fraction);
  const Eigen::ArrayXd r =
      p.array() + qx.array() / q.array() + psi_V_T.array() / (sigma_T * q.array());
  return r.segment(w.begin, w.size()).abs().maxCoeff();
}

}  // namespace sburgers
