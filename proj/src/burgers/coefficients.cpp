#include "sburgers/burgers/coefficients.hpp"

#include <sstream>

#include "sburgers/core/stencil.hpp"

namespace sburgers {

namespace {

void require_nonvanishing(const Process& sigma) {
  for (Index n = 0; n < sigma.size(); ++n) {
    if (sigma[n] == 0.0) {
      std::ostringstream msg;
      msg << "coefficients: sigma vanishes at t=" << sigma.grid().t(n);
      throw DomainError(msg.str());
    }
  }
}

Process scaled(const Process& p, double factor) {
  Process out(p.grid(), factor * p.values());
  if (p.drift()) out = out.with_drift(factor * *p.drift());
  if (p.psi()) out = out.with_psi(factor * *p.psi());
  return out;
}

}  // namespace

double linearized_diffusion(double sigma, double ell) { return 0.5 * (sigma * sigma - 2.0 * sigma * ell); }

double nonlinear_heat_coefficient(double sigma, double ell) {
  const double a = sigma * sigma;
  const double g = sigma;
  const double s = -sigma;
  return -0.5 * (sigma * sigma + a + (g + 2.0 * s) * ell - ell * ell);
}

CoefficientSet build_linearizable_coefficients(const Process& sigma, const CoefficientField& b,
                                               const CoefficientField& m, const CoefficientField& f,
                                               const Process& c_bar, EllBranch branch) {
  const Grid grid = sigma.grid();
  require_same_grid(b.grid(), grid, "linearizable coefficients b");
  require_same_grid(m.grid(), grid, "linearizable coefficients m");
  require_same_grid(f.grid(), grid, "linearizable coefficients f");
  require_same_grid(c_bar.grid(), grid, "linearizable coefficients c_bar");
  require_nonvanishing(sigma);
  if (branch == EllBranch::Sigma) {
    throw DomainError("coefficients: ell = sigma makes the heat diffusion -sigma^2/2 (ill-posed); use ell = -2 sigma");
  }

  const Process ell = scaled(sigma, -2.0);
  const Eigen::VectorXd sq = sigma.values().array().square();
  const double dx = grid.dx();

  CoefficientField e = (b.is_zero() && m.is_zero())
                           ? CoefficientField::zero(grid)
                           : CoefficientField::generated(grid, [b, m, ell, dx](Index n, double w) {
                               Eigen::VectorXd out = derivative<double>(b.slice(n, w), dx, 1);
                               out += ell[n] * derivative<double>(m.slice(n, w), dx, 1);
                               return out;
                             });
  CoefficientField c = CoefficientField::generated(grid, [f, c_bar, dx](Index n, double w) {
    Eigen::VectorXd out = cumulative_antiderivative<double>(f.slice(n, w), dx);
    out.array() += c_bar[n];
    return out;
  });
  if (f.is_zero() && c_bar.values().isZero(0.0)) c = CoefficientField::zero(grid);
  CoefficientField k = (b.is_zero() && m.is_zero())
                           ? CoefficientField::zero(grid)
                           : CoefficientField::generated(grid, [b, m, ell](Index n, double w) {
                               return (b.slice(n, w) + ell[n] * m.slice(n, w)).eval();
                             });

  return CoefficientSet{grid, sigma, Process(grid, sq), sigma, scaled(sigma, -1.0), ell, c_bar,
                        b,    e,     m,                 f,     c,                    m, k};
}

CoefficientSet build_backward_coefficients(const Process& sigma, const CoefficientField& m,
                                           const CoefficientField& c) {
  const Grid grid = sigma.grid();
  require_same_grid(m.grid(), grid, "backward coefficients m");
  require_same_grid(c.grid(), grid, "backward coefficients c");
  require_nonvanishing(sigma);
  const double dx = grid.dx();
  CoefficientField b = CoefficientField::generated(grid, [m, sigma](Index n, double w) {
    return (sigma[n] * m.slice(n, w)).eval();
  });
  CoefficientField e = CoefficientField::generated(grid, [m, sigma, dx](Index n, double w) {
    return (sigma[n] * derivative<double>(m.slice(n, w), dx, 1)).eval();
  });
  CoefficientField f = CoefficientField::generated(grid, [c, dx](Index n, double w) {
    return (-derivative<double>(c.slice(n, w), dx, 1)).eval();
  });
  const Eigen::VectorXd sq = sigma.values().array().square();
  return CoefficientSet{grid, sigma, Process(grid, sq), sigma, scaled(sigma, -1.0), scaled(sigma, -2.0),
                        Process::constant(grid, 0.0), b, e, m, f, c, m, CoefficientField::zero(grid)};
}

}  // namespace sburgers
