#include "sburgers/fbsde/triplet.hpp"

#include <cmath>

#include "sburgers/core/stencil.hpp"

namespace sburgers {

Eigen::VectorXd simulate_forward_state(double x0, const Process& sigma, const CoefficientField* k,
                                       const BrownianPath& path) {
  const Grid& g = path.grid;
  require_same_grid(sigma.grid(), g, "forward state");
  if (k) require_same_grid(k->grid(), g, "forward state drift");
  Eigen::VectorXd x(g.nt() + 1);
  x[0] = x0;
  for (Index n = 0; n < g.nt(); ++n) {
    double drift = 0.0;
    if (k && !k->is_zero()) drift = interpolate_at<double>(k->slice(n, path.w[n]), g, x[n]);
    x[n + 1] = x[n] + drift * g.dt() + sigma[n] * path.dw[n];
  }
  return x;
}

FbsdeTriplet markovian_triplet(const Semimartingale& F, const Process& sigma, const Eigen::VectorXd& x_path,
                               const BrownianPath& path, double buffer_fraction) {
  const Grid& g = F.grid();
  require_same_grid(g, sigma.grid(), "triplet");
  require_same_grid(g, path.grid, "triplet");
  if (x_path.size() != g.nt() + 1) throw GridMismatch("triplet: forward state length differs from nt+1");
  const Window w = reporting_window(g, buffer_fraction);
  const double lo = g.x(w.begin);
  const double hi = g.x(w.end);
  const Eigen::VectorXd ps = sigma.psi_or_zero();
  const bool with_h = F.psi_psi.has_value();

  FbsdeTriplet out{path, x_path[0], x_path, Eigen::VectorXd(g.nt() + 1), Eigen::VectorXd(g.nt() + 1),
                   std::nullopt, false};
  Eigen::VectorXd h(g.nt() + 1);
  for (Index n = 0; n <= g.nt(); ++n) {
    const double x = x_path[n];
    if (x < lo || x > hi) out.exited_window = true;
    const Eigen::VectorXd f = F.value.slice(n);
    const Eigen::VectorXd fx = derivative<double>(f, g.dx(), 1);
    const Eigen::VectorXd psi = F.psi.slice(n);
    const double s = sigma[n];
    out.y[n] = interpolate_at<double>(f, g, x);
    out.z[n] = s * interpolate_at<double>(fx, g, x) + interpolate_at<double>(psi, g, x);
    if (with_h) {
      const Eigen::VectorXd fxx = derivative<double>(f, g.dx(), 2);
      const Eigen::VectorXd psix = derivative<double>(psi, g.dx(), 1);
      h[n] = interpolate_at<double>(F.psi_psi->slice(n), g, x) + s * s * interpolate_at<double>(fxx, g, x) +
             ps[n] * interpolate_at<double>(fx, g, x) + 2.0 * s * interpolate_at<double>(psix, g, x);
    }
  }
  if (with_h) out.h = std::move(h);
  return out;
}

ResidualReport bsde_residual(const FbsdeTriplet& triplet, const Driver& driver) {
  const Grid& g = triplet.path.grid;
  const Index rows = g.nt() + 1;
  Matrix<double> y = triplet.y;
  Matrix<double> z = triplet.z;
  Matrix<double> a(rows, 1);
  for (Index n = 0; n < rows; ++n) a(n, 0) = driver(n, g.t(n), triplet.x[n], triplet.y[n], triplet.z[n]);
  Matrix<double> h;
  if (triplet.h) h = *triplet.h;
  return increment_residual(y, a, z, triplet.h ? &h : nullptr, triplet.path, Window{0, 0});
}

double point_transform_identity_gap(const FbsdeTriplet& burgers, const FbsdeTriplet& heat, const Process& sigma) {
  const Index rows = burgers.y.size();
  if (heat.y.size() != rows || sigma.size() != rows) throw GridMismatch("identity gap: length mismatch");
  double gap = 0.0;
  for (Index n = 0; n < rows; ++n) {
    if (heat.y[n] == 0.0 || sigma[n] == 0.0) throw SingularityError("identity gap: sigma y vanishes");
    gap = std::max(gap, std::fabs(burgers.y[n] + heat.z[n] / (sigma[n] * heat.y[n])));
  }
  return gap;
}

}  // namespace sburgers
