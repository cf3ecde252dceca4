#include "sburgers/colehopf/point_transform.hpp"

#include <cmath>
#include <sstream>

#include "sburgers/core/stencil.hpp"

namespace sburgers {

namespace {

void require_regular(double sigma, double y) {
  if (sigma == 0.0 || y == 0.0) throw SingularityError("point transformation: sigma and y must be nonzero");
}

}  // namespace

double point_transform_Y(double sigma, double y, double z) {
  require_regular(sigma, y);
  return -z / (sigma * y);
}

double point_transform_z(double sigma, double y, double z, double h) {
  require_regular(sigma, y);
  return z * z / (sigma * y * y) - h / (sigma * y);
}

double point_transform_pde_residual(double sigma, double /*x*/, double y, double z, double h) {
  require_regular(sigma, y);
  const double Y = -z / (sigma * y);
  const double Y_x = 0.0, Y_xx = 0.0, Y_xy = 0.0, Y_xz = 0.0, Y_zz = 0.0;
  const double Y_y = z / (sigma * y * y);
  const double Y_z = -1.0 / (sigma * y);
  const double Y_yy = -2.0 * z / (sigma * y * y * y);
  const double Y_yz = 1.0 / (sigma * y * y);
  return 0.5 * sigma * sigma * Y_xx + 0.5 * z * z * Y_yy + 0.5 * h * h * Y_zz + sigma * z * Y_xy + h * z * Y_yz +
         sigma * h * Y_xz - sigma * sigma * Y * Y_x - sigma * z * Y * Y_y - sigma * h * Y * Y_z;
}

double eval_general_Y(const TransformKernel& kernel, Index n, double x, double y, double z) {
  const Grid& g = kernel.r.grid();
  require_same_grid(g, kernel.sigma.grid(), "general point transformation");
  if (n < 0 || n > g.nt()) throw ConfigurationError("general point transformation: time index out of range");
  const Eigen::VectorXd r_slice = kernel.r.value.slice(n);
  const double s = kernel.sigma[n];
  if (s == 0.0) throw SingularityError("general point transformation: sigma vanishes");
  const double ps = kernel.sigma.psi_or_zero()[n];
  const double r = interpolate_at<double>(r_slice, g, x);
  const double rx = interpolate_at<double>(derivative<double>(r_slice, g.dx(), 1), g, x);
  const double pr = interpolate_at<double>(kernel.r.psi.slice(n), g, x);
  const double den = s * y - r;
  if (std::fabs(den) < 1e-8 * (1.0 + std::fabs(s * y))) {
    std::ostringstream msg;
    msg << "general point transformation: sigma y - r = " << den << " at t=" << g.t(n) << ", x=" << x;
    throw SingularityError(msg.str());
  }
  return -z / den + ps / (s * s) + (s * rx - ps * y + pr) / (s * den);
}

}  // namespace sburgers
