#pragma once

#include "sburgers/core/field.hpp"

namespace sburgers {

/// Y(x, y, z) = -z / (sigma y).
double point_transform_Y(double sigma, double y, double z);

/// Z = sigma Y_x + z Y_y + h Y_z = z^2 / (sigma y^2) - h / (sigma y).
double point_transform_z(double sigma, double y, double z, double h);

/// Left side of the deterministic-coefficient PDE for Y = -z/(sigma y):
///   1/2 s^2 Y_xx + 1/2 z^2 Y_yy + 1/2 h^2 Y_zz + s z Y_xy + h z Y_yz + s h Y_xz
///   - s^2 Y Y_x - s z Y Y_y - s h Y Y_z,
/// with the analytic partials of Y. Vanishes identically up to rounding.
double point_transform_pde_residual(double sigma, double x, double y, double z, double h);

/// Random field r with the parts used by the general point transformation:
/// value, drift A^r, Psi^r, and on the second level A^{Psi^r}, Psi^{Psi^r}.
struct TransformKernel {
  Semimartingale r;
  Process sigma;
};

/// General solution
///   Y = -z/(s y - r) + Psi^s/s^2 + (s r_x - Psi^s y + Psi^r) / (s (s y - r))
/// at lattice time n and position x (linear interpolation in space).
/// Throws SingularityError when |s y - r| < 1e-8 (1 + |s y|).
double eval_general_Y(const TransformKernel& kernel, Index n, double x, double y, double z);

}  // namespace sburgers
