#pragma once

#include "sburgers/burgers/residuals.hpp"
#include "sburgers/colehopf/point_transform.hpp"

namespace sburgers {

/// Drift of the linear backward equation for the kernel r:
///   -1/2 s^2 r_xx + (Psi^s + s m) r_x + [s c - Psi^s m - (Psi^s)^2/s + A^s] r/s - s Psi^r_x + (Psi^s/s + m) Psi^r.
Matrix<double> r_bspde_drift(const TransformKernel& kernel, const CoefficientSet& coeffs, const BrownianPath& path);

ResidualReport residual_r_bspde(const TransformKernel& kernel, const CoefficientSet& coeffs,
                                const BrownianPath& path, const ResidualOptions& options = {});

/// Drift that the constraint prescribes for Psi^V:
///   -1/2 s^2 Psi^V_xx + (s m + Psi^s) Psi^V_x + (A^s/s - Psi^s m/s + c - (Psi^s)^2/s^2) Psi^V
///   - s Psi^{Psi^V}_x + (Psi^s/s + m) Psi^{Psi^V}.
Matrix<double> mid_constraint_drift(const Semimartingale& V, const CoefficientSet& coeffs,
                                    const BrownianPath& path);

/// Residual of Psi^V against the constraint; requires V.psi_psi, uses V.psi_psi_psi when present.
ResidualReport residual_mid_constraint(const Semimartingale& V, const CoefficientSet& coeffs,
                                       const BrownianPath& path, const ResidualOptions& options = {});

/// Pointwise left side of the algebraic constraint linking r, Psi^V and their
/// drifts; returns its max absolute value over the window. Requires
/// A^{Psi^r}, Psi^{Psi^r}, A^{Psi^V} and Psi^{Psi^V}. Absent sigma parts read as zero.
double residual_big_constraint(const TransformKernel& kernel, const Semimartingale& V,
                               const CoefficientSet& coeffs, const BrownianPath& path,
                               const ResidualOptions& options = {});

}  // namespace sburgers
