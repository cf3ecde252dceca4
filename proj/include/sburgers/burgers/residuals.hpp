#pragma once

#include <optional>

#include "sburgers/burgers/coefficients.hpp"
#include "sburgers/paths/increment_residual.hpp"

namespace sburgers {

struct ResidualOptions {
  /// Fraction of nodes dropped on each side before taking maxima.
  double buffer_fraction = 0.2;
};

/// Residual of the backward Burgers equation
///   dU = [-1/2 s^2 U_xx + s^2 U U_x + s U Psi^U + s m U_x + e U - s Psi^U_x + m Psi^U + f] dt + Psi^U dW
/// with s = sigma. psi_psi_U (the martingale part of Psi^U) enables the Milstein correction.
ResidualReport residual_backward_burgers(const Field& U, const Field& psi_U, const std::optional<Field>& psi_psi_U,
                                         const CoefficientSet& coeffs, const BrownianPath& path,
                                         const ResidualOptions& options = {});

/// Residual of the backward heat equation
///   dV = {-1/2 s^2 V_xx + s d V_x - s Psi^V_x + d Psi^V + c V} dt + Psi^V dW.
/// Uses V.psi_psi for the Milstein correction when present.
ResidualReport residual_backward_heat(const Semimartingale& V, const CoefficientSet& coeffs,
                                      const BrownianPath& path, const ResidualOptions& options = {});

/// Drift of the backward heat equation on every lattice node.
Matrix<double> backward_heat_drift(const Field& V, const Field& psi_V, const CoefficientSet& coeffs,
                                   const BrownianPath& path);

/// Drift of the backward Burgers equation on every lattice node.
Matrix<double> backward_burgers_drift(const Field& U, const Field& psi_U, const CoefficientSet& coeffs,
                                      const BrownianPath& path);

/// Tabulates a coefficient along a path.
Matrix<double> along_path(const CoefficientField& field, const BrownianPath& path);

/// Broadcasts a process over the columns of an (nt+1) x nx array.
Eigen::ArrayXXd broadcast(const Eigen::VectorXd& process, Index nx);

}  // namespace sburgers
