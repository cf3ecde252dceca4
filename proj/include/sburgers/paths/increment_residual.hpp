#pragma once

#include "sburgers/core/field.hpp"
#include "sburgers/paths/brownian.hpp"

namespace sburgers {

/// How far a sampled F is from dF = A dt + Psi dW along one path.
struct ResidualReport {
  /// max over n and the window of |R_n|, where
  ///   R_n = F_n - F_0 - sum_{j<n} [A_j dt + Psi_j dW_j + (1/2) PsiPsi_j (dW_j^2 - dt)].
  /// For a correct drift this is O(dt + dx^2); a wrong drift leaves an O(1) remainder.
  double max_abs = 0.0;
  /// max over steps and the window of |F_{j+1} - F_j - A_j dt - Psi_j dW_j|.
  double max_step = 0.0;
};

/// Rows are time levels 0..nt, columns are space nodes. psi_psi may be null (read as zero).
ResidualReport increment_residual(const Matrix<double>& F, const Matrix<double>& A, const Matrix<double>& Psi,
                                  const Matrix<double>* psi_psi, const BrownianPath& path, Window window);

}  // namespace sburgers
