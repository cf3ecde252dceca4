#pragma once

#include <optional>

#include "sburgers/core/field.hpp"

namespace sburgers {

/// U = -V_x / V. Throws DomainError naming the first node with V <= 0.
Field forward_transform(const Field& V);

/// U = -V_x / V - Psi^V / (sigma V).
Field generalized_transform(const Field& V, const Field& psi_V, const Process& sigma);

/// Martingale part of the generalized transform:
///   Psi^U = -Psi^{Psi^V}/(s V) + (Psi^V)^2/(s V^2) + Psi^s Psi^V/(s^2 V) - Psi^V_x/V + Psi^V V_x/V^2.
/// Requires V.psi_psi; Psi^sigma is read from sigma.psi() (zero if absent).
Field psiU_from_V(const Semimartingale& V, const Process& sigma);

/// U with its martingale parts obtained by propagating jets through the transform.
struct TransformedField {
  Field U;
  Field psi_U;
  /// Present when V carries psi_psi_psi.
  std::optional<Field> psi_psi_U;
};

/// Generalized transform of (V, Psi^V, Psi^{Psi^V}[, Psi^{Psi^{Psi^V}}]); requires V.psi_psi.
TransformedField generalized_transform_jet(const Semimartingale& V, const Process& sigma);

/// max over the window of |p + d/dx log q + Psi^V(T) / (sigma(T) q)|.
double terminal_compatibility_residual(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                                       const Eigen::VectorXd& psi_V_T, double sigma_T, const Grid& grid,
                                       double buffer_fraction = 0.2);

}  // namespace sburgers
