#pragma once

#include <functional>
#include <optional>

#include "sburgers/core/field.hpp"
#include "sburgers/paths/brownian.hpp"

namespace sburgers {

/// A spatial profile sampled on the lattice with its first two derivatives.
struct Profile {
  Eigen::VectorXd f;
  Eigen::VectorXd d1;
  Eigen::VectorXd d2;
};

using ScalarFn = std::function<double(double)>;

/// Samples an analytic profile and its analytic derivatives.
Profile sample_profile(const Grid& grid, const ScalarFn& f, const ScalarFn& df, const ScalarFn& d2f);

/// Samples f and takes its derivatives with the lattice stencils.
Profile sample_profile(const Grid& grid, const Eigen::VectorXd& f);

/// V = exp(f1 W): Psi^V = f1 V, A^V = f1^2 V / 2, A^{Psi^V} = f1^3 V / 2,
/// Psi^{Psi^V} = f1^2 V, Psi^{Psi^{Psi^V}} = f1^3 V.
Semimartingale example1_fields(const Profile& f1, const BrownianPath& path);

/// V = f2 exp(W) with every martingale part equal to V and every drift V / 2.
/// Throws DomainError unless f2 > 0.
Semimartingale example2_fields(const Profile& f2, const BrownianPath& path);

/// sigma, A^sigma and Psi^sigma at one time.
struct SigmaPoint {
  double value = 1.0;
  double drift = 0.0;
  double psi = 0.0;
};

/// Pointwise linear system A (m, c)^T = b.
struct CoefficientSystem {
  Eigen::Matrix2d A;
  Eigen::Vector2d b;
};

struct CoefficientSolution {
  double m = 0.0;
  double c = 0.0;
  /// True when the two equations are linearly dependent (rank one).
  bool dependent = false;
};

/// The two equations obtained by inserting the first family into the backward
/// heat equation and the constraint on Psi^V.
CoefficientSystem example1_system(double f, double f1, double f2, const SigmaPoint& sigma, double w);

/// Same for the second family (no W dependence).
CoefficientSystem example2_system(double f, double f1, double f2, const SigmaPoint& sigma);

/// Unique solution when regular. When the rows are dependent and consistent,
/// returns the minimal-norm solution, or the one with m = pinned_m if given.
/// Throws SingularityError when the system is singular and inconsistent.
CoefficientSolution solve_coefficient_system(const CoefficientSystem& system,
                                             std::optional<double> pinned_m = std::nullopt);

CoefficientSolution example1_solve_coefficients(double f, double f1, double f2, const SigmaPoint& sigma, double w,
                                                std::optional<double> pinned_m = std::nullopt);

CoefficientSolution example2_solve_coefficients(double f, double f1, double f2, const SigmaPoint& sigma,
                                                std::optional<double> pinned_m = std::nullopt);

/// Lattice fields (m, c) solving the system at every node of a path.
struct FamilyCoefficients {
  Field m;
  Field c;
  /// Number of nodes where the system was rank one.
  Index dependent_nodes = 0;
};

FamilyCoefficients example1_coefficients(const Profile& f1, const Process& sigma, const BrownianPath& path,
                                         std::optional<double> pinned_m = std::nullopt);

FamilyCoefficients example2_coefficients(const Profile& f2, const Process& sigma, const BrownianPath& path,
                                         std::optional<double> pinned_m = std::nullopt);

/// Constant parameters of the two pricing families.
struct FinanceParameters {
  double m = 0.0;
  double p = 0.0;
  double c_bar = 0.0;
};

/// family 1: (alpha/2, -alpha/sigma, 0); family 2: (1/2, -1/sigma, 0).
/// `parameter` is alpha for family 1 and beta for family 2. Requires sigma < 0.
FinanceParameters finance_parameters(int family, double parameter, double sigma);

}  // namespace sburgers
