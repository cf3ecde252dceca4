#include "sburgers/closedform/scenario.hpp"

#include <cmath>

namespace sburgers {

Process sigma_process(const SigmaModel& model, const BrownianPath& path) {
  if (model.sigma0 == 0.0) throw DomainError("sigma model: sigma0 must be nonzero");
  const Eigen::VectorXd s = model.sigma0 * (model.nu * path.w).array().exp();
  const double nu = model.nu;
  return Process(path.grid, s)
      .with_drift(0.5 * nu * nu * s)
      .with_psi(nu * s)
      .with_drift_psi(0.5 * nu * nu * nu * s)
      .with_psi_psi(nu * nu * s);
}

FamilyScenario build_family_scenario(int family, const Profile& profile, const SigmaModel& sigma_model,
                                     const BrownianPath& path, const FamilyOptions& options) {
  if (family != 1 && family != 2) throw ConfigurationError("family scenario: family must be 1 or 2");
  const Process sigma = sigma_process(sigma_model, path);
  Semimartingale V = family == 1 ? example1_fields(profile, path) : example2_fields(profile, path);
  FamilyCoefficients solved = family == 1 ? example1_coefficients(profile, sigma, path, options.pinned_m)
                                          : example2_coefficients(profile, sigma, path, options.pinned_m);
  const Grid& g = path.grid;
  Matrix<double> m = solved.m.values();
  m.array() += options.m_shift;
  const CoefficientSet coeffs = build_backward_coefficients(sigma, CoefficientField::tabulated(Field(g, m)),
                                                            CoefficientField::tabulated(solved.c));
  TransformedField U = generalized_transform_jet(V, sigma);
  return FamilyScenario{path, sigma, std::move(V), std::move(solved), coeffs, std::move(U)};
}

}  // namespace sburgers
