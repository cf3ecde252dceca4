#pragma once

#include <optional>

#include "sburgers/burgers/coefficients.hpp"
#include "sburgers/closedform/families.hpp"
#include "sburgers/colehopf/transform.hpp"

namespace sburgers {

/// sigma(t) = sigma0 exp(nu W(t)); nu = 0 gives a constant.
struct SigmaModel {
  double sigma0 = 1.0;
  double nu = 0.0;
};

/// sigma along a path with A^s = nu^2 s/2, Psi^s = nu s, A^{Psi^s} = nu^3 s/2, Psi^{Psi^s} = nu^2 s.
Process sigma_process(const SigmaModel& model, const BrownianPath& path);

/// A closed-form backward scenario: V with all its parts, the solved (m, c),
/// the backward coefficient set and U obtained through the generalized transform.
struct FamilyScenario {
  BrownianPath path;
  Process sigma;
  Semimartingale V;
  FamilyCoefficients solved;
  CoefficientSet coeffs;
  TransformedField U;
};

struct FamilyOptions {
  std::optional<double> pinned_m;
  /// Added to the solved m before building the coefficient set (negative controls).
  double m_shift = 0.0;
};

/// family is 1 (V = exp(f W)) or 2 (V = f exp(W)).
FamilyScenario build_family_scenario(int family, const Profile& profile, const SigmaModel& sigma,
                                     const BrownianPath& path, const FamilyOptions& options = {});

}  // namespace sburgers
