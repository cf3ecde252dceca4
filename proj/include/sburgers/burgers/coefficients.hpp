#pragma once

#include "sburgers/core/coefficient_field.hpp"
#include "sburgers/core/field.hpp"

namespace sburgers {

/// Coefficients of the forward and backward Burgers equations and of the
/// associated heat equations. Process-valued entries depend on time only.
struct CoefficientSet {
  Grid grid;
  Process sigma;
  Process a;
  Process g;
  Process s;
  Process ell;
  Process c_bar;
  CoefficientField b;
  CoefficientField e;
  CoefficientField m;
  CoefficientField f;
  CoefficientField c;
  CoefficientField d;
  CoefficientField k;
};

/// The two roots of the quadratic that removes the V_x^2 / V term.
enum class EllBranch {
  MinusTwoSigma,  // the well-posed branch
  Sigma,          // yields diffusion -sigma^2/2 and is refused
};

/// Coefficient of V_xx in the forward heat equation: (sigma^2 + 2 s ell) / 2 with s = -sigma.
double linearized_diffusion(double sigma, double ell);

/// Coefficient of V_x^2 / V that the branch choice must annihilate:
/// -(sigma^2 + a + (g + 2 s) ell - ell^2) / 2 with a = sigma^2, g = sigma, s = -sigma.
double nonlinear_heat_coefficient(double sigma, double ell);

/// Forward linearizable set: a = sigma^2, g = sigma, s = -sigma, ell = -2 sigma,
/// e = b_x + ell m_x, c = int f dx + c_bar, k = b + ell m, d = m.
/// Throws DomainError if sigma vanishes anywhere or if the Sigma branch is requested.
CoefficientSet build_linearizable_coefficients(const Process& sigma, const CoefficientField& b,
                                               const CoefficientField& m, const CoefficientField& f,
                                               const Process& c_bar,
                                               EllBranch branch = EllBranch::MinusTwoSigma);

/// Backward set driven by (sigma, m, c): a = sigma^2, g = sigma, s = -sigma,
/// b = sigma m, d = m, e = sigma m_x, f = -c_x.
CoefficientSet build_backward_coefficients(const Process& sigma, const CoefficientField& m,
                                           const CoefficientField& c);

}  // namespace sburgers
