#include <gtest/gtest.h>

#include <cmath>

#include "sburgers/burgers/forward_solver.hpp"
#include "sburgers/burgers/residuals.hpp"
#include "sburgers/core/stencil.hpp"

using namespace sburgers;

namespace {

CoefficientSet zero_drift_set(const Grid& g, double sigma) {
  const CoefficientField zero = CoefficientField::zero(g);
  return build_linearizable_coefficients(Process::constant(g, sigma), zero, zero, zero, Process::constant(g, 0.0));
}

// U = -a tanh(a (x + H(t))) with H = ell W solves the forward equation when b = m = f = c_bar = 0.
double tanh_solution(double a, double x, double h) { return -a * std::tanh(a * (x + h)); }

double forward_error(Index nx, Index nt, TimeScheme scheme, std::uint64_t stream) {
  const double sigma = 0.5;
  const Grid g(-6.0, 6.0, nx, 0.5, nt);
  const CoefficientSet coeffs = zero_drift_set(g, sigma);
  const BrownianPath path = make_brownian_path(99, stream, g);
  Eigen::VectorXd p0(nx);
  for (Index i = 0; i < nx; ++i) p0[i] = tanh_solution(1.0, g.x(i), 0.0);
  ForwardOptions opts;
  opts.scheme = scheme;
  const ForwardSolution sol = solve_forward_burgers(p0, coeffs, path, opts);
  const Window w = reporting_window(g, 0.25);
  double err = 0.0;
  for (Index n = 0; n <= nt; ++n) {
    const double h = -2.0 * sigma * path.w[n];
    for (Index i = w.begin; i <= w.end; ++i) err = std::max(err, std::fabs(sol.U(n, i) - tanh_solution(1.0, g.x(i), h)));
  }
  return err;
}

}  // namespace

TEST(Coefficients, BranchAlgebra) {
  for (double s : {-1.3, 0.4, 2.0}) {
    EXPECT_NEAR(linearized_diffusion(s, -2.0 * s), 2.5 * s * s, 1e-14);
    EXPECT_NEAR(linearized_diffusion(s, s), -0.5 * s * s, 1e-14);
    EXPECT_NEAR(nonlinear_heat_coefficient(s, -2.0 * s), 0.0, 1e-14);
    EXPECT_NEAR(nonlinear_heat_coefficient(s, s), 0.0, 1e-14);
    EXPECT_GT(std::fabs(nonlinear_heat_coefficient(s, 0.5 * s)), 0.1);
  }
}

TEST(Coefficients, LinearizableRelationsHold) {
  const Grid g(-2.0, 2.0, 81, 1.0, 8);
  const Process sigma = Process::deterministic(g, [](double t) { return 1.0 + t; }, [](double) { return 1.0; });
  const CoefficientField b = CoefficientField::closed_form(g, [](double t, double x, double w) { return std::sin(x) + t * w; });
  const CoefficientField m = CoefficientField::closed_form(g, [](double, double x, double w) { return x * x + w; });
  const CoefficientField f = CoefficientField::closed_form(g, [](double t, double x, double) { return std::cos(x) * t; });
  const Process c_bar = Process::constant(g, 0.3);
  const CoefficientSet cs = build_linearizable_coefficients(sigma, b, m, f, c_bar);
  const double w = 0.7;
  for (Index n = 0; n <= g.nt(); ++n) {
    const double s = sigma[n];
    EXPECT_DOUBLE_EQ(cs.a[n], s * s);
    EXPECT_DOUBLE_EQ(cs.g[n], s);
    EXPECT_DOUBLE_EQ(cs.s[n], -s);
    EXPECT_DOUBLE_EQ(cs.ell[n], -2.0 * s);
    const Eigen::VectorXd e = derivative<double>(b.slice(n, w), g.dx(), 1) - 2.0 * s * derivative<double>(m.slice(n, w), g.dx(), 1);
    EXPECT_LT((cs.e.slice(n, w) - e).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::VectorXd c = cumulative_antiderivative<double>(f.slice(n, w), g.dx());
    c.array() += 0.3;
    EXPECT_LT((cs.c.slice(n, w) - c).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((cs.k.slice(n, w) - (b.slice(n, w) - 2.0 * s * m.slice(n, w))).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_TRUE(cs.d.slice(n, w) == m.slice(n, w));
  }
}

TEST(Coefficients, RebuildIsIdempotent) {
  const Grid g(-1.0, 1.0, 21, 1.0, 4);
  const Process sigma = Process::constant(g, -0.7);
  const CoefficientField b = CoefficientField::closed_form(g, [](double, double x, double) { return x; });
  const CoefficientField m = CoefficientField::closed_form(g, [](double, double x, double) { return x * x; });
  const CoefficientField f = CoefficientField::closed_form(g, [](double, double x, double) { return std::exp(x); });
  const CoefficientSet once = build_linearizable_coefficients(sigma, b, m, f, Process::constant(g, 1.0));
  const CoefficientSet twice = build_linearizable_coefficients(once.sigma, once.b, once.m, once.f, once.c_bar);
  const Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(g.nt() + 1, 0.0, 1.0);
  for (auto field : {&CoefficientSet::e, &CoefficientSet::c, &CoefficientSet::k, &CoefficientSet::d}) {
    EXPECT_TRUE((once.*field).materialize(w).values() == (twice.*field).materialize(w).values());
  }
  EXPECT_TRUE(once.ell.values() == twice.ell.values());
}

TEST(Coefficients, RefusesVanishingSigmaAndIllPosedBranch) {
  const Grid g(-1.0, 1.0, 21, 1.0, 4);
  const CoefficientField zero = CoefficientField::zero(g);
  Eigen::VectorXd s = Eigen::VectorXd::Ones(5);
  s[2] = 0.0;
  EXPECT_THROW(build_linearizable_coefficients(Process(g, s), zero, zero, zero, Process::constant(g, 0.0)), DomainError);
  EXPECT_THROW(build_linearizable_coefficients(Process::constant(g, 1.0), zero, zero, zero, Process::constant(g, 0.0),
                                               EllBranch::Sigma),
               DomainError);
}

TEST(ForwardBurgers, MatchesTravellingTanhSolution) {
  EXPECT_LT(forward_error(241, 4000, TimeScheme::Milstein, 1), 2e-3);
}

TEST(ForwardBurgers, MilsteinConvergesFasterThanEulerMaruyama) {
  double mil_ratio = 0.0, em_ratio = 0.0;
  for (std::uint64_t s = 0; s < 3; ++s) {
    mil_ratio += forward_error(121, 1000, TimeScheme::Milstein, s) / forward_error(241, 4000, TimeScheme::Milstein, s);
    em_ratio +=
        forward_error(121, 1000, TimeScheme::EulerMaruyama, s) / forward_error(241, 4000, TimeScheme::EulerMaruyama, s);
  }
  EXPECT_GT(mil_ratio / 3.0, 3.0);
  EXPECT_GT(mil_ratio, em_ratio);
}

TEST(ForwardBurgers, PsiIsEllTimesGradient) {
  const Grid g(-3.0, 3.0, 61, 0.1, 200);
  const CoefficientSet cs = zero_drift_set(g, 1.0);
  Eigen::VectorXd p0(g.nx());
  for (Index i = 0; i < g.nx(); ++i) p0[i] = std::tanh(g.x(i));
  const ForwardSolution sol = solve_forward_burgers(p0, cs, make_brownian_path(1, 1, g));
  const Field ux = central_derivative(sol.U, 1);
  EXPECT_LT((sol.psi_U.values() + 2.0 * ux.values()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ForwardBurgers, StabilityContract) {
  const Grid g(-3.0, 3.0, 61, 1.0, 10);
  const CoefficientSet cs = zero_drift_set(g, 1.0);
  EXPECT_THROW(solve_forward_burgers(Eigen::VectorXd::Zero(g.nx()), cs, make_brownian_path(1, 1, g)),
               ConfigurationError);
}

TEST(ForwardBurgers, BlowUpIsReported) {
  const Grid g(-1.0, 1.0, 11, 0.01, 10);
  const CoefficientField zero = CoefficientField::zero(g);
  const CoefficientField growth = CoefficientField::closed_form(g, [](double, double x, double) { return 1e300 * x; });
  const CoefficientSet cs =
      build_linearizable_coefficients(Process::constant(g, 1.0), growth, zero, zero, Process::constant(g, 0.0));
  EXPECT_THROW(solve_forward_burgers(Eigen::VectorXd::Ones(g.nx()), cs, make_brownian_path(1, 1, g)),
               NumericalFailure);
}
