#include <gtest/gtest.h>

#include <cmath>

#include "sburgers/core/stencil.hpp"
#include "sburgers/heat/heat_solver.hpp"

using namespace sburgers;

namespace {

HeatProblem gaussian_problem(const Grid& g, double k, double c0) {
  Eigen::VectorXd q(g.nx());
  for (Index i = 0; i < g.nx(); ++i) q[i] = std::exp(-0.5 * g.x(i) * g.x(i));
  return HeatProblem{g,
                     q,
                     Process::constant(g, 1.0),
                     CoefficientField::constant(g, k),
                     CoefficientField::constant(g, c0),
                     Process::constant(g, 0.0),
                     {}};
}

double exact_gaussian(double t, double x, double k) {
  const double y = x + k * t;
  return std::exp(-y * y / (2.0 * (1.0 + t))) / std::sqrt(1.0 + t);
}

}  // namespace

TEST(HeatSolver, GaussianSpreadsLikeHeatKernel) {
  const Grid g(-8.0, 8.0, 401, 0.25, 4000);
  const Field G = solve_pathwise_heat(gaussian_problem(g, 0.0, 0.0));
  double err = 0.0;
  for (Index i = 0; i < g.nx(); ++i) err = std::max(err, std::fabs(G(g.nt(), i) - exact_gaussian(0.25, g.x(i), 0.0)));
  EXPECT_LT(err, 5e-4);
}

TEST(HeatSolver, ConstantReactionScalesByExponential) {
  const Grid g(-8.0, 8.0, 201, 0.25, 1000);
  const Field plain = solve_pathwise_heat(gaussian_problem(g, 0.0, 0.0));
  const Field damped = solve_pathwise_heat(gaussian_problem(g, 0.0, 0.8));
  const double factor = std::exp(-0.8 * 0.25);
  double err = 0.0;
  for (Index i = 0; i < g.nx(); ++i) err = std::max(err, std::fabs(damped(g.nt(), i) - factor * plain(g.nt(), i)));
  EXPECT_LT(err, 1e-4);
}

TEST(HeatSolver, ConstantAdvectionTranslates) {
  const Grid g(-8.0, 8.0, 401, 0.25, 4000);
  const Field G = solve_pathwise_heat(gaussian_problem(g, 0.5, 0.0));
  double err = 0.0;
  for (Index i = 0; i < g.nx(); ++i) err = std::max(err, std::fabs(G(g.nt(), i) - exact_gaussian(0.25, g.x(i), 0.5)));
  EXPECT_LT(err, 5e-4);
}

TEST(HeatSolver, UnitDataStaysUnitUnderBothClosures) {
  const Grid g(-2.0, 2.0, 41, 1.0, 100);
  HeatProblem p = gaussian_problem(g, 0.0, 0.0);
  p.initial_q = Eigen::VectorXd::Ones(g.nx());
  for (HeatBoundary b : {HeatBoundary::Neumann, HeatBoundary::LogNeumann}) {
    const Field G = solve_pathwise_heat(p, HeatOptions{b, 1});
    EXPECT_LT((G.values().array() - 1.0).abs().maxCoeff(), 1e-14);
  }
}

TEST(HeatSolver, LogNeumannPreservesExponentialProfile) {
  // q = exp(-x) solves G_t = G_xx / 2 exactly as exp(-x + t/2).
  const Grid g(-2.0, 2.0, 81, 0.5, 500);
  HeatProblem p = gaussian_problem(g, 0.0, 0.0);
  for (Index i = 0; i < g.nx(); ++i) p.initial_q[i] = std::exp(-g.x(i));
  const Field G = solve_pathwise_heat(p, HeatOptions{HeatBoundary::LogNeumann, 1});
  double err = 0.0;
  for (Index i = 0; i < g.nx(); ++i) {
    err = std::max(err, std::fabs(G(g.nt(), i) / std::exp(-g.x(i) + 0.25) - 1.0));
  }
  EXPECT_LT(err, 1e-3);
}

TEST(HeatSolver, OutputStrideKeepsMatchingLevels) {
  const Grid g(-4.0, 4.0, 81, 0.2, 40);
  const Field full = solve_pathwise_heat(gaussian_problem(g, 0.3, 0.1));
  const Field coarse = solve_pathwise_heat(gaussian_problem(g, 0.3, 0.1), HeatOptions{HeatBoundary::Neumann, 8});
  ASSERT_EQ(coarse.grid().nt(), 5);
  for (Index n = 0; n <= 5; ++n) EXPECT_TRUE(coarse.slice(n) == full.slice(8 * n));
}

TEST(HeatSolver, StabilityContractViolationIsConfigurationError) {
  const Grid g(-1.0, 1.0, 21, 1.0, 10);  // dx = 0.1, dt = 0.1
  EXPECT_THROW(solve_pathwise_heat(gaussian_problem(g, 2.0, 0.0)), ConfigurationError);
}

TEST(HeatSolver, PositivityLossNamesLocation) {
  const Grid g(-1.0, 1.0, 21, 1.0, 10);
  try {
    solve_pathwise_heat(gaussian_problem(g, 0.0, 20.0));
    FAIL() << "expected NumericalFailure";
  } catch (const NumericalFailure& e) {
    EXPECT_NE(std::string(e.what()).find("t="), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("x="), std::string::npos);
  }
}

TEST(HeatSolver, RejectsNonPositiveInitialData) {
  const Grid g(-1.0, 1.0, 21, 1.0, 10);
  HeatProblem p = gaussian_problem(g, 0.0, 0.0);
  p.initial_q[3] = 0.0;
  EXPECT_THROW(solve_pathwise_heat(p), DomainError);
}

TEST(AssembleV, ShiftsEachLevelByH) {
  const Grid g(0.0, 1.0, 11, 1.0, 2);
  const Field G = Field::tabulate(g, [](double t, double x) { return 1.0 + t + x; });
  Eigen::VectorXd h(3);
  h << 0.0, 0.1, -0.2;
  const Field V = assemble_V(G, Process(g, h));
  EXPECT_NEAR(V(1, 3), 1.0 + 0.5 + 0.3 + 0.1, 1e-14);
  EXPECT_NEAR(V(2, 5), 1.0 + 1.0 + 0.5 - 0.2, 1e-14);
  EXPECT_NEAR(V(2, 0), 2.0, 1e-14);  // constant extrapolation on the left
}

TEST(PsiVForward, IsEllTimesSpatialDerivative) {
  const Grid g(0.0, 1.0, 21, 1.0, 2);
  const Field V = Field::tabulate(g, [](double, double x) { return x * x; });
  const Field psi = psiV_forward(V, Process::constant(g, -2.0));
  EXPECT_NEAR(psi(1, 10), -2.0 * 2.0 * g.x(10), 1e-12);
}
