#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "sburgers/burgers/residuals.hpp"
#include "sburgers/closedform/scenario.hpp"
#include "sburgers/colehopf/constraints.hpp"
#include "sburgers/colehopf/point_transform.hpp"
#include "sburgers/colehopf/transform.hpp"

using namespace sburgers;

namespace {

// f1 = sin(x) for the first family, f2 = 2 + sin(2x) for the second.
Profile family_profile(const Grid& g, int family) {
  const double shift = family == 1 ? 0.0 : 2.0, k = family == 1 ? 1.0 : 2.0;
  return sample_profile(
      g, [=](double x) { return shift + std::sin(k * x); }, [=](double x) { return k * std::cos(k * x); },
      [=](double x) { return -k * k * std::sin(k * x); });
}

BrownianPath on_space_grid(BrownianPath path, Index nx) {
  path.grid = path.grid.with_space_nodes(nx);
  return path;
}

// Same Brownian path at two resolutions: (nx, nt) and (2 nx - 1, 4 nt).
std::pair<BrownianPath, BrownianPath> path_pair(Index nx, Index nt, std::uint64_t stream) {
  const Grid fine(-1.0, 1.0, 2 * nx - 1, 0.5, 4 * nt);
  const BrownianPath f = make_brownian_path(1, stream, fine);
  return {on_space_grid(coarsen_path(f, 4), nx), f};
}

FamilyScenario scenario(int family, const BrownianPath& path, double m_shift = 0.0) {
  const Profile p = family_profile(path.grid, family);
  FamilyOptions opts;
  opts.m_shift = m_shift;
  return build_family_scenario(family, p, SigmaModel{1.0, 0.2}, path, opts);
}

double window_max_abs(const Matrix<double>& a, const Grid& g) {
  const Window w = reporting_window(g, 0.2);
  return a.block(0, w.begin, a.rows(), w.size()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(ForwardTransform, IsGaugeInvariant) {
  const Grid g(-2.0, 2.0, 81, 1.0, 4);
  const Field V = Field::tabulate(g, [](double t, double x) { return 2.0 + std::cos(x + t); });
  const Field U = forward_transform(V);
  const Field scaled = forward_transform(Field(g, 3.7 * V.values()));
  EXPECT_LT((U.values() - scaled.values()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ForwardTransform, NonPositiveNodeIsNamed) {
  const Grid g(0.0, 1.0, 11, 1.0, 2);
  Matrix<double> v = Matrix<double>::Ones(3, 11);
  v(1, 4) = -0.5;
  try {
    forward_transform(Field(g, v));
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("x=0.4"), std::string::npos) << e.what();
  }
}

TEST(GeneralizedTransform, MatchesClosedFormForBothFamilies) {
  const Grid g(-1.0, 1.0, 401, 0.5, 50);
  const BrownianPath path = make_brownian_path(2, 2, g);
  const FamilyScenario one = scenario(1, path);
  const FamilyScenario two = scenario(2, path);
  Matrix<double> e1(g.nt() + 1, g.nx()), e2(g.nt() + 1, g.nx());
  for (Index n = 0; n <= g.nt(); ++n) {
    const double s = one.sigma[n];
    for (Index i = 0; i < g.nx(); ++i) {
      const double x = g.x(i);
      e1(n, i) = one.U.U(n, i) - (-std::cos(x) * path.w[n] - std::sin(x) / s);
      e2(n, i) = two.U.U(n, i) - (-2.0 * std::cos(2.0 * x) / (2.0 + std::sin(2.0 * x)) - 1.0 / s);
    }
  }
  EXPECT_LT(window_max_abs(e1, g), 1e-4);
  EXPECT_LT(window_max_abs(e2, g), 1e-4);
  const Field plain = generalized_transform(one.V.value, one.V.psi, one.sigma);
  EXPECT_LT((plain.values() - one.U.U.values()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GeneralizedTransform, ExplicitPsiUAgreesWithJetPropagation) {
  const Grid g(-1.0, 1.0, 101, 0.5, 20);
  const BrownianPath path = make_brownian_path(5, 1, g);
  for (int family : {1, 2}) {
    const FamilyScenario sc = scenario(family, path);
    const Field explicit_psi = psiU_from_V(sc.V, sc.sigma);
    EXPECT_LT((explicit_psi.values() - sc.U.psi_U.values()).cwiseAbs().maxCoeff(), 1e-10) << "family " << family;
    ASSERT_TRUE(sc.U.psi_psi_U.has_value());
  }
}

TEST(GeneralizedTransform, PsiUMatchesClosedFormWithRandomSigma) {
  // Second family: U = -f'/f - 1/s, so Psi^U = Psi^s / s^2 = nu / s.
  const Grid g(-1.0, 1.0, 201, 0.5, 20);
  const BrownianPath path = make_brownian_path(5, 4, g);
  const FamilyScenario sc = scenario(2, path);
  Matrix<double> err(g.nt() + 1, g.nx());
  for (Index n = 0; n <= g.nt(); ++n) {
    for (Index i = 0; i < g.nx(); ++i) err(n, i) = sc.U.psi_U(n, i) - 0.2 / sc.sigma[n];
  }
  EXPECT_LT(window_max_abs(err, g), 1e-5);
}

TEST(GeneralizedTransform, MissingSecondLevelIsReported) {
  const Grid g(-1.0, 1.0, 21, 0.5, 4);
  const Field one = Field::constant(g, 1.0);
  const Semimartingale V(one, Field::constant(g, 0.0), one);
  EXPECT_THROW(psiU_from_V(V, Process::constant(g, 1.0)), MissingParts);
  EXPECT_THROW(generalized_transform_jet(V, Process::constant(g, 1.0)), MissingParts);
}

TEST(TerminalCompatibility, ConstantProfilesAreCompatible) {
  const Grid g(-1.0, 1.0, 101, 1.0, 1);
  const double sigma = -0.7, alpha = 0.6, beta = 1.8, wT = 0.83;
  const Eigen::VectorXd q1 = Eigen::VectorXd::Constant(g.nx(), std::exp(alpha * wT));
  EXPECT_LE(terminal_compatibility_residual(Eigen::VectorXd::Constant(g.nx(), -alpha / sigma), q1, alpha * q1, sigma, g),
            1e-10);
  const Eigen::VectorXd q2 = Eigen::VectorXd::Constant(g.nx(), beta * std::exp(wT));
  EXPECT_LE(terminal_compatibility_residual(Eigen::VectorXd::Constant(g.nx(), -1.0 / sigma), q2, q2, sigma, g), 1e-10);
  EXPECT_GT(terminal_compatibility_residual(Eigen::VectorXd::Zero(g.nx()), q2, q2, sigma, g), 1.0);
}

TEST(PointTransform, PdeResidualVanishesAtRandomPoints) {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> mag(0.2, 2.0);
  for (int k = 0; k < 1000; ++k) {
    const double s = mag(rng) * (u(rng) < 0 ? -1.0 : 1.0);
    const double y = mag(rng) * (u(rng) < 0 ? -1.0 : 1.0);
    const double z = u(rng), h = u(rng), x = u(rng);
    const double Y = point_transform_Y(s, y, z);
    const double scale = 1.0 + std::pow(std::fabs(Y) + std::fabs(h / (s * y)), 3) * s * s;
    EXPECT_LE(std::fabs(point_transform_pde_residual(s, x, y, z, h)), 1e-10 * scale);
  }
  EXPECT_THROW(point_transform_Y(0.0, 1.0, 1.0), SingularityError);
  EXPECT_THROW(point_transform_Y(1.0, 0.0, 1.0), SingularityError);
}

TEST(PointTransform, ZIsTheDifferentialOfY) {
  const double s = 0.9, y = 1.3, z = -0.4, h = 0.25, eps = 1e-6;
  const double Yy = (point_transform_Y(s, y + eps, z) - point_transform_Y(s, y - eps, z)) / (2 * eps);
  const double Yz = (point_transform_Y(s, y, z + eps) - point_transform_Y(s, y, z - eps)) / (2 * eps);
  EXPECT_NEAR(point_transform_z(s, y, z, h), z * Yy + h * Yz, 1e-8);
}

TEST(PointTransform, GeneralFormReducesWithZeroKernel) {
  const Grid g(-1.0, 1.0, 21, 1.0, 4);
  const Field zero = Field::constant(g, 0.0);
  const TransformKernel k{Semimartingale(zero, zero, zero), Process::constant(g, -1.4)};
  EXPECT_NEAR(eval_general_Y(k, 2, 0.3, 0.8, 0.5), point_transform_Y(-1.4, 0.8, 0.5), 1e-15);
  const Field r = Field::constant(g, 2.0);
  const TransformKernel singular{Semimartingale(r, zero, zero), Process::constant(g, 1.0)};
  EXPECT_THROW(eval_general_Y(singular, 1, 0.0, 2.0, 0.5), SingularityError);
}

TEST(RKernelEquation, ResidualDecaysForSolutionOnly) {
  // With m = c = 0 and constant sigma, r = sin(x) exp(sigma^2 t / 2) solves the kernel equation.
  std::vector<double> good, bad;
  for (auto [nx, nt] : {std::pair<Index, Index>{41, 100}, {81, 400}}) {
    const Grid g(-1.0, 1.0, nx, 0.5, nt);
    const BrownianPath path = make_brownian_path(1, 1, g);
    const double s = 0.8;
    const Process sigma = Process::constant(g, s);
    const CoefficientSet cs = build_backward_coefficients(sigma, CoefficientField::zero(g), CoefficientField::zero(g));
    const Field zero = Field::constant(g, 0.0);
    const Field r = Field::tabulate(g, [s](double t, double x) { return std::sin(x) * std::exp(0.5 * s * s * t); });
    good.push_back(residual_r_bspde(TransformKernel{Semimartingale(r, zero, zero), sigma}, cs, path).max_abs);
    const Field wrong = Field::tabulate(g, [](double, double x) { return std::sin(x); });
    bad.push_back(residual_r_bspde(TransformKernel{Semimartingale(wrong, zero, zero), sigma}, cs, path).max_abs);
  }
  EXPECT_GT(good[0] / good[1], 2.83);
  EXPECT_LT(good[0] / good[1], 5.66);
  EXPECT_LT(bad[0] / bad[1], 1.5);
  EXPECT_GT(bad[1], 0.05);
}

TEST(FamilyResiduals, DecayUnderRefinementAndControlDoesNot) {
  // Root mean square over paths of the per-path maxima, at (21, 1600) and (41, 6400).
  for (int family : {1, 2}) {
    std::array<std::array<double, 2>, 5> sq{};
    for (std::uint64_t stream = 0; stream < 4; ++stream) {
      const auto [coarse, fine] = path_pair(21, 1600, stream);
      for (int level = 0; level < 2; ++level) {
        const BrownianPath& path = level == 0 ? coarse : fine;
        const FamilyScenario sc = scenario(family, path);
        const Field zero = Field::constant(path.grid, 0.0);
        const TransformKernel k{Semimartingale(zero, zero, zero, zero, zero), sc.sigma};
        const FamilyScenario neg = scenario(family, path, 0.5);
        const std::array<double, 5> r{
            residual_backward_heat(sc.V, sc.coeffs, path).max_abs,
            residual_mid_constraint(sc.V, sc.coeffs, path).max_abs,
            residual_backward_burgers(sc.U.U, sc.U.psi_U, sc.U.psi_psi_U, sc.coeffs, path).max_abs,
            residual_big_constraint(k, sc.V, sc.coeffs, path),
            residual_backward_heat(neg.V, neg.coeffs, path).max_abs};
        for (std::size_t q = 0; q < r.size(); ++q) sq[q][level] += r[q] * r[q];
      }
    }
    for (std::size_t q = 0; q < 4; ++q) {
      const double ratio = std::sqrt(sq[q][0] / sq[q][1]);
      EXPECT_GT(ratio, 2.83) << "family " << family << " residual " << q;
      EXPECT_LT(ratio, 5.66) << "family " << family << " residual " << q;
    }
    EXPECT_LT(std::sqrt(sq[4][0] / sq[4][1]), 1.5) << "family " << family;
  }
}
