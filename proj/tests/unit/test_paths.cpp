#include <gtest/gtest.h>

#include <cmath>

#include "sburgers/paths/brownian.hpp"
#include "sburgers/paths/counter_rng.hpp"
#include "sburgers/paths/increment_residual.hpp"

using namespace sburgers;

TEST(Philox, KnownAnswerVectors) {
  const Philox4x32Counter zero = philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(zero, (Philox4x32Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  const Philox4x32Counter ones =
      philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(ones, (Philox4x32Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  const Philox4x32Counter pi =
      philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(pi, (Philox4x32Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(NormalQuantile, InvertsDistributionFunction) {
  for (double p : {1e-300, 1e-20, 1e-8, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.9, 0.975, 0.999, 1.0 - 1e-12}) {
    const double z = normal_quantile(p);
    const double back = 0.5 * std::erfc(-z / std::sqrt(2.0));
    EXPECT_NEAR(back / p, 1.0, 1e-13) << "p=" << p;
  }
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-14);
  EXPECT_THROW(normal_quantile(0.0), DomainError);
  EXPECT_THROW(normal_quantile(1.0), DomainError);
}

TEST(UniformOpen, StaysInsideUnitInterval) {
  for (std::uint64_t k = 0; k < 10000; ++k) {
    const double u = uniform_open(7, 3, k);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(BrownianPath, IncrementsSumToTerminalValueExactly) {
  const Grid g(0.0, 1.0, 3, 1.0, 1000);
  const BrownianPath p = make_brownian_path(11, 2, g);
  EXPECT_EQ(p.w[0], 0.0);
  double sum = 0.0;
  for (Index k = 0; k < g.nt(); ++k) {
    EXPECT_EQ(p.w[k + 1] - p.w[k], p.dw[k]);
    sum += p.dw[k];
  }
  EXPECT_EQ(p.w[g.nt()], sum);
}

TEST(BrownianPath, DeterministicPerKeyAndDistinctAcrossStreams) {
  const Grid g(0.0, 1.0, 3, 1.0, 64);
  const BrownianPath a = make_brownian_path(5, 9, g);
  const BrownianPath b = make_brownian_path(5, 9, g);
  const BrownianPath c = make_brownian_path(5, 10, g);
  const BrownianPath d = make_brownian_path(6, 9, g);
  EXPECT_TRUE(a.w == b.w);
  EXPECT_FALSE(a.w == c.w);
  EXPECT_FALSE(a.w == d.w);
}

TEST(BrownianPath, TerminalVarianceAndMean) {
  const Grid g(0.0, 1.0, 3, 1.0, 4);
  const Index N = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (Index i = 0; i < N; ++i) {
    const double w = make_brownian_path(2024, static_cast<std::uint64_t>(i), g).w[g.nt()];
    sum += w;
    sum2 += w * w;
  }
  const double mean = sum / double(N);
  const double var = sum2 / double(N) - mean * mean;
  EXPECT_LE(std::fabs(mean), 3.0 * std::sqrt(g.horizon() / double(N)));
  EXPECT_GE(var, 0.99);
  EXPECT_LE(var, 1.01);
}

TEST(ItoIntegral, ConstantIntegrandsReproduceScaledPath) {
  const Grid g(0.0, 1.0, 3, 2.0, 500);
  const BrownianPath p = make_brownian_path(1, 1, g);
  const Process one = Process::constant(g, 1.0);
  const Process h = ito_integral(one, p);
  for (Index k = 0; k <= g.nt(); ++k) EXPECT_EQ(h[k], p.w[k]);
  const Process h2 = ito_integral(Process::constant(g, -2.0), p);
  for (Index k = 0; k <= g.nt(); ++k) EXPECT_EQ(h2[k], -2.0 * p.w[k]);
  EXPECT_EQ((*h2.psi())[3], -2.0);
}

TEST(ItoIntegral, GridMismatchThrows) {
  const Grid g(0.0, 1.0, 3, 1.0, 10);
  const BrownianPath p = make_brownian_path(1, 1, g);
  EXPECT_THROW(ito_integral(Process::constant(g.with_time_steps(20), 1.0), p), GridMismatch);
}

TEST(ItoIntegral, LeftPointSumOfWdWMatchesItoIdentity) {
  const Grid g(0.0, 1.0, 3, 1.0, 200000);
  const BrownianPath p = make_brownian_path(3, 0, g);
  const Process h = ito_integral(Process(g, p.w), p);
  const double expected = 0.5 * (p.w[g.nt()] * p.w[g.nt()] - g.horizon());
  EXPECT_NEAR(h[g.nt()], expected, 1e-2);
}

TEST(CoarsenPath, CompositionEqualsProductFactor) {
  const Grid g(0.0, 1.0, 3, 1.0, 48);
  const BrownianPath p = make_brownian_path(4, 4, g);
  const BrownianPath ab = coarsen_path(coarsen_path(p, 2), 3);
  const BrownianPath direct = coarsen_path(p, 6);
  EXPECT_TRUE(ab.w == direct.w);
  EXPECT_TRUE(ab.dw == direct.dw);
  EXPECT_EQ(ab.grid, direct.grid);
  EXPECT_THROW(coarsen_path(p, 5), ConfigurationError);
}

TEST(CoarsenPath, CoarseIncrementsAreBlockSums) {
  const Grid g(0.0, 1.0, 3, 1.0, 12);
  const BrownianPath p = make_brownian_path(8, 1, g);
  const BrownianPath c = coarsen_path(p, 4);
  for (Index k = 0; k < 3; ++k) {
    EXPECT_EQ(c.dw[k], p.dw[4 * k] + p.dw[4 * k + 1] + p.dw[4 * k + 2] + p.dw[4 * k + 3]);
  }
}

TEST(IncrementResidual, ExactSemimartingaleHasFirstOrderResidual) {
  // F = exp(W - t/2) has A = 0, Psi = F, Psi^Psi = F.
  std::vector<double> res;
  for (Index nt : {1000, 4000}) {
    const Grid g(0.0, 1.0, 3, 1.0, nt);
    const BrownianPath p = make_brownian_path(17, 0, g);
    Matrix<double> F(nt + 1, 1), A = Matrix<double>::Zero(nt + 1, 1);
    for (Index n = 0; n <= nt; ++n) F(n, 0) = std::exp(p.w[n] - 0.5 * g.t(n));
    res.push_back(increment_residual(F, A, F, &F, p, Window{0, 0}).max_abs);
  }
  EXPECT_LT(res[1], res[0]);
  EXPECT_LT(res[1], 5e-3);
}
