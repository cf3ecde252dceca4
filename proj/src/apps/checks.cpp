#include "sburgers/apps/checks.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "sburgers/apps/io.hpp"
#include "sburgers/apps/reports.hpp"
#include "sburgers/burgers/residuals.hpp"
#include "sburgers/colehopf/constraints.hpp"
#include "sburgers/colehopf/point_transform.hpp"
#include "sburgers/core/stencil.hpp"
#include "sburgers/fbsde/feynman_kac.hpp"
#include "sburgers/heat/heat_solver.hpp"
#include "sburgers/paths/counter_rng.hpp"

namespace sburgers {

namespace {

// Stream ids of independent random inputs that are not Brownian paths.
constexpr std::uint64_t kPointStream = std::uint64_t(1) << 40;
constexpr std::uint64_t kSecondEstimatorSeed = 0x9e3779b97f4a7c15ull;

CheckResult timed(int id, const std::string& name, double budget, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.id = id;
  r.name = name;
  r.budget_seconds = budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const ConfigurationError&) {
    throw;
  } catch (const Error& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// The same Brownian path on `levels + 1` lattices, coarsest first. Level l has
/// (nx-1) space_factor^l + 1 nodes and nt time_factor^l steps.
std::vector<BrownianPath> refined_paths(const GridSpec& spec, Index levels, Index space_factor, Index time_factor,
                                        std::uint64_t seed, std::uint64_t stream) {
  Index sf = 1, tf = 1;
  for (Index l = 0; l < levels; ++l) {
    sf *= space_factor;
    tf *= time_factor;
  }
  const Grid finest(spec.x_min, spec.x_max, (spec.nx - 1) * sf + 1, spec.horizon, spec.nt * tf);
  const BrownianPath top = make_brownian_path(seed, stream, finest);
  std::vector<BrownianPath> out;
  Index s = 1;
  for (Index l = 0; l <= levels; ++l) {
    BrownianPath p = tf == 1 ? top : coarsen_path(top, tf);
    p.grid = p.grid.with_space_nodes((spec.nx - 1) * s + 1);
    out.push_back(std::move(p));
    s *= space_factor;
    tf /= time_factor;
  }
  return out;
}

bool in_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::string family_key(int family) { return "family" + std::to_string(family); }

Profile constant_profile(const Grid& g, double value) {
  return sample_profile(g, Eigen::VectorXd::Constant(g.nx(), value));
}

void add(CheckResult& r, const std::string& key, double value) { r.metrics.emplace_back(key, value); }

void fail(CheckResult& r, const std::string& why) {
  r.passed = false;
  if (!r.detail.empty()) r.detail += "; ";
  r.detail += why;
}

}  // namespace

CheckResult check_forward_cross_validation(const ScenarioConfig& config, Artifacts* artifacts) {
  return timed(1, "forward_cross_validation", 60.0, [&](CheckResult& r) {
    const ForwardConfig& fc = config.forward;
    r.passed = true;
    double worst = 0.0, mean = 0.0, min_shrink = INFINITY;
    for (Index p = 0; p < fc.paths; ++p) {
      const auto paths = refined_paths(fc.grid, config.refine_levels, 2, 4, config.seed, std::uint64_t(p));
      std::vector<double> gaps;
      ForwardConfig level_cfg = fc;
      for (std::size_t l = 0; l < paths.size(); ++l) {
        ForwardComparison cmp = compare_forward_routes(level_cfg, paths[l]);
        gaps.push_back(cmp.l2_gap);
        if (artifacts && p == 0 && l == 0) {
          artifacts->fields.emplace_back("forward_U_direct", std::move(cmp.U_direct));
          artifacts->fields.emplace_back("forward_U_heat", std::move(cmp.U_heat));
        }
        level_cfg.output_stride *= 4;
      }
      worst = std::max(worst, gaps[0]);
      mean += gaps[0] / double(fc.paths);
      if (gaps[0] > fc.max_gap) fail(r, "path " + std::to_string(p) + " gap " + format_real(gaps[0]));
      for (std::size_t l = 0; l + 1 < gaps.size(); ++l) {
        const double shrink = gaps[l] / gaps[l + 1];
        min_shrink = std::min(min_shrink, shrink);
        if (shrink < fc.min_shrink) fail(r, "path " + std::to_string(p) + " shrink " + format_real(shrink));
      }
    }
    add(r, "l2_relative_error", worst);
    add(r, "mean_l2_relative_error", mean);
    add(r, "min_shrink", min_shrink);
  });
}

CheckResult check_point_transform(const ScenarioConfig& config) {
  return timed(2, "point_transform_identity", 1.0, [&](CheckResult& r) {
    const PointTransformConfig& pc = config.point_transform;
    std::uint64_t k = 0;
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * uniform_open(config.seed, kPointStream, k++); };
    auto signed_magnitude = [&]() {
      const double m = uniform(pc.min_abs, pc.max_abs);
      return uniform(0.0, 1.0) < 0.5 ? -m : m;
    };
    double worst = 0.0;
    for (Index i = 0; i < pc.points; ++i) {
      const double s = signed_magnitude(), y = signed_magnitude();
      const double x = uniform(-pc.max_abs, pc.max_abs), z = uniform(-pc.max_abs, pc.max_abs);
      const double h = uniform(-pc.max_abs, pc.max_abs);
      worst = std::max(worst, std::fabs(point_transform_pde_residual(s, x, y, z, h)));
    }
    add(r, "max_residual", worst);
    add(r, "points", double(pc.points));
    r.passed = worst <= pc.tolerance;
    if (!r.passed) r.detail = "residual above tolerance";
  });
}

CheckResult check_generalized_transform(const ScenarioConfig& config, Artifacts* artifacts) {
  return timed(3, "generalized_transform", 120.0, [&](CheckResult& r) {
    const BackwardConfig& bc = config.backward;
    r.passed = true;
    const std::size_t levels = std::size_t(config.refine_levels) + 1;
    const char* names[] = {"ikwg", "mid_constraint", "burgers", "control"};
    for (const FamilySpec& fam : bc.families) {
      // Sum of squared per-path maxima, per residual and level.
      std::vector<std::array<double, 4>> sq(levels, {0.0, 0.0, 0.0, 0.0});
      for (Index p = 0; p < bc.paths; ++p) {
        const auto paths = refined_paths(bc.grid, config.refine_levels, 2, 4, config.seed, std::uint64_t(p));
        for (std::size_t l = 0; l < levels; ++l) {
          const BrownianPath& path = paths[l];
          const Profile profile = make_profile(fam.profile, path.grid);
          const FamilyScenario sc = build_family_scenario(fam.family, profile, bc.sigma, path);
          FamilyOptions neg_opts;
          neg_opts.m_shift = bc.control_m_shift;
          const FamilyScenario neg = build_family_scenario(fam.family, profile, bc.sigma, path, neg_opts);
          const std::array<double, 4> v{
              residual_backward_heat(sc.V, sc.coeffs, path).max_abs,
              residual_mid_constraint(sc.V, sc.coeffs, path).max_abs,
              residual_backward_burgers(sc.U.U, sc.U.psi_U, sc.U.psi_psi_U, sc.coeffs, path).max_abs,
              residual_backward_heat(neg.V, neg.coeffs, path).max_abs};
          for (std::size_t q = 0; q < 4; ++q) sq[l][q] += v[q] * v[q];
          if (artifacts && p == 0 && l == 0) {
            artifacts->fields.emplace_back(family_key(fam.family) + "_U", sc.U.U);
            artifacts->fields.emplace_back(family_key(fam.family) + "_psi_U", sc.U.psi_U);
            artifacts->fields.emplace_back(family_key(fam.family) + "_V", sc.V.value);
          }
        }
      }
      for (std::size_t q = 0; q < 4; ++q) {
        add(r, family_key(fam.family) + "." + names[q] + "_rms", std::sqrt(sq[0][q] / double(bc.paths)));
        for (std::size_t l = 0; l + 1 < levels; ++l) {
          const double ratio = std::sqrt(sq[l][q] / sq[l + 1][q]);
          const std::string key = family_key(fam.family) + "." + names[q] + "_ratio" + (l ? std::to_string(l) : "");
          add(r, key, ratio);
          const bool ok = q < 3 ? in_band(ratio, bc.rate_low, bc.rate_high) : ratio <= bc.control_max_ratio;
          if (!ok) fail(r, key + "=" + format_real(ratio));
        }
      }
    }
  });
}

CheckResult check_terminal_compatibility(const ScenarioConfig& config) {
  return timed(4, "terminal_compatibility", 0.0, [&](CheckResult& r) {
    const ConstantScenarioConfig& k = config.constants;
    const Grid g = config.applications.grid.make();
    const BrownianPath path = make_brownian_path(config.seed, 0, g);
    const Index nt = g.nt();
    double worst = 0.0;
    for (int family : {1, 2}) {
      const double sigma = family == 1 ? k.sigma_1 : k.sigma_2;
      const double param = family == 1 ? k.alpha : k.beta;
      const FinanceParameters fp = finance_parameters(family, param, sigma);
      FamilyOptions opts;
      opts.pinned_m = fp.m;
      const FamilyScenario sc =
          build_family_scenario(family, constant_profile(g, param), SigmaModel{sigma, 0.0}, path, opts);
      const Eigen::VectorXd p = Eigen::VectorXd::Constant(g.nx(), fp.p);
      const double res = terminal_compatibility_residual(p, sc.V.value.slice(nt), sc.V.psi.slice(nt), sigma, g);
      add(r, family_key(family) + ".residual", res);
      add(r, family_key(family) + ".p", fp.p);
      worst = std::max(worst, res);
    }
    r.passed = worst <= k.tolerance;
    if (!r.passed) r.detail = "residual above tolerance";
  });
}

CheckResult check_fk_forward(const ScenarioConfig& config) {
  return timed(5, "feynman_kac_forward", 30.0, [&](CheckResult& r) {
    const FkForwardConfig& f = config.fk_forward;
    const double lambda = f.lambda;
    const auto q = [=](double y) { return std::exp(lambda * y); };
    const auto qx = [=](double y) { return lambda * std::exp(lambda * y); };
    const ForwardFkResult mc = fk_forward_estimate(f.t, f.x, q, qx, f.k, f.sigma, f.c_bar, f.samples, config.seed);
    const double oracle =
        std::exp(-f.c_bar * f.t + lambda * (f.x + f.k * f.t) + 0.5 * lambda * lambda * f.sigma * f.sigma * f.t);

    const Grid g = f.pde_grid.make();
    Eigen::VectorXd q0(g.nx());
    for (Index i = 0; i < g.nx(); ++i) q0[i] = q(g.x(i));
    const HeatProblem heat{g,
                           q0,
                           Process::constant(g, f.sigma),
                           CoefficientField::constant(g, f.k),
                           CoefficientField::constant(g, f.c_bar),
                           Process::constant(g, 0.0),
                           {}};
    const Field G = solve_pathwise_heat(heat, HeatOptions{HeatBoundary::LogNeumann, g.nt()});
    const double pde = interpolate_at<double>(G.slice(1), G.grid(), f.x);

    add(r, "mc", mc.G.value);
    add(r, "std_error", mc.G.std_error);
    add(r, "oracle", oracle);
    add(r, "pde", pde);
    add(r, "oracle_z", (mc.G.value - oracle) / mc.G.std_error);
    r.passed = true;
    if (std::fabs(mc.G.value - oracle) > 3.0 * mc.G.std_error) fail(r, "MC outside 3 std errors of the oracle");
    if (std::fabs(mc.G.value - pde) > 3.0 * mc.G.std_error + f.pde_tolerance) fail(r, "MC and PDE disagree");
  });
}

CheckResult check_fk_backward(const ScenarioConfig& config) {
  return timed(6, "feynman_kac_backward", 60.0, [&](CheckResult& r) {
    const FkBackwardConfig& b = config.fk_backward;
    const ConstantScenarioConfig& k = config.constants;
    const Grid g(-1.0, 1.0, 3, b.horizon, b.nt);
    const auto zero = [](double, double, double) { return 0.0; };
    r.passed = true;

    const double beta = k.beta;
    const auto q2 = [=](double, double, double w) { return beta * std::exp(w); };
    const McEstimate y2 = fk_backward_y(0, b.x, q2, zero, Process::constant(g, k.sigma_2), b.samples, config.seed);
    const double y2_exact = beta * std::exp(0.5 * b.horizon);
    add(r, "family2.y", y2.value);
    add(r, "family2.y_exact", y2_exact);
    add(r, "family2.y_std_error", y2.std_error);
    if (std::fabs(y2.value - y2_exact) > 3.0 * y2.std_error) fail(r, "family 2 y outside 3 std errors");

    // First family with m = 0 pinned, so c = alpha^2 / 2 and U = -alpha / sigma.
    const double alpha = k.alpha, s1 = k.sigma_1;
    const Process sigma1 = Process::constant(g, s1);
    const auto q1 = [=](double, double, double w) { return std::exp(alpha * w); };
    const auto c1 = [=](double, double, double) { return 0.5 * alpha * alpha; };
    const auto p1 = [=](double, double, double) { return -alpha / s1; };
    const McEstimate y1 = fk_backward_y(0, b.x, q1, c1, sigma1, b.samples, config.seed);
    const BackwardFkProblem prob{sigma1, p1, q1, c1, zero, std::nullopt, b.inner_batch};
    const McEstimate z1 = fk_backward_z(0, b.x, prob, b.samples, config.seed ^ kSecondEstimatorSeed);
    const double u = -z1.value / (s1 * y1.value);
    const double u_se = std::fabs(u) * std::hypot(z1.std_error / z1.value, y1.std_error / y1.value);
    add(r, "family1.y", y1.value);
    add(r, "family1.z", z1.value);
    add(r, "family1.U", u);
    add(r, "family1.U_exact", -alpha / s1);
    add(r, "family1.U_std_error", u_se);
    if (std::fabs(u + alpha / s1) > 3.0 * u_se) fail(r, "family 1 -z/(sigma y) outside 3 std errors");
  });
}

namespace {

struct TripletPair {
  FamilyScenario sc;
  FbsdeTriplet heat;
  FbsdeTriplet burgers;
};

TripletPair constant_triplets(int family, double param, const SigmaModel& sigma, const BrownianPath& path) {
  FamilyScenario sc = build_family_scenario(family, constant_profile(path.grid, param), sigma, path);
  const Eigen::VectorXd x = simulate_forward_state(0.0, sc.sigma, nullptr, path);
  const Semimartingale U(sc.U.U, Field::constant(path.grid, 0.0), sc.U.psi_U, std::nullopt, sc.U.psi_psi_U);
  FbsdeTriplet heat = markovian_triplet(sc.V, sc.sigma, x, path);
  FbsdeTriplet burgers = markovian_triplet(U, sc.sigma, x, path);
  return {std::move(sc), std::move(heat), std::move(burgers)};
}

double coefficient_at(const CoefficientField& c, const BrownianPath& path, Index n, double x) {
  return interpolate_at<double>(c.slice(n, path.w[n]), path.grid, x);
}

}  // namespace

CheckResult check_fbsde(const ScenarioConfig& config) {
  return timed(7, "fbsde_triplets", 0.0, [&](CheckResult& r) {
    const FbsdeConfig& fc = config.fbsde;
    const std::size_t levels = std::size_t(config.refine_levels) + 1;
    r.passed = true;
    double worst_gap = 0.0;
    for (int family : {1, 2}) {
      const double param = family == 1 ? fc.alpha : fc.beta;
      std::vector<double> heat(levels, 0.0), burgers(levels, 0.0);
      for (Index p = 0; p < fc.paths; ++p) {
        const auto paths = refined_paths(fc.grid, config.refine_levels, 1, 2, config.seed, std::uint64_t(p));
        for (std::size_t l = 0; l < levels; ++l) {
          const BrownianPath& path = paths[l];
          const TripletPair tp = constant_triplets(family, param, fc.sigma, path);
          const FamilyScenario& sc = tp.sc;
          const Driver heat_driver = [&](Index n, double, double x, double y, double z) {
            return coefficient_at(sc.coeffs.c, path, n, x) * y + coefficient_at(sc.coeffs.d, path, n, x) * z;
          };
          const Driver burgers_driver = [&](Index n, double, double x, double y, double z) {
            return sc.sigma[n] * y * z + coefficient_at(sc.coeffs.e, path, n, x) * y +
                   coefficient_at(sc.coeffs.m, path, n, x) * z + coefficient_at(sc.coeffs.f, path, n, x);
          };
          const double rh = bsde_residual(tp.heat, heat_driver).max_abs;
          const double rb = bsde_residual(tp.burgers, burgers_driver).max_abs;
          heat[l] += rh * rh;
          burgers[l] += rb * rb;
          worst_gap = std::max(worst_gap, point_transform_identity_gap(tp.burgers, tp.heat, sc.sigma));
        }
      }
      for (std::size_t l = 0; l + 1 < levels; ++l) {
        const std::string suffix = l ? std::to_string(l) : "";
        const double rh = std::sqrt(heat[l] / heat[l + 1]);
        const double rb = std::sqrt(burgers[l] / burgers[l + 1]);
        add(r, family_key(family) + ".heat_ratio" + suffix, rh);
        add(r, family_key(family) + ".burgers_ratio" + suffix, rb);
        if (!in_band(rh, fc.rate_low, fc.rate_high)) fail(r, family_key(family) + " heat ratio " + format_real(rh));
        if (!in_band(rb, fc.rate_low, fc.rate_high)) fail(r, family_key(family) + " burgers ratio " + format_real(rb));
      }
      add(r, family_key(family) + ".heat_rms", std::sqrt(heat[0] / double(fc.paths)));
      add(r, family_key(family) + ".burgers_rms", std::sqrt(burgers[0] / double(fc.paths)));
    }
    add(r, "max_identity_gap", worst_gap);
    if (worst_gap > fc.identity_tolerance) fail(r, "identity gap " + format_real(worst_gap));
  });
}

CheckResult check_controllability(const ScenarioConfig& config, Artifacts* artifacts) {
  return timed(8, "controllability", 0.0, [&](CheckResult& r) {
    const ConstantScenarioConfig& k = config.constants;
    const ApplicationsConfig& ac = config.applications;
    const Grid g = ac.grid.make();
    const BrownianPath path = make_brownian_path(config.seed, 0, g);
    r.passed = true;
    for (int family : {1, 2}) {
      const double sigma = family == 1 ? k.sigma_1 : k.sigma_2;
      const double param = family == 1 ? k.alpha : k.beta;
      const FinanceParameters fp = finance_parameters(family, param, sigma);
      FamilyOptions opts;
      opts.pinned_m = fp.m;
      const FamilySpec spec{family, ProfileSpec{"sin", param, 0.0, 1.0, {}}};
      const ControllabilityReport rep = controllability_report(spec, SigmaModel{sigma, 0.0}, path, opts);
      const double p0_err = (rep.p0.array() - fp.p).abs().maxCoeff();
      const double u1 = rep.control_u1.values().cwiseAbs().maxCoeff();
      const double u2 = rep.control_u2.values().cwiseAbs().maxCoeff();
      const std::string key = family_key(family);
      add(r, key + ".terminal_gap", rep.terminal_gap);
      add(r, key + ".p0", rep.p0[g.nx() / 2]);
      add(r, key + ".p0_error", p0_err);
      add(r, key + ".max_u1", u1);
      add(r, key + ".max_u2", u2);
      if (rep.terminal_gap > ac.gap_tolerance) fail(r, key + " terminal gap " + format_real(rep.terminal_gap));
      if (p0_err > ac.gap_tolerance) fail(r, key + " p0 differs from " + format_real(fp.p));
      if (u1 > ac.gap_tolerance || u2 > ac.gap_tolerance) fail(r, key + " controls do not vanish");
      if (artifacts) {
        artifacts->series.emplace_back(key + "_p0", SeriesTable{{"x", g.nodes()}, {"p0", rep.p0}});
        artifacts->fields.emplace_back(key + "_control_u1", rep.control_u1);
        artifacts->fields.emplace_back(key + "_control_u2", rep.control_u2);
      }
    }
  });
}

CheckResult check_pricing(const ScenarioConfig& config, Artifacts* artifacts) {
  return timed(8, "pricing", 0.0, [&](CheckResult& r) {
    const ConstantScenarioConfig& k = config.constants;
    const ApplicationsConfig& ac = config.applications;
    const std::size_t levels = std::size_t(config.refine_levels) + 1;
    r.passed = true;
    auto market_for = [&](int family, double vol_of_vol) {
      const double sigma = family == 1 ? k.sigma_1 : k.sigma_2;
      const FinanceParameters fp = finance_parameters(family, family == 1 ? k.alpha : k.beta, sigma);
      MarketModel m;
      m.rate = ac.rate;
      m.sigma = sigma;
      m.mu = ac.rate + sigma * fp.m;
      m.s0 = ac.s0;
      m.vol_of_vol = vol_of_vol;
      return m;
    };

    // Constant volatility: the price is exact and the hedge vanishes.
    for (int family : {1, 2}) {
      const double param = family == 1 ? k.alpha : k.beta;
      const MarketModel market = market_for(family, 0.0);
      const double exact = finance_parameters(family, param, market.sigma).p;
      const auto paths = refined_paths(ac.grid, config.refine_levels, 1, 2, config.seed, 0);
      std::vector<double> gaps;
      for (std::size_t l = 0; l < levels; ++l) {
        const PricingReport rep = pricing_report(market, family, param, ac.x0, paths[l]);
        gaps.push_back(rep.replication_gap);
        if (l == 0) {
          const std::string key = family_key(family);
          add(r, key + ".price", rep.price_y0);
          add(r, key + ".price_exact", exact);
          add(r, key + ".max_pi", rep.hedge_pi.cwiseAbs().maxCoeff());
          if (std::fabs(rep.price_y0 - exact) > ac.gap_tolerance) fail(r, key + " price " + format_real(rep.price_y0));
          if (artifacts) {
            Eigen::VectorXd t(paths[0].grid.nt() + 1);
            for (Index n = 0; n < t.size(); ++n) t[n] = paths[0].grid.t(n);
            artifacts->series.emplace_back(key + "_pricing", SeriesTable{{"t", t},
                                                                         {"x", rep.state_x},
                                                                         {"stock", rep.stock},
                                                                         {"pi", rep.hedge_pi},
                                                                         {"wealth", rep.wealth}});
          }
        }
      }
      const std::string key = family_key(family);
      add(r, key + ".replication_gap", gaps[0]);
      for (std::size_t l = 0; l + 1 < levels; ++l) {
        const bool exact_both = gaps[l] <= ac.exact_floor && gaps[l + 1] <= ac.exact_floor;
        if (!exact_both && !(gaps[l] / gaps[l + 1] >= ac.rate_low)) fail(r, key + " replication gap does not halve");
      }
    }

    // Random volatility on the second family: the replication error is O(dt).
    std::vector<double> sq(levels, 0.0);
    for (Index p = 0; p < ac.paths; ++p) {
      const auto paths = refined_paths(ac.grid, config.refine_levels, 1, 2, config.seed, std::uint64_t(p));
      for (std::size_t l = 0; l < levels; ++l) {
        const double gap = pricing_report(market_for(2, ac.vol_of_vol), 2, k.beta, ac.x0, paths[l]).replication_gap;
        sq[l] += gap * gap;
      }
    }
    add(r, "random_sigma.gap_rms", std::sqrt(sq[0] / double(ac.paths)));
    for (std::size_t l = 0; l + 1 < levels; ++l) {
      const double ratio = std::sqrt(sq[l] / sq[l + 1]);
      add(r, std::string("random_sigma.gap_ratio") + (l ? std::to_string(l) : ""), ratio);
      if (!in_band(ratio, ac.rate_low, ac.rate_high)) fail(r, "random sigma gap ratio " + format_real(ratio));
    }
  });
}

CheckResult check_applications(const ScenarioConfig& config, Artifacts* artifacts) {
  const CheckResult a = check_controllability(config, artifacts);
  const CheckResult b = check_pricing(config, artifacts);
  CheckResult r;
  r.id = 8;
  r.name = "applications";
  r.passed = a.passed && b.passed;
  for (const auto& [key, v] : a.metrics) r.metrics.emplace_back("controllability." + key, v);
  for (const auto& [key, v] : b.metrics) r.metrics.emplace_back("pricing." + key, v);
  r.detail = a.detail + (a.detail.empty() || b.detail.empty() ? "" : "; ") + b.detail;
  r.seconds = a.seconds + b.seconds;
  return r;
}

CheckResult check_infrastructure(const ScenarioConfig& config) {
  return timed(9, "infrastructure", 0.0, [&](CheckResult& r) {
    const InfrastructureConfig& ic = config.infrastructure;
    r.passed = true;

    const Grid g = config.backward.grid.make();
    const BrownianPath a = make_brownian_path(config.seed, 3, g);
    const BrownianPath b = make_brownian_path(config.seed, 3, g);
    const FamilySpec& fam = config.backward.families.front();
    const FamilyScenario s1 = build_family_scenario(fam.family, make_profile(fam.profile, g), config.backward.sigma, a);
    const FamilyScenario s2 = build_family_scenario(fam.family, make_profile(fam.profile, g), config.backward.sigma, b);
    const auto gauss = [](double y) { return std::exp(-0.5 * y * y); };
    const auto gauss_x = [](double y) { return -y * std::exp(-0.5 * y * y); };
    const ForwardFkResult m1 = fk_forward_estimate(0.3, 0.4, gauss, gauss_x, 0.0, 1.0, 0.0, 1000, config.seed);
    const ForwardFkResult m2 = fk_forward_estimate(0.3, 0.4, gauss, gauss_x, 0.0, 1.0, 0.0, 1000, config.seed);
    const bool identical = a.w == b.w && a.dw == b.dw && s1.U.U.values() == s2.U.U.values() &&
                           m1.G.value == m2.G.value && m1.G.std_error == m2.G.std_error;
    add(r, "bit_identical", identical ? 1.0 : 0.0);
    if (!identical) fail(r, "reruns differ");

    double worst_dev = 0.0;
    for (std::uint64_t seed : ic.se_seeds) {
      const double se1 = fk_forward_estimate(0.3, 0.4, gauss, gauss_x, 0.0, 1.0, 0.0, ic.se_samples, seed).G.std_error;
      const double se4 =
          fk_forward_estimate(0.3, 0.4, gauss, gauss_x, 0.0, 1.0, 0.0, 4 * ic.se_samples, seed).G.std_error;
      const double ratio = se1 / se4;
      add(r, "se_ratio.seed" + std::to_string(seed), ratio);
      worst_dev = std::max(worst_dev, std::fabs(ratio / 2.0 - 1.0));
    }
    add(r, "max_se_ratio_deviation", worst_dev);
    if (worst_dev > ic.se_ratio_tolerance) fail(r, "std error does not halve");

    double gauge = 0.0;
    const Field U = forward_transform(s1.V.value);
    for (double lambda : {1e-3, 0.37, 3.7, 1e3}) {
      const Field scaled = forward_transform(Field(g, lambda * s1.V.value.values()));
      gauge = std::max(gauge, (scaled.values() - U.values()).cwiseAbs().maxCoeff());
    }
    add(r, "gauge_deviation", gauge);
    if (gauge > ic.gauge_tolerance) fail(r, "forward transform is not gauge invariant");
  });
}

CheckResult check_constraints(const ScenarioConfig& config) {
  return timed(0, "constraints", 0.0, [&](CheckResult& r) {
    const BackwardConfig& bc = config.backward;
    const std::size_t levels = std::size_t(config.refine_levels) + 1;
    r.passed = true;
    for (const FamilySpec& fam : bc.families) {
      std::vector<std::array<double, 3>> sq(levels, {0.0, 0.0, 0.0});
      for (Index p = 0; p < bc.paths; ++p) {
        const auto paths = refined_paths(bc.grid, config.refine_levels, 2, 4, config.seed, std::uint64_t(p));
        for (std::size_t l = 0; l < levels; ++l) {
          const BrownianPath& path = paths[l];
          const Profile profile = make_profile(fam.profile, path.grid);
          const FamilyScenario sc = build_family_scenario(fam.family, profile, bc.sigma, path);
          FamilyOptions neg_opts;
          neg_opts.m_shift = bc.control_m_shift;
          const FamilyScenario neg = build_family_scenario(fam.family, profile, bc.sigma, path, neg_opts);
          const Field zero = Field::constant(path.grid, 0.0);
          const TransformKernel kernel{Semimartingale(zero, zero, zero, zero, zero), sc.sigma};
          const std::array<double, 3> v{residual_mid_constraint(sc.V, sc.coeffs, path).max_abs,
                                        residual_big_constraint(kernel, sc.V, sc.coeffs, path),
                                        residual_mid_constraint(neg.V, neg.coeffs, path).max_abs};
          for (std::size_t q = 0; q < 3; ++q) sq[l][q] += v[q] * v[q];
        }
      }
      const char* names[] = {"mid_constraint", "algebraic_constraint", "control"};
      for (std::size_t q = 0; q < 3; ++q) {
        add(r, family_key(fam.family) + "." + names[q] + "_residual", std::sqrt(sq[0][q] / double(bc.paths)));
        for (std::size_t l = 0; l + 1 < levels; ++l) {
          const double ratio = std::sqrt(sq[l][q] / sq[l + 1][q]);
          const std::string key = family_key(fam.family) + "." + names[q] + "_ratio" + (l ? std::to_string(l) : "");
          add(r, key, ratio);
          const bool ok = q < 2 ? in_band(ratio, bc.rate_low, bc.rate_high) : ratio <= bc.control_max_ratio;
          if (!ok) fail(r, key + "=" + format_real(ratio));
        }
      }
    }

    // Kernel r = sin(x) exp(sigma^2 t / 2) with m = c = 0 and constant sigma; r = sin(x) as control.
    std::vector<std::array<double, 2>> kr(levels, {0.0, 0.0});
    const auto paths = refined_paths(bc.grid, config.refine_levels, 2, 4, config.seed, 0);
    const double s = bc.sigma.sigma0;
    for (std::size_t l = 0; l < levels; ++l) {
      const Grid& g = paths[l].grid;
      const Process sigma = Process::constant(g, s);
      const CoefficientSet cs =
          build_backward_coefficients(sigma, CoefficientField::zero(g), CoefficientField::zero(g));
      const Field zero = Field::constant(g, 0.0);
      const Field good = Field::tabulate(g, [s](double t, double x) { return std::sin(x) * std::exp(0.5 * s * s * t); });
      const Field bad = Field::tabulate(g, [](double, double x) { return std::sin(x); });
      kr[l][0] = residual_r_bspde(TransformKernel{Semimartingale(good, zero, zero), sigma}, cs, paths[l]).max_abs;
      kr[l][1] = residual_r_bspde(TransformKernel{Semimartingale(bad, zero, zero), sigma}, cs, paths[l]).max_abs;
    }
    for (std::size_t l = 0; l + 1 < levels; ++l) {
      const std::string suffix = l ? std::to_string(l) : "";
      const double good = kr[l][0] / kr[l + 1][0], bad = kr[l][1] / kr[l + 1][1];
      add(r, "kernel.ratio" + suffix, good);
      add(r, "kernel.control_ratio" + suffix, bad);
      if (!in_band(good, bc.rate_low, bc.rate_high)) fail(r, "kernel ratio " + format_real(good));
      if (bad > bc.control_max_ratio) fail(r, "kernel control ratio " + format_real(bad));
    }
  });
}

std::vector<CheckResult> run_acceptance(const ScenarioConfig& config, Artifacts* artifacts) {
  return {check_forward_cross_validation(config, artifacts),
          check_point_transform(config),
          check_generalized_transform(config, artifacts),
          check_terminal_compatibility(config),
          check_fk_forward(config),
          check_fk_backward(config),
          check_fbsde(config),
          check_applications(config, artifacts),
          check_infrastructure(config)};
}

std::string format_check_line(const CheckResult& r) {
  std::ostringstream out;
  const bool ok = r.passed && r.within_budget();
  out << (ok ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << " (" << std::fixed;
  out.precision(2);
  out << r.seconds << " s";
  if (r.budget_seconds > 0.0) out << " / " << r.budget_seconds << " s";
  out << ")";
  out.unsetf(std::ios::fixed);
  out.precision(4);
  for (const auto& [key, value] : r.metrics) out << ' ' << key << '=' << value;
  if (!r.within_budget()) out << " over budget";
  if (!r.detail.empty()) out << " [" << r.detail << ']';
  return out.str();
}

}  // namespace sburgers
