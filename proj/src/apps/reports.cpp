#include "sburgers/apps/reports.hpp"

#include <cmath>

#include "sburgers/burgers/forward_solver.hpp"
#include "sburgers/core/stencil.hpp"
#include "sburgers/heat/heat_solver.hpp"

namespace sburgers {

Eigen::VectorXd initial_heat_data(const ProfileSpec& p0, const Grid& grid) {
  const double s = p0.shift, a = p0.amplitude, k = p0.frequency;
  Eigen::VectorXd log_q(grid.nx());
  if (p0.kind == "sin" || p0.kind == "tanh") {
    if (k == 0.0) throw ConfigurationError("initial profile: frequency must be nonzero");
    for (Index i = 0; i < grid.nx(); ++i) {
      const double x = grid.x(i);
      const double anti = p0.kind == "sin" ? -a * std::cos(k * x) / k : a * std::log(std::cosh(k * x)) / k;
      log_q[i] = -(s * x + anti);
    }
  } else {
    log_q = -cumulative_antiderivative<double>(make_profile(p0, grid).f, grid.dx());
  }
  const Index mid = std::clamp<Index>(Index(std::lround(-grid.x_min() / grid.dx())), 0, grid.nx() - 1);
  return (log_q.array() - log_q[mid]).exp().matrix();
}

ForwardComparison compare_forward_routes(const ForwardConfig& config, const BrownianPath& path) {
  const Grid& g = path.grid;
  const Process sigma = Process::constant(g, config.sigma);
  const CoefficientSet coeffs =
      build_linearizable_coefficients(sigma, CoefficientField::constant(g, config.b),
                                      CoefficientField::constant(g, config.m),
                                      CoefficientField::constant(g, config.f), Process::constant(g, config.c_bar));
  const Eigen::VectorXd p0 = make_profile(config.p0, g).f;
  ForwardOptions fopts;
  fopts.output_stride = config.output_stride;
  ForwardSolution direct = solve_forward_burgers(p0, coeffs, path, fopts);

  const Process h = ito_integral(coeffs.ell, path);
  const HeatProblem heat{g, initial_heat_data(config.p0, g), sigma, coeffs.k, coeffs.c, h, path.w};
  const Field G = solve_pathwise_heat(heat, HeatOptions{HeatBoundary::LogNeumann, config.output_stride});
  Field U_heat = forward_transform(assemble_V(G, subsample(h, config.output_stride)));

  const Window w = reporting_window(g, 0.2);
  const auto a = direct.U.values().middleCols(w.begin, w.size());
  const auto b = U_heat.values().middleCols(w.begin, w.size());
  const double gap = (a - b).norm() / b.norm();
  return {std::move(direct.U), std::move(U_heat), gap};
}

Eigen::VectorXd family_terminal_state(int family, const Profile& profile, double sigma_T, double w_T) {
  if (family == 1) return -(profile.d1 * w_T + profile.f / sigma_T);
  if (family == 2) return -(profile.d1.array() / profile.f.array()).matrix() - Eigen::VectorXd::Constant(profile.f.size(), 1.0 / sigma_T);
  throw ConfigurationError("family " + std::to_string(family) + " has no closed form");
}

ControllabilityReport controllability_report(const FamilySpec& family, const SigmaModel& sigma,
                                             const BrownianPath& path, const FamilyOptions& options) {
  if (family.family != 1 && family.family != 2) {
    throw ConfigurationError("controllability: family " + std::to_string(family.family) + " has no closed form");
  }
  const Grid& g = path.grid;
  const Profile profile = make_profile(family.profile, g);
  const FamilyScenario sc = build_family_scenario(family.family, profile, sigma, path, options);
  const Index nt = g.nt();
  const Eigen::VectorXd target = family_terminal_state(family.family, profile, sc.sigma[nt], path.w[nt]);
  const Window w = reporting_window(g, 0.2);
  const double gap = (sc.U.U.slice(nt) - target).segment(w.begin, w.size()).cwiseAbs().maxCoeff();
  return {sc.U.U.slice(0), sc.U.psi_U, central_derivative(sc.U.psi_U, 1), gap};
}

PricingReport pricing_report(const MarketModel& market, int family, double parameter, double x0,
                             const BrownianPath& path) {
  const Grid& g = path.grid;
  const Index nt = g.nt();
  if (market.consumption.size() != 0) {
    if (market.consumption.size() != nt + 1) throw GridMismatch("pricing: consumption length differs from nt+1");
    if ((market.consumption.array() != 0.0).any()) {
      throw ConfigurationError("pricing: the closed-form families require zero consumption");
    }
  }
  if (market.sigma == 0.0) throw DomainError("pricing: sigma must be nonzero");
  const FinanceParameters fp = finance_parameters(family, parameter, market.sigma);
  FamilyOptions options;
  if (market.vol_of_vol == 0.0) {
    const double m = market.relative_risk();
    if (std::fabs(m - fp.m) > 1e-12 * (1.0 + std::fabs(fp.m))) {
      throw ConfigurationError("pricing: (mu - rate)/sigma = " + std::to_string(m) + " but the family needs " +
                               std::to_string(fp.m));
    }
    options.pinned_m = fp.m;
  }
  const Profile profile = sample_profile(g, Eigen::VectorXd::Constant(g.nx(), parameter));
  const FamilyScenario sc = build_family_scenario(family, profile, SigmaModel{market.sigma, market.vol_of_vol}, path,
                                                  options);
  const Semimartingale U(sc.U.U, Field::constant(g, 0.0), sc.U.psi_U, std::nullopt, sc.U.psi_psi_U);
  const Eigen::VectorXd x = simulate_forward_state(x0, sc.sigma, nullptr, path);
  const FbsdeTriplet tr = markovian_triplet(U, sc.sigma, x, path);

  PricingReport out;
  out.price_y0 = tr.y[0];
  out.state_x = x;
  out.hedge_pi.resize(nt + 1);
  for (Index n = 0; n <= nt; ++n) {
    const double denom = sc.sigma[n] * tr.y[n];
    if (denom == 0.0) {
      if (tr.z[n] != 0.0) throw SingularityError("pricing: wealth vanishes with nonzero Z at t=" + std::to_string(g.t(n)));
      out.hedge_pi[n] = 0.0;
    } else {
      out.hedge_pi[n] = tr.z[n] / denom;
    }
  }
  out.wealth.resize(nt + 1);
  out.stock.resize(nt + 1);
  out.wealth[0] = out.price_y0;
  out.stock[0] = market.s0;
  const double dt = g.dt();
  for (Index n = 0; n < nt; ++n) {
    const double s = sc.sigma[n];
    const double m = interpolate_at<double>(sc.coeffs.m.slice(n, path.w[n]), g, x[n]);
    const double excess = s * m;  // mu - rate
    const double c = market.consumption.size() ? market.consumption[n] : 0.0;
    const double y = out.wealth[n], pi = out.hedge_pi[n];
    const double dw = path.dw[n];
    double next = y + (pi * excess * y + pi * s * s * y * y - c) * dt + pi * s * y * dw;
    if (tr.h) next += 0.5 * (*tr.h)[n] * (dw * dw - dt);
    out.wealth[n + 1] = next;
    out.stock[n + 1] = out.stock[n] * (1.0 + (market.rate + excess) * dt + s * dw);
  }
  out.payoff = family == 1 ? -parameter / sc.sigma[nt] : -1.0 / sc.sigma[nt];
  out.replication_gap = std::fabs(out.wealth[nt] - out.payoff);
  return out;
}

}  // namespace sburgers
