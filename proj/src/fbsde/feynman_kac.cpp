#include "sburgers/fbsde/feynman_kac.hpp"

#include <cmath>
#include <sstream>

#include "sburgers/paths/brownian.hpp"
#include "sburgers/paths/counter_rng.hpp"

namespace sburgers {

namespace {

struct Moments {
  double mean = 0.0;
  double m2 = 0.0;
  Index n = 0;

  void add(double v) {
    ++n;
    const double delta = v - mean;
    mean += delta / double(n);
    m2 += delta * (v - mean);
  }
  double variance() const { return n > 1 ? m2 / double(n - 1) : 0.0; }
  double std_error() const { return std::sqrt(variance() / double(n)); }
};

void require_samples(Index n) {
  if (n < 2) throw ConfigurationError("Monte Carlo: need at least two samples");
}

void require_no_psi_sigma(const Process& sigma) {
  if (sigma.psi() && !sigma.psi()->isZero(0.0)) {
    throw ConfigurationError("backward Feynman-Kac: requires Psi^sigma = 0");
  }
}

// One forward state path dx = sigma dW started at (n0, x, w_t); returns x and W on n0..nt.
void state_path(const BrownianPath& path, Index n0, double x, double w_t, const Process& sigma,
                Eigen::VectorXd& xs, Eigen::VectorXd& ws) {
  const Index nt = path.grid.nt();
  xs.resize(nt + 1);
  ws.resize(nt + 1);
  xs[n0] = x;
  ws[n0] = w_t;
  for (Index j = n0; j < nt; ++j) {
    xs[j + 1] = xs[j] + sigma[j] * path.dw[j];
    ws[j + 1] = ws[j] + path.dw[j];
  }
}

}  // namespace

ForwardFkResult fk_forward_estimate(double t, double x, const PointFn1& q, const PointFn1& q_x, double k,
                                    double sigma, double c_bar, Index n_samples, std::uint64_t seed) {
  require_samples(n_samples);
  if (!(t >= 0.0)) throw ConfigurationError("forward Feynman-Kac: t must be non-negative");
  const double disc = std::exp(-c_bar * t);
  const double spread = sigma * std::sqrt(t);
  Moments g, gx;
  double cross = 0.0;
  for (Index i = 0; i < n_samples; ++i) {
    const double xi = standard_normal(seed, static_cast<std::uint64_t>(i), 0);
    const double xt = x + k * t + spread * xi;
    const double a = disc * q(xt);
    const double b = disc * q_x(xt);
    const double da = a - g.mean;
    g.add(a);
    gx.add(b);
    cross += da * (b - gx.mean);
  }
  const double n = double(n_samples);
  const double cov = cross / (n - 1.0);
  ForwardFkResult out;
  out.G = {g.mean, g.std_error(), n_samples, seed};
  out.G_x = {gx.mean, gx.std_error(), n_samples, seed};
  if (!(std::fabs(g.mean) > 3.0 * out.G.std_error) || g.mean == 0.0) {
    std::ostringstream msg;
    msg << "forward Feynman-Kac: G=" << g.mean << " is within three standard errors of zero";
    throw NumericalFailure(msg.str());
  }
  out.U = -gx.mean / g.mean;
  const double G = g.mean;
  const double Gx = gx.mean;
  const double var_u =
      (gx.variance() / (G * G) + Gx * Gx * g.variance() / (G * G * G * G) - 2.0 * Gx * cov / (G * G * G)) / n;
  out.U_std_error = std::sqrt(std::max(var_u, 0.0));
  return out;
}

McEstimate fk_backward_y(Index n0, double x, const PathFn& q, const PathFn& c, const Process& sigma,
                         Index n_samples, std::uint64_t seed, double w_t) {
  require_samples(n_samples);
  const Grid& g = sigma.grid();
  if (n0 < 0 || n0 > g.nt()) throw ConfigurationError("backward Feynman-Kac: start index out of range");
  const double dt = g.dt();
  Moments acc;
  Eigen::VectorXd xs, ws;
  for (Index i = 0; i < n_samples; ++i) {
    const BrownianPath path = make_brownian_path(seed, static_cast<std::uint64_t>(i), g);
    state_path(path, n0, x, w_t, sigma, xs, ws);
    double integral = 0.0;
    double prev = c(g.t(n0), xs[n0], ws[n0]);
    for (Index j = n0; j < g.nt(); ++j) {
      const double next = c(g.t(j + 1), xs[j + 1], ws[j + 1]);
      integral += 0.5 * dt * (prev + next);
      prev = next;
    }
    acc.add(q(g.horizon(), xs[g.nt()], ws[g.nt()]) * std::exp(-integral));
  }
  return {acc.mean, acc.std_error(), n_samples, seed};
}

McEstimate fk_backward_z(Index n0, double x, const BackwardFkProblem& problem, Index n_samples,
                         std::uint64_t seed, double w_t) {
  require_samples(n_samples);
  const Process& sigma = problem.sigma;
  require_no_psi_sigma(sigma);
  const Grid& g = sigma.grid();
  const Index nt = g.nt();
  if (n0 < 0 || n0 > nt) throw ConfigurationError("backward Feynman-Kac: start index out of range");
  if (!problem.y_closed_form && problem.inner_batch < 2) {
    throw ConfigurationError("backward Feynman-Kac: inner batch must hold at least two samples");
  }
  const double dt = g.dt();
  const Eigen::VectorXd a_sigma = sigma.drift_or_zero();
  Moments acc;
  Eigen::VectorXd xs, ws;

  auto inner_y = [&](Index outer, Index j, double xj, double wj) {
    if (problem.y_closed_form) return (*problem.y_closed_form)(g.t(j), xj, wj);
    const std::uint64_t base =
        kInnerStreamOffset + (static_cast<std::uint64_t>(outer) * std::uint64_t(nt + 1) + std::uint64_t(j)) *
                                 static_cast<std::uint64_t>(problem.inner_batch);
    Moments inner;
    Eigen::VectorXd xi, wi;
    for (Index b = 0; b < problem.inner_batch; ++b) {
      const BrownianPath p = make_brownian_path(seed, base + static_cast<std::uint64_t>(b), g);
      state_path(p, j, xj, wj, sigma, xi, wi);
      double integral = 0.0;
      double prev = problem.c(g.t(j), xi[j], wi[j]);
      for (Index k = j; k < nt; ++k) {
        const double next = problem.c(g.t(k + 1), xi[k + 1], wi[k + 1]);
        integral += 0.5 * dt * (prev + next);
        prev = next;
      }
      inner.add(problem.q(g.horizon(), xi[nt], wi[nt]) * std::exp(-integral));
    }
    return inner.mean;
  };

  for (Index i = 0; i < n_samples; ++i) {
    const BrownianPath path = make_brownian_path(seed, static_cast<std::uint64_t>(i), g);
    state_path(path, n0, x, w_t, sigma, xs, ws);
    double discount = 0.0;  // running int (A^s/s + c)
    double source = 0.0;    // running int e^{-discount} s f y
    auto rate = [&](Index j) { return a_sigma[j] / sigma[j] + problem.c(g.t(j), xs[j], ws[j]); };
    auto integrand = [&](Index j) {
      const double fj = problem.f(g.t(j), xs[j], ws[j]);
      if (fj == 0.0) return 0.0;
      return std::exp(-discount) * sigma[j] * fj * inner_y(i, j, xs[j], ws[j]);
    };
    double r_prev = rate(n0);
    double s_prev = integrand(n0);
    for (Index j = n0; j < nt; ++j) {
      const double r_next = rate(j + 1);
      discount += 0.5 * dt * (r_prev + r_next);
      const double s_next = integrand(j + 1);
      source += 0.5 * dt * (s_prev + s_next);
      r_prev = r_next;
      s_prev = s_next;
    }
    const double terminal = -std::exp(-discount) * sigma[nt] * problem.p(g.horizon(), xs[nt], ws[nt]) *
                            problem.q(g.horizon(), xs[nt], ws[nt]);
    acc.add(terminal + source);
  }
  return {acc.mean, acc.std_error(), n_samples, seed};
}

}  // namespace sburgers
