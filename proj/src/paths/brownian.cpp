#include "sburgers/paths/brownian.hpp"

#include <cmath>

#include "sburgers/paths/counter_rng.hpp"

namespace sburgers {

namespace {

double quantize(double v) { return std::nearbyint(v / kIncrementQuantum) * kIncrementQuantum; }

BrownianPath assemble(const Grid& grid, Eigen::VectorXd dw, std::uint64_t seed, std::uint64_t stream_id) {
  Eigen::VectorXd w(grid.nt() + 1);
  w[0] = 0.0;
  for (Index k = 0; k < grid.nt(); ++k) w[k + 1] = w[k] + dw[k];
  return BrownianPath{grid, std::move(w), std::move(dw), seed, stream_id};
}

}  // namespace

Process BrownianPath::as_process() const {
  return Process(grid, w).with_drift(Eigen::VectorXd::Zero(w.size())).with_psi(Eigen::VectorXd::Ones(w.size()));
}

BrownianPath make_brownian_path(std::uint64_t seed, std::uint64_t stream_id, const Grid& grid) {
  const double sqdt = std::sqrt(grid.dt());
  Eigen::VectorXd dw(grid.nt());
  for (Index k = 0; k < grid.nt(); ++k) {
    dw[k] = quantize(sqdt * standard_normal(seed, stream_id, static_cast<std::uint64_t>(k)));
  }
  return assemble(grid, std::move(dw), seed, stream_id);
}

BrownianPath brownian_from_increments(const Grid& grid, const Eigen::VectorXd& dw, std::uint64_t seed,
                                      std::uint64_t stream_id) {
  if (dw.size() != grid.nt()) throw GridMismatch("brownian path: increment count differs from nt");
  Eigen::VectorXd q(dw.size());
  for (Index k = 0; k < dw.size(); ++k) q[k] = quantize(dw[k]);
  return assemble(grid, std::move(q), seed, stream_id);
}

Process ito_integral(const Process& integrand, const BrownianPath& path) {
  require_same_grid(integrand.grid(), path.grid, "ito_integral");
  const Index nt = path.grid.nt();
  Eigen::VectorXd h(nt + 1);
  h[0] = 0.0;
  for (Index k = 0; k < nt; ++k) h[k + 1] = h[k] + integrand[k] * path.dw[k];
  return Process(path.grid, std::move(h))
      .with_drift(Eigen::VectorXd::Zero(nt + 1))
      .with_psi(integrand.values());
}

BrownianPath coarsen_path(const BrownianPath& path, Index factor) {
  const Index nt = path.grid.nt();
  if (factor < 1 || nt % factor != 0) {
    throw ConfigurationError("coarsen_path: factor must be a positive divisor of nt");
  }
  const Grid coarse = path.grid.with_time_steps(nt / factor);
  Eigen::VectorXd w(coarse.nt() + 1), dw(coarse.nt());
  for (Index k = 0; k <= coarse.nt(); ++k) w[k] = path.w[k * factor];
  for (Index k = 0; k < coarse.nt(); ++k) dw[k] = w[k + 1] - w[k];
  return BrownianPath{coarse, std::move(w), std::move(dw), path.seed, path.stream_id};
}

}  // namespace sburgers
