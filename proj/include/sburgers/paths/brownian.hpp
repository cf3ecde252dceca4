#pragma once

#include <cstdint>

#include "sburgers/core/field.hpp"

namespace sburgers {

/// One Brownian trajectory on the time lattice of a grid.
/// Increments are rounded to multiples of 2^-40, so every partial sum of dw is
/// exact and w[k+1] - w[k] == dw[k] holds bit for bit.
struct BrownianPath {
  Grid grid;
  Eigen::VectorXd w;   // length nt+1, w[0] = 0
  Eigen::VectorXd dw;  // length nt
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// W as a process with decomposition dW = 0 dt + 1 dW.
  Process as_process() const;
};

/// Lattice spacing of the increments.
inline constexpr double kIncrementQuantum = 0x1.0p-40;

/// Increment k of (seed, stream_id) is sqrt(dt) times the normal keyed by (seed, stream_id, k).
BrownianPath make_brownian_path(std::uint64_t seed, std::uint64_t stream_id, const Grid& grid);

/// Wraps given increments (rounded to the increment lattice) as a path.
BrownianPath brownian_from_increments(const Grid& grid, const Eigen::VectorXd& dw, std::uint64_t seed = 0,
                                      std::uint64_t stream_id = 0);

/// Left-point sums H[k] = sum_{j<k} integrand[j] * dw[j]; the result carries psi = integrand.
Process ito_integral(const Process& integrand, const BrownianPath& path);

/// Path on the coarser time lattice nt/factor sharing the same trajectory.
BrownianPath coarsen_path(const BrownianPath& path, Index factor);

}  // namespace sburgers
