#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "sburgers/core/errors.hpp"

namespace sburgers {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Row-major storage: one row per time level, one column per space node.
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Uniform lattice on [x_min, x_max] x [0, T].
template <typename Scalar>
class SpaceTimeGrid {
 public:
  SpaceTimeGrid(Scalar x_min, Scalar x_max, Index nx, Scalar horizon, Index nt)
      : x_min_(x_min), x_max_(x_max), nx_(nx), horizon_(horizon), nt_(nt) {
    using std::isfinite;
    if (!isfinite(x_min) || !isfinite(x_max) || !(x_min < x_max)) {
      throw ConfigurationError("grid: require finite x_min < x_max");
    }
    if (nx < 3) throw ConfigurationError("grid: require nx >= 3");
    if (!isfinite(horizon) || !(horizon > Scalar(0))) {
      throw ConfigurationError("grid: require finite horizon > 0");
    }
    if (nt < 1) throw ConfigurationError("grid: require nt >= 1");
  }

  Scalar x_min() const { return x_min_; }
  Scalar x_max() const { return x_max_; }
  Index nx() const { return nx_; }
  Scalar horizon() const { return horizon_; }
  Index nt() const { return nt_; }

  Scalar dx() const { return (x_max_ - x_min_) / Scalar(nx_ - 1); }
  Scalar dt() const { return horizon_ / Scalar(nt_); }

  Scalar x(Index i) const { return i == nx_ - 1 ? x_max_ : x_min_ + Scalar(i) * dx(); }
  Scalar t(Index n) const { return n == nt_ ? horizon_ : Scalar(n) * dt(); }

  Vector<Scalar> nodes() const {
    Vector<Scalar> out(nx_);
    for (Index i = 0; i < nx_; ++i) out[i] = x(i);
    return out;
  }

  /// Same spatial lattice and horizon with a different number of time steps.
  SpaceTimeGrid with_time_steps(Index nt) const {
    return SpaceTimeGrid(x_min_, x_max_, nx_, horizon_, nt);
  }

  /// Same time lattice with a different number of space nodes.
  SpaceTimeGrid with_space_nodes(Index nx) const {
    return SpaceTimeGrid(x_min_, x_max_, nx, horizon_, nt_);
  }

  bool operator==(const SpaceTimeGrid&) const = default;

 private:
  Scalar x_min_;
  Scalar x_max_;
  Index nx_;
  Scalar horizon_;
  Index nt_;
};

using Grid = SpaceTimeGrid<double>;

template <typename Scalar>
void require_same_grid(const SpaceTimeGrid<Scalar>& a, const SpaceTimeGrid<Scalar>& b,
                       const char* where) {
  if (!(a == b)) {
    std::ostringstream msg;
    msg << where << ": operands live on different lattices (nx " << a.nx() << " vs " << b.nx()
        << ", nt " << a.nt() << " vs " << b.nt() << ")";
    throw GridMismatch(msg.str());
  }
}

/// Inclusive range of space indices used when reporting errors and residuals.
struct Window {
  Index begin = 0;
  Index end = 0;

  Index size() const { return end - begin + 1; }
};

/// Interior window that drops `buffer_fraction` of the nodes on each side.
template <typename Scalar>
Window reporting_window(const SpaceTimeGrid<Scalar>& grid, double buffer_fraction) {
  if (!(buffer_fraction >= 0.0) || !(buffer_fraction < 0.5)) {
    throw ConfigurationError("reporting window: buffer fraction must lie in [0, 0.5)");
  }
  const Index n = grid.nx();
  Index skip = static_cast<Index>(std::ceil(buffer_fraction * double(n - 1) - 1e-9));
  skip = std::max<Index>(skip, 1);
  if (2 * skip >= n) skip = (n - 1) / 2;
  return Window{skip, n - 1 - skip};
}

}  // namespace sburgers
