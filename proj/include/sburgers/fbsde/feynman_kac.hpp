#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "sburgers/core/field.hpp"

namespace sburgers {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  Index n_samples = 0;
  std::uint64_t seed = 0;
};

/// Evaluator of a random field along a path: (t, x, W(t)).
using PathFn = std::function<double(double t, double x, double w)>;
using PointFn1 = std::function<double(double x)>;

struct ForwardFkResult {
  McEstimate G;
  McEstimate G_x;
  /// U = -G_x / G with a first-order (delta method) standard error.
  double U = 0.0;
  double U_std_error = 0.0;
};

/// G(t, x) = exp(-c_bar t) E[q(x + k t + sigma sqrt(t) xi)] and the same for q_x,
/// with sample i drawn from stream i of the seed. Throws NumericalFailure if G is
/// within three standard errors of zero.
ForwardFkResult fk_forward_estimate(double t, double x, const PointFn1& q, const PointFn1& q_x, double k,
                                    double sigma, double c_bar, Index n_samples, std::uint64_t seed);

/// y(t_n0, x) = E[q(T, x(T), W(T)) exp(-int c ds)] with dx = sigma dW from x at t_n0,
/// W(t_n0) = w_t, trapezoid quadrature on the lattice of sigma.
McEstimate fk_backward_y(Index n0, double x, const PathFn& q, const PathFn& c, const Process& sigma,
                         Index n_samples, std::uint64_t seed, double w_t = 0.0);

struct BackwardFkProblem {
  /// sigma with its drift A^sigma (Psi^sigma must vanish).
  Process sigma;
  PathFn p;
  PathFn q;
  PathFn c;
  PathFn f;
  /// y(s, x, w) along the path when known in closed form; otherwise a nested
  /// estimate with `inner_batch` samples per lattice time is used.
  std::optional<PathFn> y_closed_form;
  Index inner_batch = 16;
};

/// Offset added to stream ids of nested inner samples.
inline constexpr std::uint64_t kInnerStreamOffset = std::uint64_t(1) << 62;

/// z(t_n0, x) = E[-e^{-int (A^s/s + c)} s(T) p q + int e^{-int (A^s/s + c)} s f y ds].
McEstimate fk_backward_z(Index n0, double x, const BackwardFkProblem& problem, Index n_samples,
                         std::uint64_t seed, double w_t = 0.0);

}  // namespace sburgers
