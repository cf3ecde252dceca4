#pragma once

#include <cmath>
#include <sstream>

#include "sburgers/core/field.hpp"

namespace sburgers {

/// Weights of the order-m derivative at z for the given nodes (Fornberg's recursion).
template <typename Scalar>
Vector<Scalar> fd_weights(Scalar z, const Vector<Scalar>& nodes, int m) {
  const Index n = nodes.size();
  Matrix<Scalar> c = Matrix<Scalar>::Zero(n, m + 1);
  Scalar c1 = 1;
  Scalar c4 = nodes[0] - z;
  c(0, 0) = 1;
  for (Index i = 1; i < n; ++i) {
    const int mn = static_cast<int>(std::min<Index>(i, m));
    Scalar c2 = 1;
    const Scalar c5 = c4;
    c4 = nodes[i] - z;
    for (Index j = 0; j < i; ++j) {
      const Scalar c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c(i, k) = c1 * (Scalar(k) * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        }
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) c(j, k) = (c4 * c(j, k) - Scalar(k) * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c.col(m);
}

namespace detail {

template <typename Scalar>
Scalar apply_weights(const Vector<Scalar>& w, const Scalar* f, Index start) {
  Scalar acc = 0;
  for (Index k = 0; k < w.size(); ++k) acc += w[k] * f[start + k];
  return acc;
}

}  // namespace detail

/// Derivative of order 1, 2 or 3 of a sampled slice.
/// Second-order central stencils inside, second-order one-sided stencils at the ends.
template <typename Scalar>
Vector<Scalar> derivative(const Vector<Scalar>& f, Scalar dx, int order) {
  if (order < 1 || order > 3) throw ConfigurationError("derivative: order must be 1, 2 or 3");
  const Index n = f.size();
  if (n < order + 2) {
    std::ostringstream msg;
    msg << "derivative: order " << order << " needs at least " << order + 2 << " nodes, got " << n;
    throw SizingError(msg.str());
  }
  Vector<Scalar> out(n);
  const Scalar* p = f.data();
  const Index width = order + 2;
  Vector<Scalar> offsets(width);
  for (Index k = 0; k < width; ++k) offsets[k] = Scalar(k);
  const Scalar scale = std::pow(dx, order);

  // Number of nodes on each side not covered by the central stencil.
  const Index edge = order == 3 ? 2 : 1;
  for (Index e = 0; e < edge; ++e) {
    const Vector<Scalar> w_left = fd_weights<Scalar>(Scalar(e), offsets, order);
    const Vector<Scalar> w_right = fd_weights<Scalar>(Scalar(width - 1 - e), offsets, order);
    out[e] = detail::apply_weights(w_left, p, 0) / scale;
    out[n - 1 - e] = detail::apply_weights(w_right, p, n - width) / scale;
  }
  switch (order) {
    case 1:
      for (Index i = 1; i + 1 < n; ++i) out[i] = (p[i + 1] - p[i - 1]) / (2 * dx);
      break;
    case 2:
      for (Index i = 1; i + 1 < n; ++i) out[i] = (p[i + 1] - 2 * p[i] + p[i - 1]) / (dx * dx);
      break;
    default:
      for (Index i = 2; i + 2 < n; ++i) {
        out[i] = (p[i + 2] - 2 * p[i + 1] + 2 * p[i - 1] - p[i - 2]) / (2 * scale);
      }
      break;
  }
  return out;
}

/// Spatial derivative of every time slice of a field.
template <typename Scalar>
FieldSample<Scalar> central_derivative(const FieldSample<Scalar>& field, int order) {
  const auto& g = field.grid();
  Matrix<Scalar> out(g.nt() + 1, g.nx());
  for (Index n = 0; n <= g.nt(); ++n) {
    out.row(n) = derivative<Scalar>(field.slice(n), g.dx(), order).transpose();
  }
  return FieldSample<Scalar>(g, std::move(out));
}

/// Trapezoid-rule antiderivative of a slice, zero at the left end.
template <typename Scalar>
Vector<Scalar> cumulative_antiderivative(const Vector<Scalar>& f, Scalar dx) {
  Vector<Scalar> out(f.size());
  if (f.size() == 0) return out;
  out[0] = 0;
  for (Index i = 1; i < f.size(); ++i) out[i] = out[i - 1] + Scalar(0.5) * dx * (f[i - 1] + f[i]);
  return out;
}

template <typename Scalar>
FieldSample<Scalar> cumulative_antiderivative(const FieldSample<Scalar>& field) {
  const auto& g = field.grid();
  Matrix<Scalar> out(g.nt() + 1, g.nx());
  for (Index n = 0; n <= g.nt(); ++n) {
    out.row(n) = cumulative_antiderivative<Scalar>(field.slice(n), g.dx()).transpose();
  }
  return FieldSample<Scalar>(g, std::move(out));
}

/// Linear interpolation of a slice at x, constant extrapolation outside [x_min, x_max].
template <typename Scalar>
Scalar interpolate_at(const Vector<Scalar>& f, const SpaceTimeGrid<Scalar>& grid, Scalar x) {
  const Scalar s = (x - grid.x_min()) / grid.dx();
  const Index last = f.size() - 1;
  if (!(s > 0)) return f[0];
  if (s >= Scalar(last)) return f[last];
  const Index j = static_cast<Index>(std::floor(s));
  const Scalar w = s - Scalar(j);
  return w == 0 ? f[j] : (1 - w) * f[j] + w * f[j + 1];
}

/// Samples x -> f(x + shift) on the lattice by linear interpolation,
/// constant extrapolation outside the domain.
template <typename Scalar>
Vector<Scalar> interpolate_shifted(const Vector<Scalar>& f, const SpaceTimeGrid<Scalar>& grid,
                                   Scalar shift) {
  const Index n = f.size();
  if (n != grid.nx()) throw GridMismatch("interpolate_shifted: slice length differs from nx");
  Vector<Scalar> out(n);
  const Scalar offset = shift / grid.dx();
  const Index last = n - 1;
  for (Index i = 0; i < n; ++i) {
    const Scalar s = Scalar(i) + offset;
    if (!(s > 0)) {
      out[i] = f[0];
    } else if (s >= Scalar(last)) {
      out[i] = f[last];
    } else {
      const Index j = static_cast<Index>(std::floor(s));
      const Scalar w = s - Scalar(j);
      out[i] = w == 0 ? f[j] : (1 - w) * f[j] + w * f[j + 1];
    }
  }
  return out;
}

}  // namespace sburgers
