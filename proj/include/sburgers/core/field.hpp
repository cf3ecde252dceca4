#pragma once

#include <optional>
#include <sstream>
#include <utility>

#include "sburgers/core/grid.hpp"

namespace sburgers {

/// One realization of a space-time field on the lattice, immutable once built.
template <typename Scalar>
class FieldSample {
 public:
  FieldSample(SpaceTimeGrid<Scalar> grid, Matrix<Scalar> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.rows() != grid_.nt() + 1 || values_.cols() != grid_.nx()) {
      std::ostringstream msg;
      msg << "field: expected " << grid_.nt() + 1 << "x" << grid_.nx() << " values, got "
          << values_.rows() << "x" << values_.cols();
      throw SizingError(msg.str());
    }
    for (Index n = 0; n < values_.rows(); ++n) {
      for (Index i = 0; i < values_.cols(); ++i) {
        if (!std::isfinite(values_(n, i))) {
          std::ostringstream msg;
          msg << "field: non-finite value at t=" << grid_.t(n) << ", x=" << grid_.x(i);
          throw NumericalFailure(msg.str());
        }
      }
    }
  }

  static FieldSample constant(const SpaceTimeGrid<Scalar>& grid, Scalar value) {
    return FieldSample(grid, Matrix<Scalar>::Constant(grid.nt() + 1, grid.nx(), value));
  }

  /// Tabulates f(t, x) on every lattice node.
  template <typename F>
  static FieldSample tabulate(const SpaceTimeGrid<Scalar>& grid, F&& f) {
    Matrix<Scalar> v(grid.nt() + 1, grid.nx());
    for (Index n = 0; n <= grid.nt(); ++n) {
      const Scalar t = grid.t(n);
      for (Index i = 0; i < grid.nx(); ++i) v(n, i) = f(t, grid.x(i));
    }
    return FieldSample(grid, std::move(v));
  }

  const SpaceTimeGrid<Scalar>& grid() const { return grid_; }
  const Matrix<Scalar>& values() const { return values_; }
  Scalar operator()(Index n, Index i) const { return values_(n, i); }
  Vector<Scalar> slice(Index n) const { return values_.row(n).transpose(); }

 private:
  SpaceTimeGrid<Scalar> grid_;
  Matrix<Scalar> values_;
};

using Field = FieldSample<double>;

/// Time series on the lattice with an optional decomposition dF = a dt + psi dW.
/// Absent parts are read as identically zero.
template <typename Scalar>
class ProcessSample {
 public:
  ProcessSample(SpaceTimeGrid<Scalar> grid, Vector<Scalar> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    check(values_, "values");
  }

  static ProcessSample constant(const SpaceTimeGrid<Scalar>& grid, Scalar value) {
    return ProcessSample(grid, Vector<Scalar>::Constant(grid.nt() + 1, value));
  }

  /// Tabulates a deterministic process f(t) with its time derivative as drift.
  template <typename F, typename DF>
  static ProcessSample deterministic(const SpaceTimeGrid<Scalar>& grid, F&& f, DF&& df) {
    Vector<Scalar> v(grid.nt() + 1), d(grid.nt() + 1);
    for (Index n = 0; n <= grid.nt(); ++n) {
      v[n] = f(grid.t(n));
      d[n] = df(grid.t(n));
    }
    return ProcessSample(grid, v).with_drift(d);
  }

  ProcessSample with_drift(Vector<Scalar> v) const { return with(&ProcessSample::drift_, std::move(v), "drift"); }
  ProcessSample with_psi(Vector<Scalar> v) const { return with(&ProcessSample::psi_, std::move(v), "psi"); }
  ProcessSample with_drift_psi(Vector<Scalar> v) const {
    return with(&ProcessSample::drift_psi_, std::move(v), "drift_psi");
  }
  ProcessSample with_psi_psi(Vector<Scalar> v) const {
    return with(&ProcessSample::psi_psi_, std::move(v), "psi_psi");
  }

  const SpaceTimeGrid<Scalar>& grid() const { return grid_; }
  const Vector<Scalar>& values() const { return values_; }
  Scalar operator[](Index n) const { return values_[n]; }
  Index size() const { return values_.size(); }

  const std::optional<Vector<Scalar>>& drift() const { return drift_; }
  const std::optional<Vector<Scalar>>& psi() const { return psi_; }
  const std::optional<Vector<Scalar>>& drift_psi() const { return drift_psi_; }
  const std::optional<Vector<Scalar>>& psi_psi() const { return psi_psi_; }

  Vector<Scalar> drift_or_zero() const { return or_zero(drift_); }
  Vector<Scalar> psi_or_zero() const { return or_zero(psi_); }
  Vector<Scalar> drift_psi_or_zero() const { return or_zero(drift_psi_); }
  Vector<Scalar> psi_psi_or_zero() const { return or_zero(psi_psi_); }

 private:
  using Part = std::optional<Vector<Scalar>> ProcessSample::*;

  void check(const Vector<Scalar>& v, const char* name) const {
    if (v.size() != grid_.nt() + 1) {
      std::ostringstream msg;
      msg << "process " << name << ": expected length " << grid_.nt() + 1 << ", got " << v.size();
      throw SizingError(msg.str());
    }
    for (Index n = 0; n < v.size(); ++n) {
      if (!std::isfinite(v[n])) {
        std::ostringstream msg;
        msg << "process " << name << ": non-finite value at t=" << grid_.t(n);
        throw NumericalFailure(msg.str());
      }
    }
  }

  ProcessSample with(Part part, Vector<Scalar> v, const char* name) const {
    check(v, name);
    ProcessSample out = *this;
    out.*part = std::move(v);
    return out;
  }

  Vector<Scalar> or_zero(const std::optional<Vector<Scalar>>& v) const {
    return v ? *v : Vector<Scalar>::Zero(grid_.nt() + 1);
  }

  SpaceTimeGrid<Scalar> grid_;
  Vector<Scalar> values_;
  std::optional<Vector<Scalar>> drift_;
  std::optional<Vector<Scalar>> psi_;
  std::optional<Vector<Scalar>> drift_psi_;
  std::optional<Vector<Scalar>> psi_psi_;
};

using Process = ProcessSample<double>;

/// A field F with its decomposition dF = A dt + Psi dW.
/// The second level (drift and martingale part of Psi) is optional, as is the
/// martingale part of Psi^Psi used for Milstein-corrected increments.
template <typename Scalar>
struct SemimartingaleField {
  FieldSample<Scalar> value;
  FieldSample<Scalar> drift;
  FieldSample<Scalar> psi;
  std::optional<FieldSample<Scalar>> drift_psi;
  std::optional<FieldSample<Scalar>> psi_psi;
  std::optional<FieldSample<Scalar>> psi_psi_psi;

  SemimartingaleField(FieldSample<Scalar> f, FieldSample<Scalar> a, FieldSample<Scalar> p,
                      std::optional<FieldSample<Scalar>> a_psi = std::nullopt,
                      std::optional<FieldSample<Scalar>> psi_psi_part = std::nullopt,
                      std::optional<FieldSample<Scalar>> psi_psi_psi_part = std::nullopt)
      : value(std::move(f)),
        drift(std::move(a)),
        psi(std::move(p)),
        drift_psi(std::move(a_psi)),
        psi_psi(std::move(psi_psi_part)),
        psi_psi_psi(std::move(psi_psi_psi_part)) {
    require_same_grid(value.grid(), drift.grid(), "semimartingale field");
    require_same_grid(value.grid(), psi.grid(), "semimartingale field");
    for (const auto* part : {&drift_psi, &psi_psi, &psi_psi_psi}) {
      if (*part) require_same_grid(value.grid(), (*part)->grid(), "semimartingale field");
    }
  }

  const SpaceTimeGrid<Scalar>& grid() const { return value.grid(); }
  bool has_second_level() const { return drift_psi.has_value() && psi_psi.has_value(); }
};

using Semimartingale = SemimartingaleField<double>;

/// Keeps every `stride`-th time level of a process (all decomposition parts included).
template <typename Scalar>
ProcessSample<Scalar> subsample(const ProcessSample<Scalar>& p, Index stride) {
  const Index nt = p.grid().nt();
  if (stride < 1 || nt % stride != 0) throw ConfigurationError("subsample: stride must divide nt");
  const auto coarse = p.grid().with_time_steps(nt / stride);
  auto pick = [&](const Vector<Scalar>& v) {
    Vector<Scalar> out(coarse.nt() + 1);
    for (Index k = 0; k <= coarse.nt(); ++k) out[k] = v[k * stride];
    return out;
  };
  ProcessSample<Scalar> out(coarse, pick(p.values()));
  if (p.drift()) out = out.with_drift(pick(*p.drift()));
  if (p.psi()) out = out.with_psi(pick(*p.psi()));
  if (p.drift_psi()) out = out.with_drift_psi(pick(*p.drift_psi()));
  if (p.psi_psi()) out = out.with_psi_psi(pick(*p.psi_psi()));
  return out;
}

}  // namespace sburgers
