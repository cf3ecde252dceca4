#pragma once

#include <functional>
#include <optional>

#include "sburgers/core/field.hpp"

namespace sburgers {

/// A coefficient field that is either tabulated on the lattice or generated
/// slice by slice. Generated slices may depend on the Brownian value W(t_n),
/// which is how random coefficients enter without storing full space-time arrays.
class CoefficientField {
 public:
  using SliceFn = std::function<Eigen::VectorXd(Index n, double w)>;
  using PointFn = std::function<double(double t, double x, double w)>;

  static CoefficientField zero(const Grid& grid);
  static CoefficientField constant(const Grid& grid, double value);
  static CoefficientField tabulated(Field field);
  static CoefficientField closed_form(const Grid& grid, PointFn f);
  static CoefficientField generated(const Grid& grid, SliceFn f);

  const Grid& grid() const { return grid_; }
  bool is_zero() const { return zero_; }

  /// Values at time index n; `w` is W(t_n) on the path in use.
  Eigen::VectorXd slice(Index n, double w = 0.0) const;

  /// Tabulates every slice along a Brownian trajectory w[0..nt].
  Field materialize(const Eigen::VectorXd& w) const;

 private:
  CoefficientField(Grid grid, SliceFn f, bool zero) : grid_(std::move(grid)), fn_(std::move(f)), zero_(zero) {}

  Grid grid_;
  SliceFn fn_;
  bool zero_ = false;
};

}  // namespace sburgers
