#include "sburgers/core/coefficient_field.hpp"

#include <memory>

namespace sburgers {

CoefficientField CoefficientField::zero(const Grid& grid) {
  const Index nx = grid.nx();
  return CoefficientField(grid, [nx](Index, double) { return Eigen::VectorXd::Zero(nx).eval(); }, true);
}

CoefficientField CoefficientField::constant(const Grid& grid, double value) {
  if (value == 0.0) return zero(grid);
  const Index nx = grid.nx();
  return CoefficientField(
      grid, [nx, value](Index, double) { return Eigen::VectorXd::Constant(nx, value).eval(); }, false);
}

CoefficientField CoefficientField::tabulated(Field field) {
  auto shared = std::make_shared<const Field>(std::move(field));
  const Grid grid = shared->grid();
  return CoefficientField(grid, [shared](Index n, double) { return shared->slice(n); }, false);
}

CoefficientField CoefficientField::closed_form(const Grid& grid, PointFn f) {
  const Eigen::VectorXd x = grid.nodes();
  return CoefficientField(
      grid,
      [grid, x, f = std::move(f)](Index n, double w) {
        const double t = grid.t(n);
        Eigen::VectorXd out(x.size());
        for (Index i = 0; i < x.size(); ++i) out[i] = f(t, x[i], w);
        return out;
      },
      false);
}

CoefficientField CoefficientField::generated(const Grid& grid, SliceFn f) {
  return CoefficientField(grid, std::move(f), false);
}

Eigen::VectorXd CoefficientField::slice(Index n, double w) const {
  if (n < 0 || n > grid_.nt()) throw ConfigurationError("coefficient slice: time index out of range");
  Eigen::VectorXd out = fn_(n, w);
  if (out.size() != grid_.nx()) throw SizingError("coefficient slice: generator returned wrong length");
  return out;
}

Field CoefficientField::materialize(const Eigen::VectorXd& w) const {
  if (w.size() != grid_.nt() + 1) throw GridMismatch("coefficient materialize: path length differs from nt+1");
  Matrix<double> out(grid_.nt() + 1, grid_.nx());
  for (Index n = 0; n <= grid_.nt(); ++n) out.row(n) = slice(n, w[n]).transpose();
  return Field(grid_, std::move(out));
}

}  // namespace sburgers
