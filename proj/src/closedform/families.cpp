#include "sburgers/closedform/families.hpp"

#include <cmath>
#include <sstream>

#include "sburgers/core/stencil.hpp"

namespace sburgers {

Profile sample_profile(const Grid& grid, const ScalarFn& f, const ScalarFn& df, const ScalarFn& d2f) {
  Profile p{Eigen::VectorXd(grid.nx()), Eigen::VectorXd(grid.nx()), Eigen::VectorXd(grid.nx())};
  for (Index i = 0; i < grid.nx(); ++i) {
    const double x = grid.x(i);
    p.f[i] = f(x);
    p.d1[i] = df(x);
    p.d2[i] = d2f(x);
  }
  return p;
}

Profile sample_profile(const Grid& grid, const Eigen::VectorXd& f) {
  if (f.size() != grid.nx()) throw GridMismatch("profile: slice length differs from nx");
  return Profile{f, derivative<double>(f, grid.dx(), 1), derivative<double>(f, grid.dx(), 2)};
}

namespace {

void require_profile(const Profile& p, const Grid& g) {
  if (p.f.size() != g.nx() || p.d1.size() != g.nx() || p.d2.size() != g.nx()) {
    throw GridMismatch("profile: length differs from nx");
  }
}

Field scaled_rows(const Matrix<double>& base, const Eigen::VectorXd& factor, const Grid& g) {
  Matrix<double> out = base;
  for (Index n = 0; n < out.rows(); ++n) out.row(n).array() *= factor.transpose().array();
  return Field(g, std::move(out));
}

}  // namespace

Semimartingale example1_fields(const Profile& f1, const BrownianPath& path) {
  const Grid& g = path.grid;
  require_profile(f1, g);
  Matrix<double> v(g.nt() + 1, g.nx());
  for (Index n = 0; n <= g.nt(); ++n) v.row(n) = (f1.f * path.w[n]).array().exp().transpose();
  const Eigen::VectorXd f = f1.f;
  const Eigen::VectorXd f2 = f.array().square();
  const Eigen::VectorXd f3 = f.array().cube();
  return Semimartingale(Field(g, v), scaled_rows(v, 0.5 * f2, g), scaled_rows(v, f, g),
                        scaled_rows(v, 0.5 * f3, g), scaled_rows(v, f2, g), scaled_rows(v, f3, g));
}

Semimartingale example2_fields(const Profile& f2, const BrownianPath& path) {
  const Grid& g = path.grid;
  require_profile(f2, g);
  for (Index i = 0; i < g.nx(); ++i) {
    if (!(f2.f[i] > 0.0)) {
      std::ostringstream msg;
      msg << "second family: profile must be positive, fails at x=" << g.x(i);
      throw DomainError(msg.str());
    }
  }
  Matrix<double> v(g.nt() + 1, g.nx());
  for (Index n = 0; n <= g.nt(); ++n) v.row(n) = (f2.f * std::exp(path.w[n])).transpose();
  const Field V(g, v);
  const Field half(g, 0.5 * v);
  return Semimartingale(V, half, V, half, V, V);
}

CoefficientSystem example1_system(double f, double f1, double f2, const SigmaPoint& sig, double w) {
  const double s = sig.value;
  const double ps = sig.psi;
  const double as = sig.drift;
  CoefficientSystem sys;
  sys.A << s * f1 * w + f, 1.0,
           s * f1 * (1.0 + f * w) - ps * f / s + f * f, f;
  sys.b << 0.5 * f * f + 0.5 * s * s * (f2 + f1 * f1 * w) * w + s * f1 * (1.0 + f * w),
           0.5 * f * f * f + 0.5 * s * s * (f2 + 2.0 * f1 * f1 * w + f * f2 * w + f * f1 * f1 * w * w) -
               ps * f1 * (1.0 + f * w) - (as / s - ps * ps / (s * s)) * f + s * f * f1 * (2.0 + f * w) -
               (ps / s) * f * f;
  return sys;
}

CoefficientSystem example2_system(double f, double f1, double f2, const SigmaPoint& sig) {
  const double s = sig.value;
  const double ps = sig.psi;
  const double as = sig.drift;
  CoefficientSystem sys;
  sys.A << s * f1 + f, f,
           s * f1 - ps * f / s + f, f;
  sys.b << 0.5 * f + 0.5 * s * s * f2 + s * f1,
           0.5 * f + 0.5 * s * s * f2 - ps * f1 - (as / s - ps * ps / (s * s)) * f + s * f1 - (ps / s) * f;
  return sys;
}

CoefficientSolution solve_coefficient_system(const CoefficientSystem& sys, std::optional<double> pinned_m) {
  const Eigen::Matrix2d& A = sys.A;
  const Eigen::Vector2d& b = sys.b;
  const double det = A.determinant();
  const double scale = std::fabs(A(0, 0) * A(1, 1)) + std::fabs(A(0, 1) * A(1, 0));
  if (std::fabs(det) > 1e-10 * scale) {
    const Eigen::Vector2d x = A.partialPivLu().solve(b);
    return {x[0], x[1], false};
  }
  // Rank one: keep the row of larger norm.
  const Index k = A.row(0).norm() >= A.row(1).norm() ? 0 : 1;
  const Eigen::RowVector2d row = A.row(k);
  if (row.norm() == 0.0) throw SingularityError("coefficient system: both equations are degenerate");
  Eigen::Vector2d x;
  if (pinned_m) {
    if (row[1] == 0.0) throw SingularityError("coefficient system: c is undetermined with m pinned");
    x << *pinned_m, (b[k] - row[0] * *pinned_m) / row[1];
  } else {
    x = row.transpose() * (b[k] / row.squaredNorm());
  }
  const double mismatch = (A * x - b).norm();
  if (mismatch > 1e-9 * (b.norm() + A.norm() * x.norm() + 1e-300)) {
    std::ostringstream msg;
    msg << "coefficient system: singular and inconsistent (mismatch " << mismatch << ")";
    throw SingularityError(msg.str());
  }
  return {x[0], x[1], true};
}

CoefficientSolution example1_solve_coefficients(double f, double f1, double f2, const SigmaPoint& sigma, double w,
                                                std::optional<double> pinned_m) {
  return solve_coefficient_system(example1_system(f, f1, f2, sigma, w), pinned_m);
}

CoefficientSolution example2_solve_coefficients(double f, double f1, double f2, const SigmaPoint& sigma,
                                                std::optional<double> pinned_m) {
  return solve_coefficient_system(example2_system(f, f1, f2, sigma), pinned_m);
}

namespace {

template <typename Solve>
FamilyCoefficients solve_on_lattice(const Profile& prof, const Process& sigma, const BrownianPath& path,
                                    Solve&& solve) {
  const Grid& g = path.grid;
  require_profile(prof, g);
  require_same_grid(sigma.grid(), g, "family coefficients");
  const Eigen::VectorXd a = sigma.drift_or_zero();
  const Eigen::VectorXd ps = sigma.psi_or_zero();
  Matrix<double> m(g.nt() + 1, g.nx()), c(g.nt() + 1, g.nx());
  Index dependent = 0;
  for (Index n = 0; n <= g.nt(); ++n) {
    const SigmaPoint sp{sigma[n], a[n], ps[n]};
    for (Index i = 0; i < g.nx(); ++i) {
      CoefficientSolution s;
      try {
        s = solve(prof.f[i], prof.d1[i], prof.d2[i], sp, path.w[n]);
      } catch (const SingularityError& e) {
        std::ostringstream msg;
        msg << e.what() << " at t=" << g.t(n) << ", x=" << g.x(i);
        throw SingularityError(msg.str());
      }
      m(n, i) = s.m;
      c(n, i) = s.c;
      dependent += s.dependent ? 1 : 0;
    }
  }
  return FamilyCoefficients{Field(g, std::move(m)), Field(g, std::move(c)), dependent};
}

}  // namespace

FamilyCoefficients example1_coefficients(const Profile& f1, const Process& sigma, const BrownianPath& path,
                                         std::optional<double> pinned_m) {
  return solve_on_lattice(f1, sigma, path, [&](double f, double d1, double d2, const SigmaPoint& sp, double w) {
    return example1_solve_coefficients(f, d1, d2, sp, w, pinned_m);
  });
}

FamilyCoefficients example2_coefficients(const Profile& f2, const Process& sigma, const BrownianPath& path,
                                         std::optional<double> pinned_m) {
  return solve_on_lattice(f2, sigma, path, [&](double f, double d1, double d2, const SigmaPoint& sp, double) {
    return example2_solve_coefficients(f, d1, d2, sp, pinned_m);
  });
}

FinanceParameters finance_parameters(int family, double parameter, double sigma) {
  if (!(sigma < 0.0)) throw DomainError("finance parameters: sigma must be negative");
  switch (family) {
    case 1:
      return {0.5 * parameter, -parameter / sigma, 0.0};
    case 2:
      if (!(parameter > 0.0)) throw DomainError("finance parameters: beta must be positive");
      return {0.5, -1.0 / sigma, 0.0};
    default:
      throw ConfigurationError("finance parameters: family must be 1 or 2");
  }
}

}  // namespace sburgers
