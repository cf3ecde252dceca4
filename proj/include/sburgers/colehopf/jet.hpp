#pragma once

#include <utility>

namespace sburgers {

/// Value together with its first two martingale parts: v, Psi^v, Psi^{Psi^v}.
/// Products and quotients follow the Leibniz rule for martingale parts, so a
/// rational expression of jets yields the martingale parts of the result.
/// T is any type with elementwise arithmetic (double, Eigen arrays).
template <typename T>
struct Jet {
  T v;
  T d1;
  T d2;
};

template <typename T>
Jet<T> operator+(const Jet<T>& a, const Jet<T>& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

template <typename T>
Jet<T> operator-(const Jet<T>& a, const Jet<T>& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}

template <typename T>
Jet<T> operator-(const Jet<T>& a) {
  return {-a.v, -a.d1, -a.d2};
}

template <typename T>
Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

template <typename T>
Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) {
  T q0 = a.v / b.v;
  T q1 = (a.d1 - q0 * b.d1) / b.v;
  T q2 = (a.d2 - 2.0 * q1 * b.d1 - q0 * b.d2) / b.v;
  return {std::move(q0), std::move(q1), std::move(q2)};
}

}  // namespace sburgers
