#pragma once

#include <array>
#include <cstddef>

namespace gtd {

/// Truncated bivariate Taylor polynomial of total degree <= Order around a
/// point. Coefficient (i, j) multiplies dq1^i dq2^j, so it equals the partial
/// derivative d^{i+j}/dq1^i dq2^j divided by i! j!.
template <int Order>
class Taylor {
 public:
  static constexpr int order = Order;
  static constexpr std::size_t size = (Order + 1) * (Order + 2) / 2;

  constexpr Taylor() = default;
  constexpr explicit Taylor(double constant) { c_[0] = constant; }

  static constexpr std::size_t index(int i, int j) {
    const int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
  }

  /// The independent variable q1 (axis 0) or q2 (axis 1) expanded at `at`.
  static Taylor variable(int axis, double at) {
    Taylor t(at);
    if constexpr (Order >= 1) t.c_[axis == 0 ? index(1, 0) : index(0, 1)] = 1.0;
    return t;
  }

  constexpr double coef(int i, int j) const { return c_[index(i, j)]; }
  constexpr double& coef(int i, int j) { return c_[index(i, j)]; }
  constexpr double value() const { return c_[0]; }

  /// Partial derivative d^{i+j}/dq1^i dq2^j at the expansion point.
  double derivative(int i, int j) const {
    return coef(i, j) * factorial(i) * factorial(j);
  }

  Taylor& operator+=(const Taylor& o) {
    for (std::size_t k = 0; k < size; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    for (std::size_t k = 0; k < size; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Taylor& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator*(Taylor a, double s) { return a *= s; }
  friend Taylor operator*(double s, Taylor a) { return a *= s; }
  friend Taylor operator-(Taylor a) { return a *= -1.0; }

  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    Taylor r;
    for (int i = 0; i <= Order; ++i) {
      for (int j = 0; i + j <= Order; ++j) {
        double s = 0.0;
        for (int a1 = 0; a1 <= i; ++a1) {
          for (int b1 = 0; b1 <= j; ++b1) {
            s += a.coef(a1, b1) * b.coef(i - a1, j - b1);
          }
        }
        r.coef(i, j) = s;
      }
    }
    return r;
  }

  /// f(*this) for a univariate f given its derivatives f^(k)(value()),
  /// k = 0..Order.
  Taylor compose(const std::array<double, Order + 1>& fderiv) const {
    Taylor h = *this;
    h.c_[0] = 0.0;
    Taylor r(fderiv[0]);
    Taylor hk(1.0);
    double kfact = 1.0;
    for (int k = 1; k <= Order; ++k) {
      hk = hk * h;
      kfact *= k;
      r += hk * (fderiv[k] / kfact);
    }
    return r;
  }

  Taylor reciprocal() const {
    std::array<double, Order + 1> d{};
    const double a = value();
    double term = 1.0 / a;
    for (int k = 0; k <= Order; ++k) {
      d[k] = term;
      term *= -(k + 1) / a;
    }
    return compose(d);
  }

  friend Taylor operator/(const Taylor& a, const Taylor& b) {
    return a * b.reciprocal();
  }

  static constexpr double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  }

 private:
  std::array<double, size> c_{};
};

}  // namespace gtd
