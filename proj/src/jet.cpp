#include <cmath>
#include <unordered_map>

#include "gtd/expr.hpp"

namespace gtd {
namespace {

using K = Expr::Kind;
using Series = Taylor<4>;
using Derivs = std::array<double, Series::order + 1>;

bool is_integer(double x) { return std::floor(x) == x; }

class Expander {
 public:
  explicit Expander(Point2 p)
      : p_(p),
        q1_(Series::variable(0, p.q1)),
        q2_(Series::variable(1, p.q2)) {}

  const Series& expand(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Series s = compute(e);
    return memo_.emplace(e.id(), s).first->second;
  }

 private:
  Point2 p_;
  Series q1_, q2_;
  std::unordered_map<const void*, Series> memo_;

  [[noreturn]] void fail(const Expr& e, const char* what) const {
    throw Error(ErrorKind::DomainError,
                std::string(what) + " in '" + to_string(e) + "'", p_);
  }

  Series compute(const Expr& e) {
    switch (e.kind()) {
      case K::Constant: return Series(e.number());
      case K::Variable: return e.variable_id() == Var::q1 ? q1_ : q2_;
      case K::Sum: return expand(e.lhs()) + expand(e.rhs());
      case K::Negate: return -expand(e.lhs());
      case K::Product: return expand(e.lhs()) * expand(e.rhs());
      case K::Quotient: {
        const Series& den = expand(e.rhs());
        if (den.value() == 0.0) fail(e, "division by zero");
        return expand(e.lhs()) / den;
      }
      case K::Power: return power(e);
      case K::Log: {
        const Series& x = expand(e.lhs());
        const double a = x.value();
        if (!(a > 0.0)) fail(e, "log of a non-positive value");
        Derivs d{};
        d[0] = std::log(a);
        // d^k/dt^k log t = (-1)^{k-1} (k-1)! / t^k
        double term = 1.0 / a;
        for (int k = 1; k <= Series::order; ++k) {
          d[k] = term;
          term *= -static_cast<double>(k) / a;
        }
        return x.compose(d);
      }
      case K::Exp: {
        const Series& x = expand(e.lhs());
        const double v = std::exp(x.value());
        if (!std::isfinite(v)) fail(e, "exp overflow");
        Derivs d;
        d.fill(v);
        return x.compose(d);
      }
    }
    return Series();
  }

  Series power(const Expr& e) {
    const Series& x = expand(e.lhs());
    const double a = x.value();
    const double p = e.number();
    const bool integral = is_integer(p);
    if (!integral && !(a > 0.0))
      fail(e, "non-integer power of a non-positive value");
    if (integral && p >= 0.0 && p <= Series::order) {
      // Exact polynomial power; also valid at a = 0.
      Series r(1.0);
      for (int k = 0; k < static_cast<int>(p); ++k) r = r * x;
      return r;
    }
    if (a == 0.0) fail(e, "negative power of zero");
    Derivs d{};
    double falling = 1.0;
    for (int k = 0; k <= Series::order; ++k) {
      d[k] = falling * std::pow(a, p - k);
      falling *= (p - k);
    }
    return x.compose(d);
  }
};

}  // namespace

Taylor<2> Jet4::shifted(int i, int j) const {
  Taylor<2> t;
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; a + b <= 2; ++b) {
      t.coef(a, b) = (*this)(i + a, j + b) /
                     (Taylor<2>::factorial(a) * Taylor<2>::factorial(b));
    }
  }
  return t;
}

Jet4 jet(const Expr& e, Point2 p) {
  Expander ex(p);
  const Series& s = ex.expand(e);
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; i + j <= 4; ++j) {
      if (!std::isfinite(s.coef(i, j)))
        throw Error(ErrorKind::DomainError,
                    "non-finite derivative of '" + to_string(e) + "'", p);
    }
  }
  return Jet4(s);
}

}  // namespace gtd
