#include <cmath>

#include "gtd/expr.hpp"

namespace gtd {
namespace {

using K = Expr::Kind;

bool is_const(const Expr& e, double v) {
  return e.kind() == K::Constant && e.number() == v;
}

Expr add(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a.kind() == K::Constant && b.kind() == K::Constant)
    return Expr::constant(a.number() + b.number());
  return Expr::sum(a, b);
}

Expr neg(const Expr& a) {
  if (a.kind() == K::Constant) return Expr::constant(-a.number());
  if (a.kind() == K::Negate) return a.lhs();
  return Expr::negate(a);
}

Expr mul(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a.kind() == K::Constant && b.kind() == K::Constant)
    return Expr::constant(a.number() * b.number());
  return Expr::product(a, b);
}

Expr div(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0)) return Expr::constant(0.0);
  if (is_const(b, 1.0)) return a;
  return Expr::quotient(a, b);
}

Expr pow(const Expr& base, double exponent) {
  if (exponent == 0.0) return Expr::constant(1.0);
  if (exponent == 1.0) return base;
  if (base.kind() == K::Constant)
    return Expr::constant(std::pow(base.number(), exponent));
  return Expr::power(base, exponent);
}

}  // namespace

Expr differentiate(const Expr& e, Var v) {
  if (!e.depends_on(v)) return Expr::constant(0.0);
  switch (e.kind()) {
    case K::Constant: return Expr::constant(0.0);
    case K::Variable: return Expr::constant(e.variable_id() == v ? 1.0 : 0.0);
    case K::Sum:
      return add(differentiate(e.lhs(), v), differentiate(e.rhs(), v));
    case K::Negate: return neg(differentiate(e.lhs(), v));
    case K::Product:
      return add(mul(differentiate(e.lhs(), v), e.rhs()),
                 mul(e.lhs(), differentiate(e.rhs(), v)));
    case K::Quotient: {
      const Expr& a = e.lhs();
      const Expr& b = e.rhs();
      // (a'b - ab') / b^2
      return div(add(mul(differentiate(a, v), b), neg(mul(a, differentiate(b, v)))),
                 pow(b, 2.0));
    }
    case K::Power: {
      const double p = e.number();
      return mul(mul(Expr::constant(p), pow(e.lhs(), p - 1.0)),
                 differentiate(e.lhs(), v));
    }
    case K::Log: return div(differentiate(e.lhs(), v), e.lhs());
    case K::Exp: return mul(e, differentiate(e.lhs(), v));
  }
  return Expr::constant(0.0);
}

}  // namespace gtd
