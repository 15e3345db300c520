#include "gtd/expr.hpp"

#include <cmath>
#include <cstdio>

namespace gtd {

struct Expr::Node {
  Kind kind = Kind::Constant;
  double number = 0.0;
  Var var = Var::q1;
  Expr a{nullptr};
  Expr b{nullptr};
};

namespace {

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

}  // namespace

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->number = value;
  return Expr(std::move(n));
}

Expr Expr::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->var = v;
  return Expr(std::move(n));
}

#define GTD_BINARY(NAME, KIND)                \
  Expr Expr::NAME(Expr a, Expr b) {           \
    auto n = std::make_shared<Node>();        \
    n->kind = Kind::KIND;                     \
    n->a = std::move(a);                      \
    n->b = std::move(b);                      \
    return Expr(std::move(n));                \
  }

GTD_BINARY(sum, Sum)
GTD_BINARY(product, Product)
GTD_BINARY(quotient, Quotient)
#undef GTD_BINARY

#define GTD_UNARY(NAME, KIND)          \
  Expr Expr::NAME(Expr a) {            \
    auto n = std::make_shared<Node>(); \
    n->kind = Kind::KIND;              \
    n->a = std::move(a);               \
    return Expr(std::move(n));         \
  }

GTD_UNARY(log, Log)
GTD_UNARY(exp, Exp)
GTD_UNARY(negate, Negate)
#undef GTD_UNARY

Expr Expr::power(Expr base, double exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->a = std::move(base);
  n->number = exponent;
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::number() const { return node_->number; }
Var Expr::variable_id() const { return node_->var; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }

bool Expr::depends_on(Var v) const {
  switch (kind()) {
    case Kind::Constant: return false;
    case Kind::Variable: return variable_id() == v;
    case Kind::Sum:
    case Kind::Product:
    case Kind::Quotient: return lhs().depends_on(v) || rhs().depends_on(v);
    default: return lhs().depends_on(v);
  }
}

double Expr::evaluate(Point2 p) const {
  auto fail = [&](const char* what) -> double {
    throw Error(ErrorKind::DomainError,
                std::string(what) + " in '" + to_string(*this) + "'", p);
  };
  switch (kind()) {
    case Kind::Constant: return number();
    case Kind::Variable: return variable_id() == Var::q1 ? p.q1 : p.q2;
    case Kind::Sum: return lhs().evaluate(p) + rhs().evaluate(p);
    case Kind::Product: return lhs().evaluate(p) * rhs().evaluate(p);
    case Kind::Quotient: {
      const double den = rhs().evaluate(p);
      if (den == 0.0) return fail("division by zero");
      return lhs().evaluate(p) / den;
    }
    case Kind::Power: {
      const double base = lhs().evaluate(p);
      if (!is_integer(number()) && base < 0.0)
        return fail("non-integer power of a negative value");
      if (base == 0.0 && number() < 0.0) return fail("negative power of zero");
      return std::pow(base, number());
    }
    case Kind::Log: {
      const double x = lhs().evaluate(p);
      if (!(x > 0.0)) return fail("log of a non-positive value");
      return std::log(x);
    }
    case Kind::Exp: {
      const double r = std::exp(lhs().evaluate(p));
      if (!std::isfinite(r)) return fail("exp overflow");
      return r;
    }
    case Kind::Negate: return -lhs().evaluate(p);
  }
  return 0.0;
}

namespace {

std::string number_text(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string to_string(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant: {
      const std::string s = number_text(e.number());
      return e.number() < 0.0 ? "(" + s + ")" : s;
    }
    case K::Variable: return e.variable_id() == Var::q1 ? "q1" : "q2";
    case K::Sum: return "(" + to_string(e.lhs()) + " + " + to_string(e.rhs()) + ")";
    case K::Product:
      return "(" + to_string(e.lhs()) + " * " + to_string(e.rhs()) + ")";
    case K::Quotient:
      return "(" + to_string(e.lhs()) + " / " + to_string(e.rhs()) + ")";
    case K::Power: {
      std::string base = to_string(e.lhs());
      if (e.lhs().kind() != K::Variable && base.front() != '(')
        base = "(" + base + ")";
      return base + "^" + number_text(e.number());
    }
    case K::Log: return "log(" + to_string(e.lhs()) + ")";
    case K::Exp: return "exp(" + to_string(e.lhs()) + ")";
    case K::Negate: return "(-" + to_string(e.lhs()) + ")";
  }
  return {};
}

}  // namespace gtd
