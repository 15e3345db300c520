#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "gtd/error.hpp"
#include "gtd/taylor.hpp"

namespace gtd {

enum class Var { q1, q2 };

/// Immutable expression tree over the two extensive variables q1, q2.
///
/// Nodes are shared between trees, so copying an Expr is cheap and
/// derivative trees reuse the subtrees of their source.
class Expr {
 public:
  enum class Kind {
    Constant,
    Variable,
    Sum,
    Product,
    Quotient,
    Power,
    Log,
    Exp,
    Negate
  };

  static Expr constant(double value);
  static Expr variable(Var v);
  static Expr sum(Expr a, Expr b);
  static Expr product(Expr a, Expr b);
  static Expr quotient(Expr a, Expr b);
  static Expr power(Expr base, double exponent);
  static Expr log(Expr a);
  static Expr exp(Expr a);
  static Expr negate(Expr a);

  Kind kind() const;
  /// Constant value (Constant) or exponent (Power).
  double number() const;
  Var variable_id() const;
  /// First operand of Sum/Product/Quotient/Power/Log/Exp/Negate.
  const Expr& lhs() const;
  /// Second operand of Sum/Product/Quotient.
  const Expr& rhs() const;

  bool depends_on(Var v) const;

  /// Plain double evaluation. Throws DomainError when a subexpression
  /// leaves its real domain.
  double evaluate(Point2 p) const;

  /// Identity of the shared node, for memoization keyed on subtrees.
  const void* id() const { return node_.get(); }

  friend Expr operator+(Expr a, Expr b) { return sum(std::move(a), std::move(b)); }
  friend Expr operator-(Expr a, Expr b) {
    return sum(std::move(a), negate(std::move(b)));
  }
  friend Expr operator*(Expr a, Expr b) {
    return product(std::move(a), std::move(b));
  }
  friend Expr operator/(Expr a, Expr b) {
    return quotient(std::move(a), std::move(b));
  }
  friend Expr operator-(Expr a) { return negate(std::move(a)); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the textual grammar documented in the README. Aliases u -> q1 and
/// v -> q2; sqrt(e) becomes Power(e, 0.5).
Expr parse(std::string_view text);

/// Fully parenthesized text that parse() maps back to an equivalent tree.
std::string to_string(const Expr& e);

/// Exact symbolic partial derivative. Applies only local algebraic
/// shortcuts (0 + x, 1 * x, constant folding); trees may still grow.
Expr differentiate(const Expr& e, Var v);

/// All partials of a scalar field up to total order 4 at one point.
class Jet4 {
 public:
  Jet4() = default;
  explicit Jet4(const Taylor<4>& series) : series_(series) {}

  /// d^{i+j} Phi / dq1^i dq2^j, i + j <= 4.
  double operator()(int i, int j) const { return series_.derivative(i, j); }

  /// Degree-2 expansion of the partial d^{i+j}Phi/dq1^i dq2^j, valid for
  /// i + j <= 2.
  Taylor<2> shifted(int i, int j) const;

  const Taylor<4>& series() const { return series_; }

 private:
  Taylor<4> series_;
};

/// Exact partials to order 4 by truncated Taylor arithmetic over the tree.
/// Throws DomainError naming the offending subexpression.
Jet4 jet(const Expr& e, Point2 p);

}  // namespace gtd
