#include <doctest.h>

#include <cmath>
#include <random>

#include "gtd/expr.hpp"
#include "gtd/thermo.hpp"
#include "../support/oracles.hpp"

using namespace gtd;
using namespace gtd::testing;
using K = Expr::Kind;

TEST_CASE("parse builds the grammar tree") {
  const Expr e = parse("log(q1^2 + q2^2)");
  REQUIRE(e.kind() == K::Log);
  const Expr& sum = e.lhs();
  REQUIRE(sum.kind() == K::Sum);
  CHECK(sum.lhs().kind() == K::Power);
  CHECK(sum.lhs().number() == 2.0);
  CHECK(sum.lhs().lhs().variable_id() == Var::q1);
  CHECK(sum.rhs().lhs().variable_id() == Var::q2);

  const Expr uv = parse("u*v");
  REQUIRE(uv.kind() == K::Product);
  CHECK(uv.lhs().variable_id() == Var::q1);
  CHECK(uv.rhs().variable_id() == Var::q2);
}

TEST_CASE("parse precedence and associativity") {
  const Point2 p{1.5, 0.5};
  CHECK(parse("-q1^2").evaluate(p) == doctest::Approx(-2.25));
  CHECK(parse("2 + 3 * q1 ^ 2").evaluate(p) == doctest::Approx(2 + 3 * 2.25));
  CHECK(parse("q1 / q2 / 2").evaluate(p) == doctest::Approx(1.5));
  CHECK(parse("q1 - q2 - 1").evaluate(p) == doctest::Approx(0.0));
  // ^ is right-associative over literal exponents: q1^(2^3).
  CHECK(parse("q1^2^3").number() == 8.0);
  CHECK(parse("q1^-1").number() == -1.0);
  CHECK(parse("q1^(-0.5)").number() == -0.5);

  const Expr s = parse("sqrt(q1)");
  CHECK(s.kind() == K::Power);
  CHECK(s.number() == 0.5);
  CHECK(parse("exp(q2) * 1e-3").evaluate(p) == doctest::Approx(std::exp(0.5) * 1e-3));
}

TEST_CASE("parse errors carry position and expected tokens") {
  try {
    parse("log(q1^^2)");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 7);
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse("q1 +"), SyntaxError);
  CHECK_THROWS_AS(parse("(q1"), SyntaxError);
  CHECK_THROWS_AS(parse("q1 q2"), SyntaxError);
  CHECK_THROWS_AS(parse("q1^q2"), SyntaxError);
  try {
    parse("q1 + w");
    FAIL("expected UnknownIdentifier");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownIdentifier);
  }
}

TEST_CASE("differentiate examples") {
  const Point2 p{1.7, 2.3};
  const Expr cube = differentiate(Expr::power(q1(), 3), Var::q1);
  CHECK(cube.evaluate(p) == doctest::Approx(3 * 1.7 * 1.7));
  CHECK(differentiate(Expr::log(q2()), Var::q2).evaluate(p) == doctest::Approx(1 / 2.3));
  const Expr mixed = differentiate(differentiate(q1() * q2(), Var::q2), Var::q1);
  for (Point2 at : {Point2{0, 0}, Point2{-3, 4}, p}) CHECK(mixed.evaluate(at) == 1.0);
  CHECK(differentiate(Expr::constant(4), Var::q1).evaluate(p) == 0.0);
  CHECK(differentiate(Expr::exp(q1() * q2()), Var::q2).evaluate(p) ==
        doctest::Approx(1.7 * std::exp(1.7 * 2.3)));
  CHECK(differentiate(q1() / q2(), Var::q2).evaluate(p) ==
        doctest::Approx(-1.7 / (2.3 * 2.3)));
}

TEST_CASE("mixed partials commute at random points") {
  std::mt19937 rng(7);
  const std::vector<Expr> exprs = {
      parse("log(q1^-1 + q2^-1)"), parse("exp(q1*q2) / (1 + q1^2)"),
      parse("sqrt(q1^3 + 2*q2) * log(q2)"), random_polynomial(rng)};
  for (const auto& e : exprs) {
    const Expr a = differentiate(differentiate(e, Var::q1), Var::q2);
    const Expr b = differentiate(differentiate(e, Var::q2), Var::q1);
    for (int k = 0; k < 100; ++k) {
      const Point2 p = random_point(rng, 0.5, 2.0);
      const double va = a.evaluate(p), vb = b.evaluate(p);
      CHECK(std::abs(va - vb) <= 1e-12 * std::max(1.0, std::abs(va)));
    }
  }
}

TEST_CASE("print then parse is evaluation-equivalent") {
  std::mt19937 rng(11);
  std::vector<Expr> exprs = {parse("-log(u^-1 + v^-1) / (2 - v)"),
                             parse("exp(-q1) * sqrt(q2) - 3e-2 * q1^2.5"),
                             parse("-(q1 + -q2)^3")};
  for (int k = 0; k < 10; ++k) exprs.push_back(random_polynomial(rng));
  for (const auto& e : exprs) {
    const Expr back = parse(to_string(e));
    for (int k = 0; k < 20; ++k) {
      const Point2 p = random_point(rng, 0.5, 2.0);
      const double a = e.evaluate(p), b = back.evaluate(p);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("jet of log(q1) at (1,1)") {
  const Jet4 j = jet(parse("log(q1)"), {1, 1});
  const double want[] = {0, 1, -1, 2, -6};
  for (int k = 0; k <= 4; ++k) CHECK(j(k, 0) == doctest::Approx(want[k]).epsilon(1e-15));
  for (int k = 1; k <= 4; ++k) CHECK(j(0, k) == 0.0);
}

TEST_CASE("jet of q1*q2") {
  const Jet4 j = jet(parse("q1*q2"), {3, 5});
  CHECK(j(0, 0) == 15.0);
  CHECK(j(1, 1) == 1.0);
  CHECK(j(2, 0) == 0.0);
  CHECK(j(1, 0) == 5.0);
  CHECK(j(2, 2) == 0.0);
}

TEST_CASE("jet of log(q1^-1 + q2^-1) matches finite differences") {
  const Expr e = parse("log(q1^-1 + q2^-1)");
  const Point2 p{1, 1};
  const Jet4 j = jet(e, p);
  CHECK(j(0, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  for (int i = 0; i <= 3; ++i)
    for (int k = 0; i + k <= 3; ++k) CHECK(rel_err(j(i, k), fd_partial(e, i, k, p)) <= 1e-5);
}

TEST_CASE("jet agrees with finite differences for families and polynomials") {
  std::mt19937 rng(3);
  std::vector<Expr> exprs;
  for (double a : {-3.0, -2.0, -1.0, -0.5, 2.0, 3.0})
    exprs.push_back(entropy({a, 2.5, 3.0}));
  exprs.push_back(parse("(q1^-2 + q2^-2)^0.3"));
  for (int k = 0; k < 5; ++k) exprs.push_back(random_polynomial(rng));
  for (const auto& e : exprs) {
    for (int n = 0; n < 10; ++n) {
      const Point2 p = random_point(rng, 0.5, 3.0);
      const Jet4 j = jet(e, p);
      for (int i = 0; i <= 4; ++i) {
        for (int k = 0; i + k <= 4; ++k) {
          const double tol = i + k <= 3 ? 1e-5 : 1e-3;
          CHECK_MESSAGE(rel_err(j(i, k), fd_partial(e, i, k, p)) <= tol,
                        to_string(e) << " d" << i << k);
        }
      }
    }
  }
}

TEST_CASE("jet reports domain errors with the offending subexpression") {
  try {
    jet(parse("q2 + log(q1 - 2)"), {1, 1});
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainError);
    CHECK(std::string(e.what()).find("log") != std::string::npos);
    REQUIRE(e.where());
    CHECK(e.where()->q1 == 1.0);
  }
  CHECK_THROWS_AS(jet(parse("q1^0.5"), {-1, 1}), Error);
  CHECK_THROWS_AS(jet(parse("1 / (q1 - q2)"), {1, 1}), Error);
  // Integer powers are fine at zero and for negative bases.
  CHECK(jet(parse("q1^3"), {0, 1})(3, 0) == 6.0);
  CHECK(jet(parse("q1^-1"), {-2, 1})(1, 0) == doctest::Approx(-0.25));
}

TEST_CASE("jet and symbolic derivatives agree exactly to rounding") {
  const Expr e = parse("exp(q1 / q2) * log(1 + q1*q2)");
  const Point2 p{0.8, 1.9};
  const Jet4 j = jet(e, p);
  Expr d = e;
  for (int i = 0; i < 2; ++i) d = differentiate(d, Var::q1);
  for (int k = 0; k < 2; ++k) d = differentiate(d, Var::q2);
  CHECK(j(2, 2) == doctest::Approx(d.evaluate(p)).epsilon(1e-12));
}
