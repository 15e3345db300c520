#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gtd/io.hpp"
#include "gtd/isothermal.hpp"
#include "gtd/thermo.hpp"
#include "../support/oracles.hpp"

using namespace gtd;
using namespace gtd::testing;

namespace {

const Grid kUnit = Grid::square(Axis{0.5, 2.0, 16, false});

double max_pullback(const Expr& phi, const CoordField& f) {
  double worst = 0.0;
  for (const auto& p : f.nodes()) worst = std::max(worst, pullback_residuals(phi, f, p).max_abs());
  return worst;
}

}  // namespace

TEST_CASE("pullback residuals of closed charts") {
  const Expr quad = parse("(q1^2 + q2^2)/2");
  const auto id = CoordField::closed(q1(), q2());
  const auto swap = CoordField::closed(q2(), q1());
  for (const auto& p : square_grid(-2.0, 2.0, 5)) {
    const auto r = pullback_residuals(quad, id, p);
    CHECK(r.r1 == 0.0);
    CHECK(r.r2 == 0.0);
    CHECK(r.r3 == 0.0);
    CHECK(pullback_residuals(quad, swap, p).max_abs() == 0.0);
  }
  // Phi = q1 q2 has Phi_12 = 1 but the identity chart has no cross term.
  const auto r = pullback_residuals(parse("q1*q2"), id, {3, -1});
  CHECK(r.r1 == 1.0);
  CHECK(r.r2 == -1.0);
  CHECK(r.r3 == 1.0);
}

TEST_CASE("separable charts solve the pullback system") {
  const std::pair<const char*, const char*> cases[] = {{"q1^2/2", "q2^2/2"}, {"q1^4", "q2^4"}};
  for (const auto& [s, t] : cases) {
    for (double c : {0.0, 0.5, -1.0}) {
      const Expr S = parse(s), T = parse(t);
      const auto f = separable_coords(S, T, c, kUnit);
      CHECK(f.has_exact_gradients());
      CHECK_MESSAGE(max_pullback(S + T, f) <= 1e-9, s << " c=" << c);
    }
  }
}

TEST_CASE("quadratic separable chart is the identity up to offsets") {
  const auto f = separable_coords(parse("q1^2/2"), parse("q2^2/2"), 0.0, kUnit);
  const double dx = f.x_values().front() - 0.5, dy = f.y_values().front() - 0.5;
  for (const auto& p : f.nodes()) {
    CHECK(std::abs(f.x(p) - p.q1 - dx) <= 1e-12);
    CHECK(std::abs(f.y(p) - p.q2 - dy) <= 1e-12);
  }
}

TEST_CASE("separable_coords rejects bad input") {
  try {
    separable_coords(parse("q1^2"), parse("q2^2"), 1.5, kUnit);
    FAIL("expected InvalidMixing");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidMixing);
  }
  try {
    separable_coords(parse("-q1^2"), parse("q2^2"), 0.0, kUnit);
    FAIL("expected NegativeRadicand");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeRadicand);
  }
  CHECK_THROWS_AS(separable_coords(parse("q1*q2"), parse("q2^2"), 0.0, kUnit), Error);
}

TEST_CASE("constraint residual examples") {
  for (const auto& p : square_grid(0.5, 3.0, 4)) {
    const auto a = constraint_residuals(parse("log(q1 + q2)"), p);
    CHECK(std::abs(a.c1) <= 1e-12);
    CHECK(std::abs(a.c2) <= 1e-12);
    const auto b = constraint_residuals(parse("q1^4 + exp(q2)"), p);
    CHECK(b.c1 == 0.0);
    CHECK(b.c2 == 0.0);
  }
  const auto r = constraint_residuals(parse("q1*q2^2"), {1, 1});
  CHECK(r.c1 == 0.0);
  CHECK(r.c2 == 2.0);
  try {
    constraint_residuals(parse("q1^3"), {1, 1});
    FAIL("expected SingularDenominator");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularDenominator);
  }
}

TEST_CASE("integrate_coords reproduces separable charts") {
  for (const auto& [s, t] : {std::pair{"q1^2/2", "q2^2/2"}, std::pair{"q1^4", "q2^4"}}) {
    const Expr S = parse(s), T = parse(t), phi = S + T;
    for (double c : {0.0, 0.5}) {
      const auto sep = separable_coords(S, T, c, kUnit);
      const auto got = integrate_coords(phi, num(c), kUnit);
      CHECK(max_pullback(phi, got.field) <= 1e-9);
      CHECK(got.max_compatibility <= 1e-6);
      // Same chart up to the sign of x_1 (the branch at the base point).
      for (std::size_t i = 0; i < 16; ++i) {
        for (std::size_t j = 0; j < 16; ++j) {
          const auto a = sep.gradient_at(i, j), b = got.field.gradient_at(i, j);
          CHECK(std::abs(std::abs(a.x1) - std::abs(b.x1)) <= 1e-10);
          CHECK(std::abs(a.x2 - b.x2) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("integrate_coords on a relation violating the constraints") {
  const Expr s = entropy({-1.0, 1.0, 1.0});
  const auto c = constraint_residuals(s, {1.3, 2.7});
  CHECK(std::abs(c.c1) > 1e-2);
  try {
    integrate_coords(s, num(0.5), kUnit);
    FAIL("expected ConstraintViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConstraintViolated);
    CHECK(e.where());
  }
  IntegrateOptions opts;
  opts.check_constraints = false;
  const auto forced = integrate_coords(s, num(0.5), kUnit, opts);
  CHECK(forced.max_compatibility > 1e-4);
}

TEST_CASE("log-linear charts are never real") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int k = 0; k < 50; ++k) {
    const double c = dist(rng);
    const auto ll = loglinear_coords(1.0, 2.0, c);
    CHECK_FALSE(ll.real);
    CHECK(ll.y_coefficient == doctest::Approx(std::sqrt(1 + c * c)));
    for (const auto& p : square_grid(0.5, 3.0, 4))
      CHECK(loglinear_residuals(ll, p).max_abs() <= 1e-12);
  }
  CHECK_FALSE(loglinear_coords(3.0, -0.5, 0.0).real);
  CHECK_THROWS_AS(loglinear_coords(1.0, 0.0, 0.0), Error);
}

TEST_CASE("radius of log-linear relations") {
  const auto want = [](double xi, double chi, Point2 p) {
    const double w = xi * p.q1 + chi * p.q2;
    return -(xi + chi) * (xi + chi) / (w * w);
  };
  CHECK(radius_squared(parse("log(q1 + q2)"), {1, 1}) == doctest::Approx(-1.0));
  CHECK(radius_squared(parse("log(2*q1 + q2)"), {2, 1}) == doctest::Approx(-9.0 / 25.0));
  CHECK(radius_squared(parse("log(q1 - q2)"), {2, 1}) == 0.0);
  for (const auto& [xi, chi] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}, std::pair{0.3, 4.0}}) {
    const auto ll = loglinear_coords(xi, chi, 0.0);
    for (const auto& p : square_grid(0.5, 5.0, 10)) {
      const double r = radius_squared(ll.phi, p);
      CHECK(std::abs(r - want(xi, chi, p)) <= 1e-12 * std::abs(want(xi, chi, p)));
    }
  }
}

TEST_CASE("radius is symmetric under u <-> v for symmetric families") {
  std::mt19937 rng(4);
  for (double a : {-3.0, -1.0, 0.5, 2.0}) {
    const Expr s = entropy({a, 1.0, 1.0});
    for (int k = 0; k < 20; ++k) {
      const Point2 p = random_point(rng, 0.1, 10.0);
      const double lhs = radius_squared(s, p), rhs = radius_squared(s, {p.q2, p.q1});
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("circumference residual equals r1 + 2 r2 + r3") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const Expr phi = random_polynomial(rng, 5, 3, 1.0);
    const Point2 p = random_point(rng, -1.0, 1.0);
    const Jet4 j = jet(phi, p);
    const CoordGradient g{d(rng), d(rng), d(rng), d(rng)};
    const auto s = circumference_check(j, g);
    const auto r = pullback_residuals(j, g);
    CHECK(std::abs(s.residual - (r.r1 + 2 * r.r2 + r.r3)) <= 1e-12);
  }
}

TEST_CASE("on-circle charts need not solve the pullback system") {
  const Expr quad = parse("(q1^2 + q2^2)/2");
  const auto diag = CoordField::closed(parse("(q1 + q2) / 2^0.5"), num(0.0));
  const Point2 p{0.7, 1.9};
  const auto s = circumference_check(quad, diag, p);
  CHECK(std::abs(s.residual) <= 1e-14);
  CHECK(s.R2 == 2.0);
  const auto r = pullback_residuals(quad, diag, p);
  CHECK(r.r2 == doctest::Approx(0.5));

  const auto zero = CoordField::closed(num(0.0), num(0.0));
  CHECK(circumference_check(quad, zero, p).residual == -2.0);
}

TEST_CASE("node_derivative is exact for quadratics on nonuniform nodes") {
  const std::vector<double> t = {0.0, 0.3, 1.0, 1.2, 2.5};
  std::vector<double> f;
  for (double x : t) f.push_back(2 * x * x - x + 3);
  for (std::size_t k = 0; k < t.size(); ++k)
    CHECK(node_derivative(t, f, k) == doctest::Approx(4 * t[k] - 1).epsilon(1e-12));
}

TEST_CASE("coordinate CSV round trip") {
  const Expr S = parse("q1^2/2"), T = parse("q2^2/2");
  const auto f = separable_coords(S, T, 0.5, kUnit);
  std::stringstream io;
  write_coord_csv(io, S + T, f);
  CHECK(io.str().rfind("q1,q2,x,y,r1,r2,r3\n", 0) == 0);
  const auto back = read_coord_csv(io);
  CHECK_FALSE(back.has_exact_gradients());
  CHECK(back.q1_nodes() == f.q1_nodes());
  // Linear chart: central differences are exact up to rounding.
  CHECK(max_pullback(S + T, back) <= 1e-9);

  const Expr quartic = parse("q1^4 + q2^4");
  const auto g = separable_coords(parse("q1^4"), parse("q2^4"), 0.0, kUnit);
  std::stringstream io2;
  write_coord_csv(io2, quartic, g);
  const auto back2 = read_coord_csv(io2);
  // x = sqrt(3) q1^2: quadratic, so the three-point rule is still exact.
  CHECK(max_pullback(quartic, back2) <= 1e-9);

  std::stringstream bad("q1,q2,x\n1,2,3\n");
  CHECK_THROWS_AS(read_coord_csv(bad), Error);
}
