#include <doctest.h>

#include <cmath>
#include <random>

#include "gtd/isothermal.hpp"
#include "gtd/thermo.hpp"
#include "../support/oracles.hpp"

using namespace gtd;
using namespace gtd::testing;

namespace {

// R^2 = Phi_11 + 2 Phi_12 + Phi_22 from symbolic second derivatives.
double r2_oracle(const Expr& s, Point2 p) {
  const Expr d1 = differentiate(s, Var::q1), d2 = differentiate(s, Var::q2);
  return differentiate(d1, Var::q1).evaluate(p) + 2 * differentiate(d1, Var::q2).evaluate(p) +
         differentiate(d2, Var::q2).evaluate(p);
}

const Grid kSmall = Grid::square(Axis{1e-2, 1e2, 12, true});

}  // namespace

TEST_CASE("entropy of the family") {
  const Point2 p{2.0, 3.0};
  CHECK(entropy({-1.0, 1.0, 1.0}).evaluate(p) == doctest::Approx(std::log(0.5 + 1.0 / 3.0)));
  CHECK(entropy({2.0, 2.5, 3.0}).evaluate(p) == doctest::Approx(2.5 * std::log(4.0 + 27.0)));
  CHECK(to_string(entropy({-1.0, 1.0, 1.0})) == to_string(parse("log(q1^-1 + q2^-1)")));
  for (double bad : {0.0, 1.0, std::nan("")}) {
    try {
      entropy({bad, 1.0, 1.0});
      FAIL("expected InvalidFamily");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidFamily);
    }
  }
  CHECK(ChaplyginFamily{-2.0}.expected_curvature() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("radius squared of the family") {
  CHECK(radius_squared(entropy({-1.0, 1.0, 1.0}), {1, 1}) == doctest::Approx(1.0));
  std::mt19937 rng(8);
  for (double a : {-3.0, -1.0, -0.5, 0.5, 2.0, 3.0}) {
    const Expr s = entropy({a, 1.0, 1.0});
    for (int k = 0; k < 20; ++k) {
      const Point2 p = random_point(rng, 0.05, 20.0);
      const double want = r2_oracle(s, p);
      CHECK(rel_err(radius_squared(s, p), want) <= 1e-10);
      CHECK(std::abs(radius_squared_closed_form(p.q1, p.q2, a) - want) <=
            1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("radius profile discrepancies against the closed forms") {
  const auto prof = radius_profile({-1.0, 1.0, 1.0}, kSmall);
  CHECK(prof.rows.size() == 144);
  CHECK(prof.closed_form_discrepancy <= 1e-10);
  CHECK(prof.printed_form_discrepancy > 1e-3);
  const auto scaled = radius_profile({-1.0, 2.0, 3.0}, kSmall);
  CHECK(std::isnan(scaled.closed_form_discrepancy));
  CHECK_THROWS_AS(radius_profile({-1.0}, Grid::square(Axis{-1, 1, 3, false})), Error);
}

TEST_CASE("pressure examples") {
  CHECK(pressure(1.0, -2.0) == 1.0);
  CHECK(pressure(2.0, -1.0) == doctest::Approx(4.0));
  CHECK(pressure(4.0, 0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(pressure(0.0, -1.0), Error);
}

TEST_CASE("heat capacity") {
  CHECK(std::abs(heat_capacity_cv(1, 1, -1) + 1.0 / 3.0) <= 1e-12);
  for (double a : {-3.0, -0.5, 0.5, 3.0})
    for (double u : {0.1, 1.0, 7.0})
      CHECK(heat_capacity_cv(u, u, a) == doctest::Approx(a / (2 - a)));
  // u^2 + (1 - 2) v^2 vanishes on u = v.
  try {
    heat_capacity_cv(2, 2, 2);
    FAIL("expected SingularDenominator");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularDenominator);
  }
  CHECK_THROWS_AS(heat_capacity_cv(-1, 1, -1), Error);
}

TEST_CASE("heat capacity sign laws") {
  const Grid grid = default_classification_grid();
  for (double a : {-3.0, -2.0, -1.0, -0.5, -0.05}) {
    const auto s = heat_capacity_summary(a, grid);
    CHECK(s.negative == 2500);
    CHECK(s.sign() == "negative");
  }
  for (double a : {0.2, 0.5, 0.9}) CHECK(heat_capacity_summary(a, grid).sign() == "positive");
  CHECK(heat_capacity_summary(2.0, grid).sign() == "mixed");
}

TEST_CASE("classification examples") {
  for (double a : {-3.0, -2.0, -1.0}) {
    const auto c = classify({a, 1.0, 1.0}, default_classification_grid());
    CHECK(c.verdict == Verdict::Physical);
    CHECK(c.min_R2 > 0.0);
    CHECK(c.radius_class == RadiusClass::positive_definite);
    REQUIRE(c.K);
    CHECK(*c.K == doctest::Approx(ChaplyginFamily{a}.expected_curvature()));
    CHECK(c.cv.sign() == "negative");
  }
  for (double a : {2.0, 3.0}) {
    const auto c = classify({a, 1.0, 1.0}, default_classification_grid());
    CHECK(c.verdict == Verdict::NonPhysical);
    CHECK(c.min_R2 < 0.0);
  }
}

TEST_CASE("verdicts do not depend on phi0 or c") {
  for (double a : {-2.0, -0.5, 2.0}) {
    const Verdict ref = classify({a, 1.0, 1.0}, kSmall).verdict;
    for (double phi0 : {0.5, 2.5})
      for (double c : {1.0, 3.0}) CHECK(classify({a, phi0, c}, kSmall).verdict == ref);
  }
}

TEST_CASE("serial and parallel radius profiles are identical") {
  const auto a = radius_profile({-2.0, 1.0, 1.0}, kSmall, Execution::serial);
  const auto b = radius_profile({-2.0, 1.0, 1.0}, kSmall, Execution::parallel);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) CHECK(a.rows[k].R2 == b.rows[k].R2);
}
