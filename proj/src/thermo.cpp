#include "gtd/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gtd/isothermal.hpp"
#include "gtd/parallel.hpp"

namespace gtd {

void ChaplyginFamily::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(phi0) || !std::isfinite(c))
    throw Error(ErrorKind::InvalidFamily, "family parameters must be finite");
  if (alpha == 0.0)
    throw Error(ErrorKind::InvalidFamily, "alpha = 0 gives a constant relation");
  if (alpha == 1.0)
    throw Error(ErrorKind::InvalidFamily,
                "alpha = 1 gives a degenerate metric determinant");
}

double ChaplyginFamily::expected_curvature() const {
  return -alpha * alpha / (4.0 * (alpha - 1.0));
}

Expr entropy(const ChaplyginFamily& family) {
  family.validate();
  const Expr u = Expr::power(Expr::variable(Var::q1), family.alpha);
  Expr v = Expr::power(Expr::variable(Var::q2), family.alpha);
  if (family.c != 1.0) v = Expr::constant(family.c) * v;
  Expr s = Expr::log(u + v);
  if (family.phi0 != 1.0) s = Expr::constant(family.phi0) * s;
  return s;
}

std::string_view to_string(RadiusClass c) {
  switch (c) {
    case RadiusClass::positive_definite: return "positive-definite";
    case RadiusClass::indefinite: return "indefinite";
    case RadiusClass::negative: return "negative";
  }
  return "";
}

std::string_view to_string(Verdict v) {
  return v == Verdict::Physical ? "Physical" : "NonPhysical";
}

double radius_squared_closed_form(double u, double v, double a,
                                  int denominator_power) {
  const double ua = std::pow(u, a), va = std::pow(v, a);
  const double bracket = std::pow(u, 2.0 * a) * v * v -
                         va * ua * ((a - 1.0) * u * u - 2.0 * a * u * v + v * v * (a - 1.0)) +
                         std::pow(v, 2.0 * a) * u * u;
  return -a / (u * u * v * v * std::pow(ua + va, denominator_power)) * bracket;
}

namespace {

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

}  // namespace

RadiusProfile radius_profile(const ChaplyginFamily& family, const Grid& grid,
                             Execution exec) {
  const Expr s = entropy(family);
  const auto pts = grid.points();
  if (pts.empty()) throw Error(ErrorKind::InvalidInput, "empty grid");
  for (const auto& p : pts) {
    if (!(p.q1 > 0.0 && p.q2 > 0.0))
      throw Error(ErrorKind::DomainError, "u and v must be positive", p);
  }
  RadiusProfile prof;
  prof.alpha = family.alpha;
  prof.rows = parallel_map(pts.size(), exec, [&](std::size_t k) {
    return RadiusRow{pts[k].q1, pts[k].q2, radius_squared(s, pts[k])};
  });
  prof.min_R2 = std::numeric_limits<double>::infinity();
  prof.max_R2 = -std::numeric_limits<double>::infinity();
  const bool unit_family = family.phi0 == 1.0 && family.c == 1.0;
  prof.closed_form_discrepancy = unit_family ? 0.0 : std::nan("");
  prof.printed_form_discrepancy = prof.closed_form_discrepancy;
  for (const auto& r : prof.rows) {
    prof.min_R2 = std::min(prof.min_R2, r.R2);
    prof.max_R2 = std::max(prof.max_R2, r.R2);
    if (unit_family) {
      prof.closed_form_discrepancy =
          std::max(prof.closed_form_discrepancy,
                   relative_gap(r.R2, radius_squared_closed_form(r.u, r.v, family.alpha, 2)));
      prof.printed_form_discrepancy =
          std::max(prof.printed_form_discrepancy,
                   relative_gap(r.R2, radius_squared_closed_form(r.u, r.v, family.alpha, 1)));
    }
  }
  if (prof.min_R2 > 0.0)
    prof.classification = RadiusClass::positive_definite;
  else if (prof.max_R2 < 0.0)
    prof.classification = RadiusClass::negative;
  else
    prof.classification = RadiusClass::indefinite;
  return prof;
}

double pressure(double rho, double alpha) {
  if (!(rho > 0.0))
    throw Error(ErrorKind::DomainError, "density must be positive");
  return std::pow(rho, 1.0 - alpha);
}

double heat_capacity_cv(double u, double v, double alpha) {
  const Point2 at{u, v};
  if (!(u > 0.0 && v > 0.0))
    throw Error(ErrorKind::DomainError, "u and v must be positive", at);
  const double ua = std::pow(u, alpha);
  const double rest = (1.0 - alpha) * std::pow(v, alpha);
  const double den = ua + rest;
  if (!(std::abs(den) > 1e-14 * (std::abs(ua) + std::abs(rest))))
    throw Error(ErrorKind::SingularDenominator,
                "u^alpha + (1 - alpha) v^alpha vanishes", at);
  return alpha * ua / den;
}

std::string_view HeatCapacitySummary::sign() const {
  if (singular == 0 && zero == 0 && positive == 0 && negative > 0) return "negative";
  if (singular == 0 && zero == 0 && negative == 0 && positive > 0) return "positive";
  return "mixed";
}

HeatCapacitySummary heat_capacity_summary(double alpha, const Grid& grid) {
  HeatCapacitySummary s;
  for (const auto& p : grid.points()) {
    double cv;
    try {
      cv = heat_capacity_cv(p.q1, p.q2, alpha);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularDenominator) throw;
      ++s.singular;
      continue;
    }
    if (cv < 0.0)
      ++s.negative;
    else if (cv > 0.0)
      ++s.positive;
    else
      ++s.zero;
  }
  return s;
}

Classification classify(const ChaplyginFamily& family, const Grid& grid,
                        Execution exec) {
  const RadiusProfile prof = radius_profile(family, grid, exec);
  Classification c;
  c.alpha = family.alpha;
  c.min_R2 = prof.min_R2;
  c.max_R2 = prof.max_R2;
  c.radius_class = prof.classification;
  c.verdict = prof.classification == RadiusClass::positive_definite
                  ? Verdict::Physical
                  : Verdict::NonPhysical;
  try {
    ScanOptions opts;
    opts.execution = exec;
    c.K = curvature_scan(entropy(family), MetricKind::natural, grid, opts).K_mean;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AllPointsDegenerate) throw;
  }
  c.cv = heat_capacity_summary(family.alpha, grid);
  return c;
}

Grid default_classification_grid() {
  return Grid::square(Axis{1e-2, 1e2, 50, true});
}

}  // namespace gtd
