#include "gtd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gtd/parallel.hpp"

namespace gtd {

std::string_view to_string(MetricKind kind) {
  return kind == MetricKind::hessian ? "hessian" : "natural";
}

MetricKind parse_metric_kind(std::string_view text) {
  if (text == "hessian") return MetricKind::hessian;
  if (text == "natural") return MetricKind::natural;
  throw Error(ErrorKind::InvalidInput,
              "unknown metric '" + std::string(text) + "' (hessian|natural)");
}

bool MetricSample::degenerate(double threshold) const {
  const double scale = std::max({std::abs(g11), std::abs(g12), std::abs(g22)});
  return !(std::abs(det) > threshold * scale * scale);
}

MetricSample hessian_metric(const Jet4& j) {
  return {j(2, 0), j(1, 1), j(0, 2)};
}

MetricSample hessian_metric(const Expr& phi, Point2 p) {
  return hessian_metric(jet(phi, p));
}

double conformal_factor(const Jet4& j, Point2 p) {
  const double denom = p.q2 * j(0, 1);
  if (!(std::abs(denom) >= kConformalThreshold))
    throw Error(ErrorKind::SingularConformalFactor,
                "q2 * Phi_2 vanishes", p);
  return 1.0 / denom;
}

double conformal_factor(const Expr& phi, Point2 p) {
  return conformal_factor(jet(phi, p), p);
}

MetricSample natural_metric(const Jet4& j, Point2 p) {
  const double omega = conformal_factor(j, p);
  return {omega * j(2, 0), omega * j(1, 1), omega * j(0, 2)};
}

MetricSample natural_metric(const Expr& phi, Point2 p) {
  return natural_metric(jet(phi, p), p);
}

MetricJet metric_jet(const Jet4& j, MetricKind kind, Point2 p) {
  MetricJet g{j.shifted(2, 0), j.shifted(1, 1), j.shifted(0, 2)};
  if (kind == MetricKind::natural) {
    conformal_factor(j, p);  // throws when singular
    const Taylor<2> denom = Taylor<2>::variable(1, p.q2) * j.shifted(0, 1);
    const Taylor<2> omega = denom.reciprocal();
    g.g11 = omega * g.g11;
    g.g12 = omega * g.g12;
    g.g22 = omega * g.g22;
  }
  return g;
}

namespace {

double det3(double a, double b, double c, double d, double e, double f,
            double g, double h, double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

}  // namespace

double brioschi_curvature(const MetricJet& g, double threshold) {
  const MetricSample m = g.at_center();
  if (m.degenerate(threshold))
    throw Error(ErrorKind::DegenerateMetric, "metric determinant vanishes");
  const double E = m.g11, F = m.g12, G = m.g22;
  const double Eu = g.g11.coef(1, 0), Ev = g.g11.coef(0, 1);
  const double Fu = g.g12.coef(1, 0), Fv = g.g12.coef(0, 1);
  const double Gu = g.g22.coef(1, 0), Gv = g.g22.coef(0, 1);
  const double Evv = 2.0 * g.g11.coef(0, 2);
  const double Fuv = g.g12.coef(1, 1);
  const double Guu = 2.0 * g.g22.coef(2, 0);

  const double first = det3(-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
                            Fv - 0.5 * Gu, E, F,
                            0.5 * Gv, F, G);
  const double second = det3(0.0, 0.5 * Ev, 0.5 * Gu,
                             0.5 * Ev, E, F,
                             0.5 * Gu, F, G);
  return (first - second) / (m.det * m.det);
}

double gaussian_curvature(const Jet4& j, MetricKind kind, Point2 p) {
  try {
    return brioschi_curvature(metric_jet(j, kind, p));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DegenerateMetric && !e.where())
      throw Error(ErrorKind::DegenerateMetric, "metric determinant vanishes", p);
    throw;
  }
}

double gaussian_curvature(const Expr& phi, MetricKind kind, Point2 p) {
  return gaussian_curvature(jet(phi, p), kind, p);
}

double einstein_lhs(const Jet4& j, Point2 p) {
  const double q2 = p.q2;
  const double q2s = q2 * q2;
  const double p2 = j(0, 1);
  const double p11 = j(2, 0), p12 = j(1, 1), p22 = j(0, 2);
  const double p111 = j(3, 0), p211 = j(2, 1), p221 = j(1, 2), p222 = j(0, 3);

  const double A = -q2 * p222 - 2.0 * p22;
  const double B = 2.0 * p12 * p12 + 3.0 * q2 * p12 * p221 - q2 * p211 * p22 +
                   q2s * p221 * p221 - q2s * p222 * p211;
  const double C = -q2s * p221 * p211 + q2s * p111 * p222 + q2 * p22 * p111;
  const double D = -q2s * p111 * p221 + q2s * p211 * p211;
  const double E = -2.0 * q2s * p22 * p12 * p221 - q2s * p12 * p12 * p222 +
                   q2s * p22 * p22 * p211;

  const double omega = conformal_factor(j, p);
  const double rho = omega * omega * (p11 * p22 - p12 * p12);
  const double inv_omega2 = 1.0 / (omega * omega);

  const double first = p2 * p2 *
                       (A * p11 * p11 + B * p11 - 2.0 * q2 * p211 * p12 * p12 +
                        C * p12 + D * p22);
  const double second =
      p2 * (q2s * p22 * p222 * p11 * p11 + E * p11 +
            2.0 * q2s * p12 * p12 * p12 * p221 - q2s * p12 * p12 * p22 * p211);
  const double third =
      -2.0 * q2s * rho * inv_omega2 * (p22 * p22 * p11 - p12 * p12 * p22);
  return first + second + third;
}

EinsteinTerms einstein_residual(const Jet4& j, Point2 p, double K) {
  const double omega = conformal_factor(j, p);
  const double rho = omega * omega * (j(2, 0) * j(0, 2) - j(1, 1) * j(1, 1));
  EinsteinTerms t;
  t.lhs = einstein_lhs(j, p);
  t.rhs = 4.0 * K * rho * rho / std::pow(omega, 5);
  t.residual = t.lhs - t.rhs;
  const double scale = std::max(std::abs(t.lhs), std::abs(t.rhs));
  t.normalized = scale > 0.0 ? std::abs(t.residual) / scale : 0.0;
  return t;
}

EinsteinTerms einstein_residual(const Expr& phi, Point2 p, double K) {
  return einstein_residual(jet(phi, p), p, K);
}

namespace {

struct PointCurvature {
  bool degenerate = true;
  double K = 0.0;
  Jet4 jet;
};

PointCurvature curvature_at(const Expr& phi, MetricKind kind, Point2 p,
                            double threshold) {
  PointCurvature out;
  out.jet = jet(phi, p);
  if (kind == MetricKind::natural &&
      !(std::abs(p.q2 * out.jet(0, 1)) >= kConformalThreshold))
    return out;
  const MetricJet g = metric_jet(out.jet, kind, p);
  if (g.at_center().degenerate(threshold)) return out;
  out.degenerate = false;
  out.K = brioschi_curvature(g, threshold);
  return out;
}

}  // namespace

CurvatureReport curvature_scan(const Expr& phi, MetricKind kind,
                               const Grid& grid, ScanOptions opts) {
  const auto pts = grid.points();
  if (pts.empty()) throw Error(ErrorKind::InvalidInput, "empty grid");
  const auto per_point = parallel_map(pts.size(), opts.execution, [&](std::size_t i) {
    return curvature_at(phi, kind, pts[i], opts.degeneracy_threshold);
  });

  CurvatureReport r;
  r.kind = kind;
  double sum = 0.0;
  r.K_min = std::numeric_limits<double>::infinity();
  r.K_max = -std::numeric_limits<double>::infinity();
  for (const auto& pc : per_point) {
    if (pc.degenerate) {
      ++r.degenerate_points;
      continue;
    }
    ++r.samples;
    sum += pc.K;
    r.K_min = std::min(r.K_min, pc.K);
    r.K_max = std::max(r.K_max, pc.K);
  }
  if (r.samples == 0)
    throw Error(ErrorKind::AllPointsDegenerate,
                "all " + std::to_string(pts.size()) +
                    " grid points have a degenerate " +
                    std::string(to_string(kind)) + " metric");
  r.K_mean = sum / static_cast<double>(r.samples);
  r.K_spread = r.K_max - r.K_min;

  if (kind == MetricKind::hessian) {
    r.max_einstein_residual = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  const auto residuals = parallel_map(pts.size(), opts.execution, [&](std::size_t i) {
    if (per_point[i].degenerate) return 0.0;
    return einstein_residual(per_point[i].jet, pts[i], r.K_mean).normalized;
  });
  r.max_einstein_residual = 0.0;
  for (double v : residuals) r.max_einstein_residual = std::max(r.max_einstein_residual, v);
  return r;
}

EinsteinScan einstein_scan(const Expr& phi, const Grid& grid,
                           std::optional<double> K, ScanOptions opts) {
  EinsteinScan s;
  s.K = K ? *K : curvature_scan(phi, MetricKind::natural, grid, opts).K_mean;
  const auto pts = grid.points();
  struct Entry {
    bool skipped = true;
    EinsteinTerms terms;
  };
  const auto entries = parallel_map(pts.size(), opts.execution, [&](std::size_t i) {
    Entry e;
    const Jet4 j = jet(phi, pts[i]);
    if (!(std::abs(pts[i].q2 * j(0, 1)) >= kConformalThreshold)) return e;
    e.skipped = false;
    e.terms = einstein_residual(j, pts[i], s.K);
    return e;
  });
  for (const auto& e : entries) {
    if (e.skipped) {
      ++s.skipped;
      continue;
    }
    ++s.points;
    s.max_normalized = std::max(s.max_normalized, e.terms.normalized);
    s.max_abs = std::max(s.max_abs, std::abs(e.terms.residual));
  }
  return s;
}

}  // namespace gtd
