#include "gtd/isothermal.hpp"

#include <algorithm>
#include <cmath>

#include "gtd/parallel.hpp"
#include "gtd/quadrature.hpp"

namespace gtd {

double PullbackResiduals::max_abs() const {
  return std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
}

// ---------------------------------------------------------------------------
// CoordField

CoordField CoordField::closed(Expr x, Expr y) {
  CoordField f;
  f.form_ = CoordForm::closed;
  f.x1_ = differentiate(x, Var::q1);
  f.x2_ = differentiate(x, Var::q2);
  f.y1_ = differentiate(y, Var::q1);
  f.y2_ = differentiate(y, Var::q2);
  f.x_expr_ = std::move(x);
  f.y_expr_ = std::move(y);
  return f;
}

CoordField CoordField::numeric(std::vector<double> q1_nodes,
                               std::vector<double> q2_nodes,
                               std::vector<double> x, std::vector<double> y,
                               std::vector<CoordGradient> exact_gradients,
                               Point2 base) {
  const std::size_t n = q1_nodes.size() * q2_nodes.size();
  if (n == 0 || x.size() != n || y.size() != n ||
      (!exact_gradients.empty() && exact_gradients.size() != n))
    throw Error(ErrorKind::InvalidInput, "coordinate field size mismatch");
  const auto increasing = [](const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!increasing(q1_nodes) || !increasing(q2_nodes))
    throw Error(ErrorKind::InvalidInput, "grid nodes must be strictly increasing");
  CoordField f;
  f.form_ = CoordForm::numeric;
  f.q1_ = std::move(q1_nodes);
  f.q2_ = std::move(q2_nodes);
  f.x_ = std::move(x);
  f.y_ = std::move(y);
  f.grad_ = std::move(exact_gradients);
  f.base_ = base;
  return f;
}

std::vector<Point2> CoordField::nodes() const {
  std::vector<Point2> out;
  out.reserve(q1_.size() * q2_.size());
  for (double a : q1_)
    for (double b : q2_) out.push_back({a, b});
  return out;
}

std::pair<std::size_t, std::size_t> CoordField::locate(Point2 p) const {
  const auto find = [&](const std::vector<double>& nodes, double v) {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
    const double tol = 1e-12 * std::max(1.0, std::abs(v));
    for (auto cand : {it, it == nodes.begin() ? it : it - 1}) {
      if (cand != nodes.end() && std::abs(*cand - v) <= tol)
        return static_cast<std::size_t>(cand - nodes.begin());
    }
    throw Error(ErrorKind::InvalidInput,
                "point is not a node of the numeric coordinate field", p);
  };
  return {find(q1_, p.q1), find(q2_, p.q2)};
}

double CoordField::x(Point2 p) const {
  if (form_ == CoordForm::closed) return x_expr_.evaluate(p);
  const auto [i, j] = locate(p);
  return x_[index(i, j)];
}

double CoordField::y(Point2 p) const {
  if (form_ == CoordForm::closed) return y_expr_.evaluate(p);
  const auto [i, j] = locate(p);
  return y_[index(i, j)];
}

CoordGradient CoordField::gradient(Point2 p) const {
  if (form_ == CoordForm::closed)
    return {x1_.evaluate(p), x2_.evaluate(p), y1_.evaluate(p), y2_.evaluate(p)};
  const auto [i, j] = locate(p);
  return gradient_at(i, j);
}

CoordGradient CoordField::gradient_at(std::size_t i, std::size_t j) const {
  if (!grad_.empty()) return grad_[index(i, j)];
  return central_difference_gradient(i, j);
}

double node_derivative(const std::vector<double>& t, const std::vector<double>& f,
                       std::size_t k, std::size_t stride, std::size_t offset) {
  const std::size_t n = t.size();
  const auto F = [&](std::size_t m) { return f[offset + m * stride]; };
  if (n < 2) throw Error(ErrorKind::InvalidInput, "need two nodes to differentiate");
  if (n == 2) return (F(1) - F(0)) / (t[1] - t[0]);
  if (k == 0) {
    const double h1 = t[1] - t[0], h2 = t[2] - t[1];
    return -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * F(0) + (h1 + h2) / (h1 * h2) * F(1) -
           h1 / (h2 * (h1 + h2)) * F(2);
  }
  if (k == n - 1) {
    const double h1 = t[n - 2] - t[n - 3], h2 = t[n - 1] - t[n - 2];
    return h2 / (h1 * (h1 + h2)) * F(n - 3) - (h1 + h2) / (h1 * h2) * F(n - 2) +
           (2.0 * h2 + h1) / (h2 * (h1 + h2)) * F(n - 1);
  }
  const double h1 = t[k] - t[k - 1], h2 = t[k + 1] - t[k];
  return -h2 / (h1 * (h1 + h2)) * F(k - 1) + (h2 - h1) / (h1 * h2) * F(k) +
         h1 / (h2 * (h1 + h2)) * F(k + 1);
}

CoordGradient CoordField::central_difference_gradient(std::size_t i,
                                                      std::size_t j) const {
  const std::size_t m = q2_.size();
  CoordGradient g;
  // Along q1 the stride is one row; along q2 values are contiguous.
  g.x1 = node_derivative(q1_, x_, i, m, j);
  g.y1 = node_derivative(q1_, y_, i, m, j);
  g.x2 = node_derivative(q2_, x_, j, 1, i * m);
  g.y2 = node_derivative(q2_, y_, j, 1, i * m);
  return g;
}

// ---------------------------------------------------------------------------
// Residuals

PullbackResiduals pullback_residuals(const Jet4& j, const CoordGradient& g) {
  return {g.x1 * g.x1 + g.y1 * g.y1 - j(2, 0),
          g.x1 * g.x2 + g.y1 * g.y2 - j(1, 1),
          g.x2 * g.x2 + g.y2 * g.y2 - j(0, 2)};
}

PullbackResiduals pullback_residuals(const Expr& phi, const CoordField& field,
                                     Point2 p) {
  return pullback_residuals(jet(phi, p), field.gradient(p));
}

double radius_squared(const Jet4& j) { return j(2, 0) + 2.0 * j(1, 1) + j(0, 2); }

double radius_squared(const Expr& phi, Point2 p) { return radius_squared(jet(phi, p)); }

CircumferenceSample circumference_check(const Jet4& j, const CoordGradient& g) {
  CircumferenceSample s;
  s.X2 = (g.x1 + g.x2) * (g.x1 + g.x2);
  s.Y2 = (g.y1 + g.y2) * (g.y1 + g.y2);
  s.R2 = radius_squared(j);
  s.residual = s.X2 + s.Y2 - s.R2;
  return s;
}

CircumferenceSample circumference_check(const Expr& phi, const CoordField& field,
                                        Point2 p) {
  return circumference_check(jet(phi, p), field.gradient(p));
}

ConstraintResiduals constraint_residuals(const Jet4& j, Point2 p) {
  const double p12 = j(1, 1), p22 = j(0, 2);
  const double scale = std::max({1.0, std::abs(j(2, 0)), std::abs(p12)});
  if (!(std::abs(p22) > 1e-14 * scale))
    throw Error(ErrorKind::SingularDenominator, "Phi_22 vanishes", p);
  const double p222 = j(0, 3);
  return {j(2, 1) - p222 * p12 * p12 / (p22 * p22), j(1, 2) - p222 * p12 / p22};
}

ConstraintResiduals constraint_residuals(const Expr& phi, Point2 p) {
  return constraint_residuals(jet(phi, p), p);
}

// ---------------------------------------------------------------------------
// Separable relations

namespace {

Expr require_single_variable(const Expr& e, Var allowed, const char* name) {
  const Var other = allowed == Var::q1 ? Var::q2 : Var::q1;
  if (e.depends_on(other))
    throw Error(ErrorKind::InvalidInput,
                std::string(name) + " must depend on " +
                    (allowed == Var::q1 ? "q1" : "q2") + " only");
  return differentiate(differentiate(e, allowed), allowed);
}

/// sqrt of a second derivative sampled along one axis.
double root_of(const Expr& second, Point2 p, const char* name) {
  const double v = second.evaluate(p);
  if (v < 0.0)
    throw Error(ErrorKind::NegativeRadicand,
                std::string(name) + " is negative (" + std::to_string(v) + ")", p);
  return std::sqrt(v);
}

}  // namespace

CoordField separable_coords(const Expr& S, const Expr& T, double c,
                            const Grid& grid) {
  if (!(std::abs(c) <= 1.0))
    throw Error(ErrorKind::InvalidMixing, "|c| must not exceed 1");
  const Expr S2 = require_single_variable(S, Var::q1, "S");
  const Expr T2 = require_single_variable(T, Var::q2, "T");
  const auto a = grid.q1.values();
  const auto b = grid.q2.values();
  const Point2 base{a.front(), b.front()};
  const double s = std::sqrt(1.0 - c * c);

  // A(q1) = int sqrt(S'') dq1 and B(q2) = int sqrt(T'') dq2 from the base.
  std::vector<double> A(a.size(), 0.0), dA(a.size()), B(b.size(), 0.0), dB(b.size());
  const auto rootS = [&](double t) { return root_of(S2, {t, base.q2}, "S''"); };
  const auto rootT = [&](double t) { return root_of(T2, {base.q1, t}, "T''"); };
  for (std::size_t i = 0; i < a.size(); ++i) {
    dA[i] = rootS(a[i]);
    if (i > 0) A[i] = A[i - 1] + integrate(rootS, a[i - 1], a[i]);
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    dB[j] = rootT(b[j]);
    if (j > 0) B[j] = B[j - 1] + integrate(rootT, b[j - 1], b[j]);
  }

  const std::size_t n = a.size() * b.size();
  std::vector<double> x(n), y(n);
  std::vector<CoordGradient> g(n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t k = i * b.size() + j;
      x[k] = s * A[i] + c * B[j];
      y[k] = s * B[j] - c * A[i];
      g[k] = {s * dA[i], c * dB[j], -c * dA[i], s * dB[j]};
    }
  }
  return CoordField::numeric(a, b, std::move(x), std::move(y), std::move(g), base);
}

// ---------------------------------------------------------------------------
// Constrained third-order family

namespace {

struct Hessian {
  double p11, p12, p22;
};

class ChartBuilder {
 public:
  ChartBuilder(const Expr& phi, const Expr& g1)
      : g1_(g1),
        p11_(differentiate(differentiate(phi, Var::q1), Var::q1)),
        p12_(differentiate(differentiate(phi, Var::q1), Var::q2)),
        p22_(differentiate(differentiate(phi, Var::q2), Var::q2)) {}

  Hessian hessian(Point2 p) const {
    return {p11_.evaluate(p), p12_.evaluate(p), p22_.evaluate(p)};
  }

  double x2(Point2 p, const Hessian& h) const {
    if (!(h.p22 > 0.0))
      throw Error(ErrorKind::NegativeRadicand, "Phi_22 must be positive", p);
    return g1_.evaluate(p) * std::sqrt(h.p22);
  }

  double x2(Point2 p) const { return x2(p, hessian(p)); }

  /// Both roots of Phi_22 x1^2 - 2 Phi_12 x2 x1 + (x2^2 Phi_11 + Phi_12^2
  /// - Phi_11 Phi_22) = 0, minus-root first.
  std::array<double, 2> x1_roots(Point2 p, const Hessian& h, double x2v) const {
    const double det = h.p11 * h.p22 - h.p12 * h.p12;
    const double slack = h.p22 - x2v * x2v;
    double disc = det * slack;  // quarter discriminant times Phi_22^0
    const double scale = std::abs(det) * std::max(std::abs(h.p22), x2v * x2v);
    if (disc < 0.0) {
      if (disc < -1e-14 * scale)
        throw Error(ErrorKind::NegativeDiscriminant,
                    "no real x_1 (discriminant " + std::to_string(disc) + ")", p);
      disc = 0.0;
    }
    const double r = std::sqrt(disc);
    return {(h.p12 * x2v - r) / h.p22, (h.p12 * x2v + r) / h.p22};
  }

  double x1(Point2 p, int branch) const {
    const Hessian h = hessian(p);
    return x1_roots(p, h, x2(p, h))[branch];
  }

  CoordGradient gradient(Point2 p, int branch) const {
    const Hessian h = hessian(p);
    CoordGradient g;
    g.x2 = x2(p, h);
    g.x1 = x1_roots(p, h, g.x2)[branch];
    fill_y(p, h, g);
    return g;
  }

  void fill_y(Point2 p, const Hessian& h, CoordGradient& g) const {
    const double slack = h.p22 - g.x2 * g.x2;
    if (slack < -1e-14 * std::abs(h.p22))
      throw Error(ErrorKind::NegativeRadicand, "Phi_22 - x_2^2 is negative", p);
    g.y2 = std::sqrt(std::max(slack, 0.0));
    if (g.y2 > 1e-12 * std::sqrt(h.p22)) {
      g.y1 = (h.p12 - g.x1 * g.x2) / g.y2;
    } else {
      g.y1 = std::sqrt(std::max(h.p11 - g.x1 * g.x1, 0.0));
    }
  }

  double y2(Point2 p) const {
    const Hessian h = hessian(p);
    const double x2v = x2(p, h);
    const double slack = h.p22 - x2v * x2v;
    if (slack < -1e-14 * std::abs(h.p22))
      throw Error(ErrorKind::NegativeRadicand, "Phi_22 - x_2^2 is negative", p);
    return std::sqrt(std::max(slack, 0.0));
  }

 private:
  Expr g1_, p11_, p12_, p22_;
};

int closest_branch(const std::array<double, 2>& roots, double target) {
  return std::abs(roots[1] - target) < std::abs(roots[0] - target) ? 1 : 0;
}

}  // namespace

IntegratedCoords integrate_coords(const Expr& phi, const Expr& g1,
                                  const Grid& grid, IntegrateOptions opts) {
  if (g1.depends_on(Var::q2))
    throw Error(ErrorKind::InvalidInput, "gauge function g1 must depend on q1 only");
  const auto a = grid.q1.values();
  const auto b = grid.q2.values();
  const std::size_t n1 = a.size(), n2 = b.size();
  const Point2 base{a.front(), b.front()};
  const ChartBuilder chart(phi, g1);

  if (opts.check_constraints) {
    const auto pts = grid.points();
    const auto viol = parallel_map(pts.size(), opts.execution, [&](std::size_t k) {
      const auto c = constraint_residuals(jet(phi, pts[k]), pts[k]);
      return std::max(std::abs(c.c1), std::abs(c.c2));
    });
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (viol[k] > opts.constraint_tolerance)
        throw Error(ErrorKind::ConstraintViolated,
                    "third-order constraint residual " + std::to_string(viol[k]),
                    pts[k]);
    }
  }

  std::vector<double> x(n1 * n2), y(n1 * n2);
  std::vector<CoordGradient> grad(n1 * n2);
  std::vector<int> branch(n1 * n2, 0);

  // Base row: smaller |x_1| at the base point, then continuity along q1.
  for (std::size_t i = 0; i < n1; ++i) {
    const Point2 p{a[i], base.q2};
    const Hessian h = chart.hessian(p);
    const double x2v = chart.x2(p, h);
    const auto roots = chart.x1_roots(p, h, x2v);
    const std::size_t k = i * n2;
    if (i == 0) {
      branch[k] = std::abs(roots[1]) <= std::abs(roots[0]) ? 1 : 0;
    } else {
      branch[k] = closest_branch(roots, grad[k - n2].x1);
      const int prev = branch[k - n2];
      const auto x1f = [&](double s) { return chart.x1({s, base.q2}, prev); };
      const auto y1f = [&](double s) {
        return chart.gradient({s, base.q2}, prev).y1;
      };
      x[k] = x[k - n2] + integrate(x1f, a[i - 1], a[i]);
      y[k] = y[k - n2] + integrate(y1f, a[i - 1], a[i]);
    }
    grad[k] = chart.gradient(p, branch[k]);
  }

  // Columns along q2 are independent once the base row is known.
  struct Column {
    std::vector<double> x, y;
    std::vector<CoordGradient> g;
  };
  const auto columns = parallel_map(n1, opts.execution, [&](std::size_t i) {
    Column col;
    col.x.resize(n2);
    col.y.resize(n2);
    col.g.resize(n2);
    const std::size_t k0 = i * n2;
    col.x[0] = x[k0];
    col.y[0] = y[k0];
    col.g[0] = grad[k0];
    const auto x2f = [&](double t) { return chart.x2({a[i], t}); };
    const auto y2f = [&](double t) { return chart.y2({a[i], t}); };
    for (std::size_t j = 1; j < n2; ++j) {
      const Point2 p{a[i], b[j]};
      const Hessian h = chart.hessian(p);
      CoordGradient g;
      g.x2 = chart.x2(p, h);
      const auto roots = chart.x1_roots(p, h, g.x2);
      g.x1 = roots[closest_branch(roots, col.g[j - 1].x1)];
      chart.fill_y(p, h, g);
      col.g[j] = g;
      col.x[j] = col.x[j - 1] + integrate(x2f, b[j - 1], b[j]);
      col.y[j] = col.y[j - 1] + integrate(y2f, b[j - 1], b[j]);
    }
    return col;
  });
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const std::size_t k = i * n2 + j;
      x[k] = columns[i].x[j];
      y[k] = columns[i].y[j];
      grad[k] = columns[i].g[j];
    }
  }

  double compat = 0.0;
  if (n1 >= 2 && n2 >= 2) {
    std::vector<double> x1v(n1 * n2), x2v(n1 * n2);
    for (std::size_t k = 0; k < n1 * n2; ++k) {
      x1v[k] = grad[k].x1;
      x2v[k] = grad[k].x2;
    }
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n2; ++j) {
        const double x12 = node_derivative(b, x1v, j, 1, i * n2);
        const double x21 = node_derivative(a, x2v, i, n2, j);
        compat = std::max(compat, std::abs(x12 - x21));
      }
    }
  }
  return {CoordField::numeric(a, b, std::move(x), std::move(y), std::move(grad), base),
          compat};
}

// ---------------------------------------------------------------------------
// Log-linear relations

LogLinearCoords loglinear_coords(double xi, double chi, double c) {
  if (chi == 0.0) throw Error(ErrorKind::InvalidInput, "chi must be nonzero");
  const Expr q1 = Expr::variable(Var::q1);
  const Expr q2 = Expr::variable(Var::q2);
  const auto scaled = [](double k, const Expr& e) {
    return k == 1.0 ? e : Expr::constant(k) * e;
  };
  const Expr w = scaled(xi, q1) + scaled(chi, q2);
  LogLinearCoords out;
  out.xi = xi;
  out.chi = chi;
  out.c = c;
  out.phi = Expr::log(w);
  out.x = scaled(c, Expr::log(q2 + scaled(xi / chi, q1)));
  out.y_log = Expr::log(w);
  // y carries sqrt(-(1 + c^2)): the radicand is negative for every real c.
  const double radicand = -(1.0 + c * c);
  out.y_coefficient = std::sqrt(-radicand);
  out.real = radicand >= 0.0;
  return out;
}

PullbackResiduals loglinear_residuals(const LogLinearCoords& coords, Point2 p) {
  const Jet4 j = jet(coords.phi, p);
  const double x1 = differentiate(coords.x, Var::q1).evaluate(p);
  const double x2 = differentiate(coords.x, Var::q2).evaluate(p);
  const double L1 = differentiate(coords.y_log, Var::q1).evaluate(p);
  const double L2 = differentiate(coords.y_log, Var::q2).evaluate(p);
  const double k2 = coords.y_coefficient * coords.y_coefficient;
  return {x1 * x1 - k2 * L1 * L1 - j(2, 0), x1 * x2 - k2 * L1 * L2 - j(1, 1),
          x2 * x2 - k2 * L2 * L2 - j(0, 2)};
}

}  // namespace gtd
