#pragma once

#include <vector>

#include "gtd/expr.hpp"
#include "gtd/grid.hpp"

namespace gtd {

/// First partials of a coordinate change (x, y) at one point.
struct CoordGradient {
  double x1 = 0.0, x2 = 0.0;
  double y1 = 0.0, y2 = 0.0;
};

/// Residuals of the pullback of dx^2 + dy^2 against the Hessian metric:
///   r1 = x1^2 + y1^2 - Phi_11
///   r2 = x1 x2 + y1 y2 - Phi_12
///   r3 = x2^2 + y2^2 - Phi_22
struct PullbackResiduals {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;

  double max_abs() const;
};

struct CircumferenceSample {
  double X2 = 0.0;
  double Y2 = 0.0;
  double R2 = 0.0;
  double residual = 0.0;  // X2 + Y2 - R2
};

enum class CoordForm { closed, numeric };

/// A candidate isothermal chart, either closed-form expressions or values
/// sampled on a rectangular grid.
///
/// Numeric fields produced by this library also carry exact first partials
/// at every node; fields loaded from values alone fall back to second-order
/// (nonuniform) central differences, one-sided at the boundary.
class CoordField {
 public:
  static CoordField closed(Expr x, Expr y);
  static CoordField numeric(std::vector<double> q1_nodes,
                            std::vector<double> q2_nodes,
                            std::vector<double> x, std::vector<double> y,
                            std::vector<CoordGradient> exact_gradients = {},
                            Point2 base = {});

  CoordForm form() const { return form_; }

  const Expr& x_expr() const { return x_expr_; }
  const Expr& y_expr() const { return y_expr_; }

  const std::vector<double>& q1_nodes() const { return q1_; }
  const std::vector<double>& q2_nodes() const { return q2_; }
  /// Values at node (i, j) live at index i * q2_nodes().size() + j.
  const std::vector<double>& x_values() const { return x_; }
  const std::vector<double>& y_values() const { return y_; }
  bool has_exact_gradients() const { return !grad_.empty(); }
  Point2 base() const { return base_; }

  std::vector<Point2> nodes() const;
  std::size_t index(std::size_t i, std::size_t j) const { return i * q2_.size() + j; }

  double x(Point2 p) const;
  double y(Point2 p) const;

  /// Gradient at p; for numeric fields p must coincide with a node.
  CoordGradient gradient(Point2 p) const;
  CoordGradient gradient_at(std::size_t i, std::size_t j) const;
  CoordGradient central_difference_gradient(std::size_t i, std::size_t j) const;

 private:
  CoordField() = default;
  std::pair<std::size_t, std::size_t> locate(Point2 p) const;

  CoordForm form_ = CoordForm::closed;
  Expr x_expr_ = Expr::constant(0.0);
  Expr y_expr_ = Expr::constant(0.0);
  Expr x1_ = Expr::constant(0.0), x2_ = Expr::constant(0.0);
  Expr y1_ = Expr::constant(0.0), y2_ = Expr::constant(0.0);
  std::vector<double> q1_, q2_, x_, y_;
  std::vector<CoordGradient> grad_;
  Point2 base_;
};

/// Second-order derivative of samples f on nonuniform nodes t, at node k.
double node_derivative(const std::vector<double>& t,
                       const std::vector<double>& f, std::size_t k,
                       std::size_t stride = 1, std::size_t offset = 0);

PullbackResiduals pullback_residuals(const Jet4& j, const CoordGradient& g);
PullbackResiduals pullback_residuals(const Expr& phi, const CoordField& field,
                                     Point2 p);

/// Isothermal chart of Phi = S(q1) + T(q2) with mixing constant c:
///   x = sqrt(1-c^2) int sqrt(S'') dq1 + c int sqrt(T'') dq2
///   y = sqrt(1-c^2) int sqrt(T'') dq2 - c int sqrt(S'') dq1
/// Antiderivatives start at the grid's lower-left corner. Throws
/// InvalidMixing (|c| > 1) and NegativeRadicand.
CoordField separable_coords(const Expr& S, const Expr& T, double c,
                            const Grid& grid);

struct ConstraintResiduals {
  double c1 = 0.0;  // Phi_211 - Phi_222 Phi_12^2 / Phi_22^2
  double c2 = 0.0;  // Phi_122 - Phi_222 Phi_12 / Phi_22
};

ConstraintResiduals constraint_residuals(const Jet4& j, Point2 p);
ConstraintResiduals constraint_residuals(const Expr& phi, Point2 p);

struct IntegrateOptions {
  bool check_constraints = true;
  double constraint_tolerance = 1e-8;
  Execution execution = Execution::parallel;
};

struct IntegratedCoords {
  CoordField field;
  /// max |d(x_1)/dq2 - d(x_2)/dq1| over the grid, by central differences.
  double max_compatibility = 0.0;
};

/// Builds isothermal coordinates for relations satisfying the third-order
/// constraint pair. x_2 = g1(q1) sqrt(Phi_22) in closed form, x_1 from the
/// quadratic with continuity-based root choice, y from path quadrature of
/// its gradient. Base point is the lower-left grid corner.
IntegratedCoords integrate_coords(const Expr& phi, const Expr& g1,
                                  const Grid& grid, IntegrateOptions opts = {});

/// Closed-form chart for Phi = log(xi q1 + chi q2):
///   x = c log(q2 + (xi/chi) q1),  y = i sqrt(1 + c^2) log(xi q1 + chi q2).
/// The y coefficient is purely imaginary for every real c.
struct LogLinearCoords {
  double xi = 1.0, chi = 1.0, c = 0.0;
  Expr phi = Expr::constant(0.0);
  Expr x = Expr::constant(0.0);
  Expr y_log = Expr::constant(0.0);  // log(xi q1 + chi q2)
  double y_coefficient = 1.0;  // |sqrt(-(1 + c^2))|
  bool real = false;
};

LogLinearCoords loglinear_coords(double xi, double chi, double c);

/// Pullback residuals of the complex chart, i.e. with y_a y_b replaced by
/// -k^2 L_a L_b. Vanishes where the closed form solves the system.
PullbackResiduals loglinear_residuals(const LogLinearCoords& coords, Point2 p);

/// R^2 = Phi_11 + 2 Phi_12 + Phi_22.
double radius_squared(const Jet4& j);
double radius_squared(const Expr& phi, Point2 p);

CircumferenceSample circumference_check(const Jet4& j, const CoordGradient& g);
CircumferenceSample circumference_check(const Expr& phi, const CoordField& field,
                                        Point2 p);

}  // namespace gtd
