#pragma once

#include <optional>
#include <string_view>

#include "gtd/expr.hpp"
#include "gtd/grid.hpp"
#include "gtd/taylor.hpp"

namespace gtd {

enum class MetricKind { hessian, natural };

std::string_view to_string(MetricKind kind);
MetricKind parse_metric_kind(std::string_view text);

/// Relative threshold below which |det| counts as degenerate, scaled by the
/// largest squared component.
inline constexpr double kDegeneracyThreshold = 1e-12;
/// |q2 * Phi_2| below this makes the conformal factor singular.
inline constexpr double kConformalThreshold = 1e-14;

/// Symmetric 2x2 metric at a point. `det` is always g11*g22 - g12^2.
struct MetricSample {
  double g11 = 0.0;
  double g12 = 0.0;
  double g22 = 0.0;
  double det = 0.0;

  MetricSample() = default;
  MetricSample(double a, double b, double c)
      : g11(a), g12(b), g22(c), det(a * c - b * b) {}

  bool degenerate(double threshold = kDegeneracyThreshold) const;
};

/// Degree-2 expansions of the metric components around a point.
struct MetricJet {
  Taylor<2> g11, g12, g22;

  MetricSample at_center() const {
    return {g11.value(), g12.value(), g22.value()};
  }
};

MetricSample hessian_metric(const Jet4& j);
MetricSample hessian_metric(const Expr& phi, Point2 p);

/// Omega = 1 / (q2 Phi_2). Throws SingularConformalFactor.
double conformal_factor(const Jet4& j, Point2 p);
double conformal_factor(const Expr& phi, Point2 p);

MetricSample natural_metric(const Jet4& j, Point2 p);
MetricSample natural_metric(const Expr& phi, Point2 p);

MetricJet metric_jet(const Jet4& j, MetricKind kind, Point2 p);

/// Gaussian curvature of a 2D metric from its components and their first
/// and second partials (Brioschi form, i.e. R_1212 / det g). Valid for
/// either signature. Throws DegenerateMetric.
double brioschi_curvature(const MetricJet& g,
                          double threshold = kDegeneracyThreshold);

double gaussian_curvature(const Jet4& j, MetricKind kind, Point2 p);
double gaussian_curvature(const Expr& phi, MetricKind kind, Point2 p);

/// Both sides of the reduced Einstein equation F = 4 K rho^2 / Omega^5
/// for the natural metric.
struct EinsteinTerms {
  double lhs = 0.0;         // F(Phi_i, Phi_ij, Phi_ijj, Phi_iii)
  double rhs = 0.0;         // 4 K rho^2 / Omega^5
  double residual = 0.0;    // lhs - rhs
  double normalized = 0.0;  // |residual| / max(|lhs|, |rhs|), 0 if both vanish
};

/// The polynomial F in the first three orders of Phi-derivatives.
double einstein_lhs(const Jet4& j, Point2 p);

EinsteinTerms einstein_residual(const Jet4& j, Point2 p, double K);
EinsteinTerms einstein_residual(const Expr& phi, Point2 p, double K);

struct CurvatureReport {
  MetricKind kind = MetricKind::natural;
  std::size_t samples = 0;
  double K_mean = 0.0;
  double K_spread = 0.0;
  double K_min = 0.0;
  double K_max = 0.0;
  /// Max normalized Einstein residual at K_mean; NaN for hessian scans.
  double max_einstein_residual = 0.0;
  std::size_t degenerate_points = 0;
};

struct ScanOptions {
  double degeneracy_threshold = kDegeneracyThreshold;
  Execution execution = Execution::parallel;
};

/// Curvature statistics over the nondegenerate points of a grid.
/// Throws AllPointsDegenerate.
CurvatureReport curvature_scan(const Expr& phi, MetricKind kind,
                               const Grid& grid, ScanOptions opts = {});

struct EinsteinScan {
  double K = 0.0;
  std::size_t points = 0;
  std::size_t skipped = 0;
  double max_normalized = 0.0;
  double max_abs = 0.0;
};

/// Einstein residual over a grid. Without an explicit K the natural-metric
/// K_mean of the same grid is used.
EinsteinScan einstein_scan(const Expr& phi, const Grid& grid,
                           std::optional<double> K, ScanOptions opts = {});

}  // namespace gtd
