#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "gtd/expr.hpp"
#include "gtd/geometry.hpp"
#include "gtd/grid.hpp"

namespace gtd {

/// Phi = phi0 * log(q1^alpha + c * q2^alpha). With phi0 = c = 1 this is
/// the entropy s_alpha(u, v) of the polytropic example.
struct ChaplyginFamily {
  double alpha = -1.0;
  double phi0 = 1.0;
  double c = 1.0;

  /// Throws InvalidFamily for alpha in {0, 1} or non-finite parameters.
  void validate() const;
  /// -alpha^2 / (4 (alpha - 1)), the natural-metric curvature.
  double expected_curvature() const;
};

Expr entropy(const ChaplyginFamily& family);

enum class RadiusClass { positive_definite, indefinite, negative };
std::string_view to_string(RadiusClass c);

struct RadiusRow {
  double u = 0.0;
  double v = 0.0;
  double R2 = 0.0;
};

struct RadiusProfile {
  double alpha = 0.0;
  std::vector<RadiusRow> rows;
  double min_R2 = 0.0;
  double max_R2 = 0.0;
  RadiusClass classification = RadiusClass::indefinite;
  /// Max relative gap between the direct R^2 and the closed form with the
  /// (u^a + v^a) denominator squared, and with it to the first power.
  /// NaN unless phi0 = c = 1.
  double closed_form_discrepancy = 0.0;
  double printed_form_discrepancy = 0.0;
};

/// Closed-form R^2 of s_alpha; `denominator_power` 2 is the exact
/// expansion, 1 reproduces the first-power variant.
double radius_squared_closed_form(double u, double v, double alpha,
                                  int denominator_power = 2);

/// R^2 by direct jet evaluation over a grid with positive coordinates.
RadiusProfile radius_profile(const ChaplyginFamily& family, const Grid& grid,
                             Execution exec = Execution::parallel);

/// P = rho^(1 - alpha) for rho = u / v > 0. Throws DomainError.
double pressure(double rho, double alpha);

/// c_v = alpha u^alpha / (u^alpha + (1 - alpha) v^alpha).
/// Throws DomainError (u, v <= 0) and SingularDenominator.
double heat_capacity_cv(double u, double v, double alpha);

struct HeatCapacitySummary {
  std::size_t negative = 0;
  std::size_t positive = 0;
  std::size_t zero = 0;
  std::size_t singular = 0;

  /// "negative", "positive", or "mixed".
  std::string_view sign() const;
};

HeatCapacitySummary heat_capacity_summary(double alpha, const Grid& grid);

enum class Verdict { Physical, NonPhysical };
std::string_view to_string(Verdict v);

struct Classification {
  double alpha = 0.0;
  Verdict verdict = Verdict::NonPhysical;
  double min_R2 = 0.0;
  double max_R2 = 0.0;
  RadiusClass radius_class = RadiusClass::indefinite;
  /// Natural-metric K_mean over the grid; empty when every point is
  /// degenerate.
  std::optional<double> K;
  HeatCapacitySummary cv;
};

/// Physical iff R^2 is positive on the whole grid.
Classification classify(const ChaplyginFamily& family, const Grid& grid,
                        Execution exec = Execution::parallel);

/// 50 x 50 log-spaced points on [1e-2, 1e2]^2.
Grid default_classification_grid();

}  // namespace gtd
