#pragma once

#include <functional>

namespace gtd {

inline constexpr double kQuadratureTolerance = 1e-10;

/// Adaptive Gauss-Kronrod (7/15) integral of f over [a, b]; a > b flips the
/// sign. `abs_tol` bounds the absolute error estimate.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = kQuadratureTolerance);

}  // namespace gtd
