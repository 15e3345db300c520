#include "gtd/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace gtd {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (a == b) return 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  constexpr unsigned max_depth = 20;
  double error = 0.0;
  double l1 = 0.0;
  // Boost terminates on a relative criterion; the second pass converts the
  // absolute target using the first pass's L1 norm.
  double value = GK::integrate(f, a, b, max_depth, 1e-12, &error, &l1);
  if (error > abs_tol && l1 > 0.0) {
    value = GK::integrate(f, a, b, max_depth, std::max(abs_tol / l1, 1e-15),
                          &error, &l1);
  }
  return value;
}

}  // namespace gtd
