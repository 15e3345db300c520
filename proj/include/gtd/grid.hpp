#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gtd/error.hpp"

namespace gtd {

/// One sampled axis: `count` points from min to max, linear or log spaced.
struct Axis {
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 1;
  bool log = false;

  std::vector<double> values() const;
};

/// Parses "min:max:count" or "log:min:max:count". Throws InvalidInput.
Axis parse_axis(std::string_view spec);
std::string format_axis(const Axis& axis);

/// Rectangular sample set; points are ordered q1-major (q2 varies fastest).
struct Grid {
  Axis q1;
  Axis q2;

  static Grid square(const Axis& axis) { return Grid{axis, axis}; }

  std::vector<Point2> points() const;
  std::size_t size() const { return q1.count * q2.count; }
};

/// Execution policy for grid kernels. Both paths produce bitwise-identical
/// results: per-point work is a pure map and reductions run serially in
/// point order.
enum class Execution { serial, parallel };

}  // namespace gtd
