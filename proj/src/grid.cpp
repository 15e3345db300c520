#include "gtd/grid.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace gtd {

std::vector<double> Axis::values() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = min;
    return out;
  }
  const double n = static_cast<double>(count - 1);
  if (log) {
    const double lo = std::log(min), hi = std::log(max);
    for (std::size_t i = 0; i < count; ++i)
      out[i] = std::exp(lo + (hi - lo) * (static_cast<double>(i) / n));
    out.front() = min;
    out.back() = max;
  } else {
    for (std::size_t i = 0; i < count; ++i)
      out[i] = min + (max - min) * (static_cast<double>(i) / n);
  }
  return out;
}

namespace {

double parse_double(std::string_view s, std::string_view spec) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw Error(ErrorKind::InvalidInput,
                "bad number '" + std::string(s) + "' in grid spec '" +
                    std::string(spec) + "'");
  return v;
}

}  // namespace

Axis parse_axis(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  Axis axis;
  if (!parts.empty() && parts.front() == "log") {
    axis.log = true;
    parts.erase(parts.begin());
  }
  const auto bad = [&](const char* why) {
    return Error(ErrorKind::InvalidInput,
                 std::string(why) + " in grid spec '" + std::string(spec) +
                     "' (expected [log:]min:max:count)");
  };
  if (parts.size() != 3) throw bad("wrong field count");
  axis.min = parse_double(parts[0], spec);
  axis.max = parse_double(parts[1], spec);
  const double count = parse_double(parts[2], spec);
  if (count < 1.0 || std::floor(count) != count) throw bad("count must be a positive integer");
  axis.count = static_cast<std::size_t>(count);
  if (axis.max < axis.min) throw bad("max below min");
  if (axis.log && !(axis.min > 0.0)) throw bad("log spacing needs min > 0");
  return axis;
}

std::string format_axis(const Axis& axis) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s%.17g:%.17g:%zu", axis.log ? "log:" : "",
                axis.min, axis.max, axis.count);
  return buf;
}

std::vector<Point2> Grid::points() const {
  const auto a = q1.values();
  const auto b = q2.values();
  std::vector<Point2> out;
  out.reserve(a.size() * b.size());
  for (double x : a)
    for (double y : b) out.push_back({x, y});
  return out;
}

}  // namespace gtd
