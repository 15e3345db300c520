#include "gtd/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace gtd {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

namespace {

nlohmann::json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

nlohmann::json to_json(const CurvatureReport& r) {
  return {{"kind", std::string(to_string(r.kind))},
          {"samples", r.samples},
          {"K_mean", number(r.K_mean)},
          {"K_spread", number(r.K_spread)},
          {"max_einstein_residual", number(r.max_einstein_residual)},
          {"degenerate_points", r.degenerate_points}};
}

nlohmann::json to_json(const EinsteinScan& s) {
  return {{"K", number(s.K)},
          {"points", s.points},
          {"skipped", s.skipped},
          {"max_normalized_residual", number(s.max_normalized)},
          {"max_abs_residual", number(s.max_abs)}};
}

nlohmann::json summary_json(const RadiusProfile& p) {
  return {{"alpha", number(p.alpha)},
          {"min_R2", number(p.min_R2)},
          {"max_R2", number(p.max_R2)},
          {"classification", std::string(to_string(p.classification))},
          {"points", p.rows.size()},
          {"closed_form_discrepancy", number(p.closed_form_discrepancy)},
          {"printed_form_discrepancy", number(p.printed_form_discrepancy)}};
}

nlohmann::json to_json(const Classification& c) {
  return {{"alpha", number(c.alpha)},
          {"K", c.K ? number(*c.K) : nlohmann::json(nullptr)},
          {"min_R2", number(c.min_R2)},
          {"max_R2", number(c.max_R2)},
          {"radius_class", std::string(to_string(c.radius_class))},
          {"cv_sign", std::string(c.cv.sign())},
          {"verdict", std::string(to_string(c.verdict))}};
}

nlohmann::json to_json(const LogLinearCoords& c) {
  return {{"xi", number(c.xi)},
          {"chi", number(c.chi)},
          {"c", number(c.c)},
          {"x", to_string(c.x)},
          {"y", "i * " + format_double(c.y_coefficient) + " * " + to_string(c.y_log)},
          {"y_coefficient_imaginary", number(c.y_coefficient)},
          {"real", c.real}};
}

void write_radius_csv(std::ostream& os, const RadiusProfile& p) {
  os << "u,v,R2\n";
  for (const auto& r : p.rows)
    os << format_double(r.u) << ',' << format_double(r.v) << ','
       << format_double(r.R2) << '\n';
}

void write_coord_csv(std::ostream& os, const Expr& phi, const CoordField& field) {
  if (field.form() != CoordForm::numeric)
    throw Error(ErrorKind::InvalidInput, "CSV export needs a numeric field");
  os << "q1,q2,x,y,r1,r2,r3\n";
  const auto& a = field.q1_nodes();
  const auto& b = field.q2_nodes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Point2 p{a[i], b[j]};
      const auto r = pullback_residuals(jet(phi, p), field.gradient_at(i, j));
      const std::size_t k = field.index(i, j);
      os << format_double(p.q1) << ',' << format_double(p.q2) << ','
         << format_double(field.x_values()[k]) << ','
         << format_double(field.y_values()[k]) << ',' << format_double(r.r1)
         << ',' << format_double(r.r2) << ',' << format_double(r.r3) << '\n';
    }
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    out.push_back(cell);
  }
  return out;
}

}  // namespace

CoordField read_coord_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::InvalidInput, "empty CSV");
  const auto header = split(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t k = 0; k < header.size(); ++k) col[header[k]] = k;
  for (const char* name : {"q1", "q2", "x", "y"}) {
    if (!col.count(name))
      throw Error(ErrorKind::InvalidInput, std::string("CSV lacks column ") + name);
  }
  std::map<std::pair<double, double>, std::pair<double, double>> values;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    try {
      const auto at = [&](const char* name) { return std::stod(cells.at(col[name])); };
      values[{at("q1"), at("q2")}] = {at("x"), at("y")};
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput,
                  "bad CSV row at line " + std::to_string(line_no));
    }
  }
  std::vector<double> a, b;
  for (const auto& [key, _] : values) {
    a.push_back(key.first);
    b.push_back(key.second);
  }
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  if (values.size() != a.size() * b.size())
    throw Error(ErrorKind::InvalidInput, "CSV does not cover a rectangular grid");
  std::vector<double> x, y;
  for (const auto& [key, xy] : values) {  // map order is q1-major
    x.push_back(xy.first);
    y.push_back(xy.second);
  }
  return CoordField::numeric(a, b, std::move(x), std::move(y), {},
                             {a.front(), b.front()});
}

}  // namespace gtd
