#include "gtd/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "gtd/geometry.hpp"
#include "gtd/io.hpp"
#include "gtd/isothermal.hpp"
#include "gtd/thermo.hpp"

namespace gtd::cli {
namespace {

struct RelationArgs {
  std::string phi;
  std::string family;
  double alpha = std::nan("");
  double phi0 = 1.0;
  double c = 1.0;

  void add_to(CLI::App* cmd, bool family_only = false) {
    if (!family_only)
      cmd->add_option("--phi", phi, "fundamental relation Phi(q1, q2)");
    cmd->add_option("--family", family, "built-in family (chaplygin)");
    cmd->add_option("--alpha", alpha, "family exponent");
    cmd->add_option("--phi0", phi0, "family scale")->capture_default_str();
    cmd->add_option("--c", c, "weight of the q2 term")->capture_default_str();
  }

  ChaplyginFamily chaplygin() const {
    if (!family.empty() && family != "chaplygin")
      throw Error(ErrorKind::InvalidInput, "unknown family '" + family + "'");
    if (std::isnan(alpha)) throw Error(ErrorKind::InvalidInput, "--alpha is required");
    return {alpha, phi0, c};
  }

  Expr relation() const {
    if (!phi.empty() && !family.empty())
      throw Error(ErrorKind::InvalidInput, "give either --phi or --family, not both");
    if (!phi.empty()) return parse(phi);
    if (family.empty())
      throw Error(ErrorKind::InvalidInput, "one of --phi or --family is required");
    return entropy(chaplygin());
  }
};

struct GridArgs {
  std::string q1 = "0.5:5:20";
  std::string q2;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--grid", q1, "axis spec [log:]min:max:count")->capture_default_str();
    cmd->add_option("--grid-q2", q2, "separate spec for the q2 axis");
  }

  Grid grid() const {
    const Axis a = parse_axis(q1);
    return Grid{a, q2.empty() ? a : parse_axis(q2)};
  }
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  f << text;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownIdentifier:
    case ErrorKind::InvalidInput: return kExitUsage;
    default: return kExitDomain;
  }
}

std::string alpha_label(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature and isothermal-coordinate engine for two-variable "
               "thermodynamic fundamental relations",
               "gtd"};
  app.require_subcommand(1);
  std::string out_path;
  std::string summary_path;

  // curvature
  auto* curv = app.add_subcommand("curvature", "curvature statistics over a grid");
  RelationArgs curv_rel;
  GridArgs curv_grid;
  std::string metric = "natural";
  curv_rel.add_to(curv);
  curv_grid.add_to(curv);
  curv->add_option("--metric", metric, "natural|hessian")->capture_default_str();
  curv->add_option("--out", out_path, "JSON output path");

  // einstein
  auto* eins = app.add_subcommand("einstein", "reduced Einstein-equation residual");
  RelationArgs eins_rel;
  GridArgs eins_grid;
  std::string k_text = "auto";
  eins_rel.add_to(eins);
  eins_grid.add_to(eins);
  eins->add_option("--K", k_text, "auto or a numeric curvature")->capture_default_str();
  eins->add_option("--out", out_path, "JSON output path");

  // radius
  auto* rad = app.add_subcommand("radius", "circumference radius profile R^2");
  RelationArgs rad_rel;
  rad_rel.family = "chaplygin";
  GridArgs rad_grid;
  rad_grid.q1 = "log:0.01:100:50";
  std::optional<double> v_fixed;
  std::string u_range = "0.1:10:200";
  rad_rel.add_to(rad, true);
  rad_grid.add_to(rad);
  rad->add_option("--v-fixed", v_fixed, "fix v and sample u only");
  rad->add_option("--u-range", u_range, "u axis when --v-fixed is given")->capture_default_str();
  rad->add_option("--out", out_path, "CSV output path");
  rad->add_option("--summary", summary_path, "JSON summary path");

  // classify
  auto* cls = app.add_subcommand("classify", "physical classification of the family");
  std::vector<double> alpha_list;
  GridArgs cls_grid;
  cls_grid.q1 = "log:0.01:100:50";
  double cls_phi0 = 1.0, cls_c = 1.0;
  cls->add_option("--alpha-list", alpha_list, "comma-separated exponents")
      ->required()
      ->delimiter(',');
  cls->add_option("--phi0", cls_phi0)->capture_default_str();
  cls->add_option("--c", cls_c)->capture_default_str();
  cls_grid.add_to(cls);
  cls->add_option("--out", out_path, "JSON output path");

  // isothermal
  auto* iso = app.add_subcommand("isothermal", "isothermal coordinate tools");
  iso->require_subcommand(1);
  std::string iso_phi, coords_file, S_text, T_text, g1_text;
  double mix = 0.0, xi = 1.0, chi = 1.0;
  bool no_constraint_check = false;
  GridArgs iso_grid;
  iso_grid.q1 = "0.5:2:16";
  auto* verify = iso->add_subcommand("verify", "residuals of a coordinate CSV");
  verify->add_option("--phi", iso_phi)->required();
  verify->add_option("--coords", coords_file, "CSV with q1,q2,x,y")->required();
  verify->add_option("--out", out_path, "CSV output path");
  verify->add_option("--summary", summary_path, "JSON summary path");
  auto* sep = iso->add_subcommand("separable", "chart for Phi = S(q1) + T(q2)");
  sep->add_option("--S", S_text)->required();
  sep->add_option("--T", T_text)->required();
  sep->add_option("--c", mix)->capture_default_str();
  iso_grid.add_to(sep);
  sep->add_option("--out", out_path, "CSV output path");
  sep->add_option("--summary", summary_path, "JSON summary path");
  auto* integ = iso->add_subcommand("integrate", "chart for the constrained family");
  integ->add_option("--phi", iso_phi)->required();
  integ->add_option("--g1", g1_text, "gauge function of q1")->required();
  integ->add_flag("--no-constraint-check", no_constraint_check);
  iso_grid.add_to(integ);
  integ->add_option("--out", out_path, "CSV output path");
  integ->add_option("--summary", summary_path, "JSON summary path");
  auto* loglin = iso->add_subcommand("loglinear", "chart for log(xi q1 + chi q2)");
  loglin->add_option("--xi", xi)->capture_default_str();
  loglin->add_option("--chi", chi)->capture_default_str();
  loglin->add_option("--c", mix)->capture_default_str();
  loglin->add_option("--out", out_path, "JSON output path");

  // figures
  auto* figs = app.add_subcommand("figures", "CSV data behind the radius figures");
  std::string which;
  std::string out_dir;
  figs->add_option("which", which, "fig1|fig2")->required()->check(
      CLI::IsMember({"fig1", "fig2"}));
  figs->add_option("--out", out_dir, "output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "gtd: error: UsageError: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    if (*curv) {
      const auto report = curvature_scan(curv_rel.relation(), parse_metric_kind(metric),
                                         curv_grid.grid());
      emit(dump_json(to_json(report)), out_path, out);
    } else if (*eins) {
      std::optional<double> K;
      if (k_text != "auto") {
        try {
          std::size_t used = 0;
          K = std::stod(k_text, &used);
          if (used != k_text.size()) throw std::invalid_argument(k_text);
        } catch (const std::exception&) {
          throw Error(ErrorKind::InvalidInput, "--K must be 'auto' or a number");
        }
      }
      const auto scan = einstein_scan(eins_rel.relation(), eins_grid.grid(), K);
      emit(dump_json(to_json(scan)), out_path, out);
    } else if (*rad) {
      Grid grid = rad_grid.grid();
      if (v_fixed) grid = Grid{parse_axis(u_range), Axis{*v_fixed, *v_fixed, 1, false}};
      const auto prof = radius_profile(rad_rel.chaplygin(), grid);
      std::ostringstream csv;
      write_radius_csv(csv, prof);
      emit(csv.str(), out_path, out);
      if (!summary_path.empty()) emit(dump_json(summary_json(prof)), summary_path, out);
    } else if (*cls) {
      nlohmann::json table = nlohmann::json::array();
      for (double a : alpha_list)
        table.push_back(to_json(classify({a, cls_phi0, cls_c}, cls_grid.grid())));
      emit(dump_json(table), out_path, out);
    } else if (*verify) {
      std::ifstream in(coords_file, std::ios::binary);
      if (!in) throw Error(ErrorKind::InvalidInput, "cannot read '" + coords_file + "'");
      const Expr phi = parse(iso_phi);
      const CoordField field = read_coord_csv(in);
      std::ostringstream csv;
      write_coord_csv(csv, phi, field);
      emit(csv.str(), out_path, out);
      if (!summary_path.empty()) {
        double worst = 0.0, circ = 0.0;
        for (std::size_t i = 0; i < field.q1_nodes().size(); ++i) {
          for (std::size_t j = 0; j < field.q2_nodes().size(); ++j) {
            const Point2 p{field.q1_nodes()[i], field.q2_nodes()[j]};
            const Jet4 jt = jet(phi, p);
            const auto g = field.gradient_at(i, j);
            worst = std::max(worst, pullback_residuals(jt, g).max_abs());
            circ = std::max(circ, std::abs(circumference_check(jt, g).residual));
          }
        }
        emit(dump_json({{"max_pullback_residual", worst},
                        {"max_circumference_residual", circ},
                        {"gradient", "central-difference"}}),
             summary_path, out);
      }
    } else if (*sep) {
      const Expr S = parse(S_text), T = parse(T_text);
      const CoordField field = separable_coords(S, T, mix, iso_grid.grid());
      std::ostringstream csv;
      write_coord_csv(csv, S + T, field);
      emit(csv.str(), out_path, out);
      if (!summary_path.empty()) {
        double worst = 0.0;
        for (const auto& p : field.nodes())
          worst = std::max(worst, pullback_residuals(S + T, field, p).max_abs());
        emit(dump_json({{"max_pullback_residual", worst}, {"c", mix}}), summary_path, out);
      }
    } else if (*integ) {
      const Expr phi = parse(iso_phi);
      IntegrateOptions opts;
      opts.check_constraints = !no_constraint_check;
      const auto result = integrate_coords(phi, parse(g1_text), iso_grid.grid(), opts);
      std::ostringstream csv;
      write_coord_csv(csv, phi, result.field);
      emit(csv.str(), out_path, out);
      if (!summary_path.empty())
        emit(dump_json({{"max_compatibility_residual", result.max_compatibility},
                        {"grid_q1", format_axis(iso_grid.grid().q1)},
                        {"grid_q2", format_axis(iso_grid.grid().q2)}}),
             summary_path, out);
    } else if (*loglin) {
      emit(dump_json(to_json(loglinear_coords(xi, chi, mix))), out_path, out);
    } else if (*figs) {
      std::filesystem::create_directories(out_dir);
      const std::filesystem::path dir(out_dir);
      if (which == "fig1") {
        for (double a : {-2.0, -1.0, 0.5, 2.0}) {
          const Grid grid{parse_axis("0.1:10:200"), Axis{1.0, 1.0, 1, false}};
          std::ostringstream csv;
          write_radius_csv(csv, radius_profile({a, 1.0, 1.0}, grid));
          emit(csv.str(), (dir / ("fig1_alpha_" + alpha_label(a) + ".csv")).string(), out);
        }
      } else {
        std::ostringstream csv;
        csv << "alpha,min_R2,max_R2,classification\n";
        for (int k = 0; k <= 40; ++k) {
          if (k == 20 || k == 40) continue;  // alpha = 0 and alpha = 1
          const double a = (k - 20) / 20.0;
          const auto prof = radius_profile({a, 1.0, 1.0}, default_classification_grid());
          csv << format_double(a) << ',' << format_double(prof.min_R2) << ','
              << format_double(prof.max_R2) << ',' << to_string(prof.classification)
              << '\n';
        }
        emit(csv.str(), (dir / "fig2_min_radius.csv").string(), out);
      }
    }
  } catch (const Error& e) {
    err << "gtd: error: " << to_string(e.kind()) << ": " << one_line(e.what()) << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "gtd: error: InternalError: " << one_line(e.what()) << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace gtd::cli
