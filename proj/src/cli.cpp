#include "posgeo/cli.hpp"

#include "posgeo/adjoint.hpp"
#include "posgeo/canonical.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace posgeo {

namespace {

struct LoadedPolygon {
  PolygonFile file;
  ConvexPolytope<double> poly;
};

LoadedPolygon load(const std::string& path, std::ostream& err) {
  PolygonFile file = read_polygon_file(path);
  auto poly = validate_polygon(file.vertices);
  if (poly.reversed()) err << "warning: " << path << " is clockwise; vertices reversed internally\n";
  return {std::move(file), std::move(poly)};
}

Route parse_route(const std::string& name) {
  if (name == "classical") return Route::Classical;
  if (name == "canonical") return Route::Canonical;
  if (name == "dual") return Route::Dual;
  throw InputError("unknown route '" + name + "' (expected classical, canonical or dual)");
}

std::pair<int, int> parse_resolution(const std::string& text) {
  const auto p = parse_point(text);
  if (p.x() != std::floor(p.x()) || p.y() != std::floor(p.y()))
    throw InputError("grid resolution must be two integers NX,NY");
  return {int(p.x()), int(p.y())};
}

// Weights in the order of the caller's vertex list.
void print_weights(std::ostream& out, const ConvexPolytope<double>& poly, const BaryWeights<double>& w) {
  std::vector<double> ordered(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) ordered[poly.original_index(i)] = w[Eigen::Index(i)];
  for (std::size_t i = 0; i < ordered.size(); ++i) out << (i ? " " : "") << format_number(ordered[i]);
  out << '\n';
}

std::string monomial(std::pair<int, int> e) {
  std::string s;
  auto term = [&](const char* v, int p) {
    if (p == 0) return;
    if (!s.empty()) s += '*';
    s += v;
    if (p > 1) s += '^' + std::to_string(p);
  };
  term("x", e.first);
  term("y", e.second);
  return s.empty() ? "1" : s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical functions of positive geometries and Wachspress coordinates", "posgeo"};
  app.require_subcommand(1);

  std::string polygon_path, point_text, route_name = "classical", grid_text, svg_path, q_text;
  std::vector<std::string> points;
  double margin = 0.01;
  std::size_t base = 0;
  std::uint64_t seed = 1;
  int trials = 100;

  auto* coords = app.add_subcommand("coords", "Wachspress coordinates at query points");
  coords->add_option("polygon", polygon_path, "polygon JSON file")->required();
  coords->add_option("--point", points, "query point X,Y (repeatable; stdin when absent)")->allow_extra_args(false);
  coords->add_option("--route", route_name, "classical | canonical | dual");

  auto* canonical = app.add_subcommand("canonical", "canonical function over a grid as CSV");
  canonical->add_option("polygon", polygon_path, "polygon JSON file")->required();
  canonical->add_option("--grid", grid_text, "grid resolution NX,NY")->required();
  canonical->add_option("--svg", svg_path, "also write a log-scale heatmap");
  canonical->add_option("--margin", margin, "excluded boundary band, fraction of the diameter");
  canonical->add_option("--base", base, "fan triangulation base vertex");

  auto* dual = app.add_subcommand("dual", "polar dual polygon with respect to a point");
  dual->add_option("polygon", polygon_path, "polygon JSON file")->required();
  dual->add_option("--point", point_text, "base point X,Y")->required();

  auto* adjoint = app.add_subcommand("adjoint", "adjoint polynomial coefficients");
  adjoint->add_option("polygon", polygon_path, "polygon JSON file")->required();
  adjoint->add_option("--base", base, "fan triangulation base vertex");

  auto* check = app.add_subcommand("check", "run the invariant suite");
  check->add_option("polygon", polygon_path, "polygon JSON file")->required();
  check->add_option("--seed", seed, "random seed");
  check->add_option("--trials", trials, "random interior points")->check(CLI::PositiveNumber);

  auto* conic = app.add_subcommand("conic", "canonical function of a conic");
  conic->add_option("--q", q_text, "upper triangle q00,q01,q02,q11,q12,q22")->required();
  conic->add_option("--point", point_text, "affine point X,Y")->required();

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*coords) {
      const auto [file, poly] = load(polygon_path, err);
      const Route route = parse_route(route_name);
      auto emit = [&](const std::string& text) { print_weights(out, poly, wachspress(poly, parse_point(text), route)); };
      if (!points.empty()) {
        for (const auto& p : points) emit(p);
      } else {
        std::string line;
        while (std::getline(in, line)) {
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          if (line.find(',') == std::string::npos) {
            // "X Y" also accepted
            std::istringstream words(line);
            std::string x, y, extra;
            words >> x >> y;
            if (words >> extra) throw InputError("expected two numbers per line but got '" + line + "'");
            line = x + ',' + y;
          }
          emit(line);
        }
      }
    } else if (*canonical) {
      const auto [file, poly] = load(polygon_path, err);
      if (base >= poly.size()) throw InputError("--base must be a vertex index");
      const auto [nx, ny] = parse_resolution(grid_text);
      const GridSpec grid = grid_for(poly, nx, ny, margin);
      const auto samples = sample_canonical(poly, grid, base);
      write_grid_csv(out, samples);
      if (!svg_path.empty()) {
        std::ofstream svg(svg_path);
        if (!svg) throw InputError("cannot write '" + svg_path + "'");
        write_heatmap_svg(svg, poly, grid, samples);
      }
    } else if (*dual) {
      const auto [file, poly] = load(polygon_path, err);
      const auto d = polar_dual(poly, parse_point(point_text));
      out << "{\n  \"base_point\": [" << format_number(d.base_point.x()) << ", " << format_number(d.base_point.y())
          << "],\n  \"vertices\": [";
      for (std::size_t i = 0; i < d.vertices.size(); ++i) {
        out << (i ? ", " : "") << '[' << format_number(d.vertices[i].x()) << ", " << format_number(d.vertices[i].y())
            << ']';
      }
      out << "],\n  \"area\": " << format_number(polygon_area(d.vertices)) << "\n}\n";
    } else if (*adjoint) {
      const auto [file, poly] = load(polygon_path, err);
      if (base >= poly.size()) throw InputError("--base must be a vertex index");
      const auto a = extract_adjoint(poly, base);
      out << "{\n  \"degree\": " << a.degree << ",\n  \"monomials\": [";
      for (Eigen::Index k = 0; k < a.coefficients.size(); ++k)
        out << (k ? ", " : "") << '"' << monomial(AdjointPoly<double>::exponents(k)) << '"';
      out << "],\n  \"coefficients\": [";
      for (Eigen::Index k = 0; k < a.coefficients.size(); ++k)
        out << (k ? ", " : "") << format_number(a.coefficients(k));
      out << "],\n  \"residual\": " << format_number(a.residual) << "\n}\n";
    } else if (*check) {
      const auto [file, poly] = load(polygon_path, err);
      const auto results = run_invariant_suite(poly, {seed, trials});
      bool all = true;
      for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        all = all && r.passed;
      }
      return all ? 0 : 2;
    } else if (*conic) {
      const auto q = parse_numbers(q_text);
      if (q.size() != 6) throw InputError("--q expects six comma-separated values");
      const auto fn = conic_canonical(ConicQ<double>::from_upper(q[0], q[1], q[2], q[3], q[4], q[5]));
      out << format_number(fn(HomPoint<double>::lift(parse_point(point_text)))) << '\n';
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace posgeo
