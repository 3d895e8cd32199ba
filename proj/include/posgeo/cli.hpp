#ifndef POSGEO_CLI_HPP
#define POSGEO_CLI_HPP

#include "posgeo/coordinates.hpp"
#include "posgeo/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace posgeo {

/// Polygon document: {"name": "...", "vertices": [[x, y], ...]}.
struct PolygonFile {
  std::optional<std::string> name;
  Polyline2<double> vertices;
};

/// Raised for malformed documents and command-line values.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

PolygonFile parse_polygon(const std::string& text);
PolygonFile read_polygon_file(const std::string& path);

/// 12 significant digits, '.' separator, no locale; -0 prints as 0.
std::string format_number(double value);

/// Comma-separated decimal numbers.
std::vector<double> parse_numbers(const std::string& text);

/// Parses "X,Y" (whitespace allowed around the separator).
Vector2<double> parse_point(const std::string& text);

/// Sampling grid over a bounding box. Points closer to the polygon boundary
/// than margin * diameter are excluded from output.
struct GridSpec {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  int nx = 2, ny = 2;
  double margin = 0.01;

  void validate() const;
  double x(int i) const { return xmin + (xmax - xmin) * i / (nx - 1); }
  double y(int j) const { return ymin + (ymax - ymin) * j / (ny - 1); }
};

GridSpec grid_for(const ConvexPolytope<double>& poly, int nx, int ny, double margin);

struct GridSample {
  double x, y;
  std::optional<double> value;  // empty outside the polygon or inside the margin
};

/// Canonical function over the grid in row-major order (y outer, x inner).
std::vector<GridSample> sample_canonical(const ConvexPolytope<double>& poly, const GridSpec& grid,
                                         std::size_t base = 0);

void write_grid_csv(std::ostream& out, const std::vector<GridSample>& samples);

/// Nine-step sequential palette used for log10 heatmaps (light to dark).
const std::vector<std::string>& heatmap_palette();

void write_heatmap_svg(std::ostream& out, const ConvexPolytope<double>& poly, const GridSpec& grid,
                       const std::vector<GridSample>& samples);

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct InvariantOptions {
  std::uint64_t seed = 1;
  int trials = 100;
};

/// Route agreement, partition of unity, linear precision, positivity,
/// Lagrange/edge restriction, additivity, residue ratio and dual-volume
/// identity on one polygon.
std::vector<PropertyResult> run_invariant_suite(const ConvexPolytope<double>& poly,
                                                const InvariantOptions& options = {});

/// Entry point behind the posgeo executable. Exit codes: 0 success,
/// 1 usage or input error, 2 failed checks.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace posgeo

#endif  // POSGEO_CLI_HPP
