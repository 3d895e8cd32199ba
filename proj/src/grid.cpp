#include "posgeo/canonical.hpp"
#include "posgeo/cli.hpp"

#include <cmath>
#include <ostream>

namespace posgeo {

void GridSpec::validate() const {
  if (!(xmin < xmax) || !(ymin < ymax)) throw InputError("grid bounding box is empty");
  if (nx < 2 || ny < 2) throw InputError("grid resolution must be at least 2 in each direction");
  if (!(margin >= 0 && margin < 0.5)) throw InputError("grid margin must lie in [0, 0.5)");
}

GridSpec grid_for(const ConvexPolytope<double>& poly, int nx, int ny, double margin) {
  GridSpec g;
  g.xmin = g.xmax = poly.vertex(0).x();
  g.ymin = g.ymax = poly.vertex(0).y();
  for (const auto& v : poly.vertices()) {
    g.xmin = std::min(g.xmin, v.x());
    g.xmax = std::max(g.xmax, v.x());
    g.ymin = std::min(g.ymin, v.y());
    g.ymax = std::max(g.ymax, v.y());
  }
  g.nx = nx;
  g.ny = ny;
  g.margin = margin;
  g.validate();
  return g;
}

std::vector<GridSample> sample_canonical(const ConvexPolytope<double>& poly, const GridSpec& grid,
                                         std::size_t base) {
  grid.validate();
  const auto canonical = polytope_canonical(poly, base);
  const double cutoff = grid.margin * poly.diameter();
  std::vector<GridSample> out;
  out.reserve(std::size_t(grid.nx) * std::size_t(grid.ny));
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Vector2<double> p(grid.x(i), grid.y(j));
      GridSample s{p.x(), p.y(), std::nullopt};
      if (poly.strictly_contains(p) && poly.boundary_distance(p) >= cutoff) s.value = canonical.at(p);
      out.push_back(s);
    }
  }
  return out;
}

void write_grid_csv(std::ostream& out, const std::vector<GridSample>& samples) {
  out << "x,y,value\n";
  for (const auto& s : samples) {
    if (!s.value) continue;
    out << format_number(s.x) << ',' << format_number(s.y) << ',' << format_number(*s.value) << '\n';
  }
}

const std::vector<std::string>& heatmap_palette() {
  // ColorBrewer YlOrRd, 9 classes
  static const std::vector<std::string> palette = {"#ffffcc", "#ffeda0", "#fed976", "#feb24c", "#fd8d3c",
                                                   "#fc4e2a", "#e31a1c", "#bd0026", "#800026"};
  return palette;
}

void write_heatmap_svg(std::ostream& out, const ConvexPolytope<double>& poly, const GridSpec& grid,
                       const std::vector<GridSample>& samples) {
  constexpr double kWidth = 600.0;
  const double cell_w = kWidth / grid.nx;
  const double cell_h = cell_w * ((grid.ymax - grid.ymin) / (grid.ny - 1)) / ((grid.xmax - grid.xmin) / (grid.nx - 1));
  const double height = cell_h * grid.ny;

  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : samples) {
    if (!s.value || !(*s.value > 0)) continue;
    lo = std::min(lo, std::log10(*s.value));
    hi = std::max(hi, std::log10(*s.value));
  }
  const auto& palette = heatmap_palette();

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(kWidth) << "\" height=\""
      << format_number(height) << "\" viewBox=\"0 0 " << format_number(kWidth) << ' ' << format_number(height)
      << "\">\n";
  out << "<!-- log10 of the canonical function; range [" << (lo <= hi ? format_number(lo) : "n/a") << ", "
      << (lo <= hi ? format_number(hi) : "n/a") << "] -->\n";
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const int i = int(k % std::size_t(grid.nx));
    const int j = int(k / std::size_t(grid.nx));
    std::string fill = "#ffffff";
    const auto& s = samples[k];
    if (s.value && *s.value > 0) {
      const double t = hi > lo ? (std::log10(*s.value) - lo) / (hi - lo) : 0.0;
      const auto bin = std::min<std::size_t>(palette.size() - 1, std::size_t(t * double(palette.size())));
      fill = palette[bin];
    }
    // row j = 0 is the bottom of the box
    out << "<rect x=\"" << format_number(i * cell_w) << "\" y=\"" << format_number(height - (j + 1) * cell_h)
        << "\" width=\"" << format_number(cell_w) << "\" height=\"" << format_number(cell_h) << "\" fill=\""
        << fill << "\"/>\n";
  }
  out << "<polygon fill=\"none\" stroke=\"#000000\" stroke-width=\"1\" points=\"";
  for (std::size_t v = 0; v < poly.size(); ++v) {
    const auto& p = poly.vertices()[v];
    const double px = (p.x() - grid.xmin) / (grid.xmax - grid.xmin) * (kWidth - cell_w) + cell_w / 2;
    const double py = height - ((p.y() - grid.ymin) / (grid.ymax - grid.ymin) * (height - cell_h) + cell_h / 2);
    out << (v ? " " : "") << format_number(px) << ',' << format_number(py);
  }
  out << "\"/>\n</svg>\n";
}

}  // namespace posgeo
