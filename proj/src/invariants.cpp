#include "posgeo/canonical.hpp"
#include "posgeo/cli.hpp"
#include "posgeo/coordinates.hpp"

#include <random>
#include <sstream>

namespace posgeo {

namespace {

double relative(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0 : std::abs(a - b) / scale;
}

struct Tracker {
  PropertyResult result;
  double worst = 0;

  explicit Tracker(std::string name) { result.name = std::move(name); }
  void observe(double err) { worst = std::max(worst, std::isnan(err) ? INFINITY : err); }
  void fail(std::string why) {
    if (result.detail.empty()) result.detail = std::move(why);
  }
  PropertyResult finish(double tol) {
    result.passed = result.detail.empty() && worst <= tol;
    if (result.detail.empty()) {
      std::ostringstream os;
      os << "max error " << format_number(worst) << " (tolerance " << format_number(tol) << ")";
      result.detail = os.str();
    }
    return result;
  }
};

}  // namespace

std::vector<PropertyResult> run_invariant_suite(const ConvexPolytope<double>& poly, const InvariantOptions& options) {
  std::mt19937_64 rng(options.seed);
  const double diam = poly.diameter();
  const std::size_t n = poly.size();
  std::vector<Vector2<double>> points;
  for (int t = 0; t < options.trials; ++t) points.push_back(random_interior_point(poly, rng, 1e-6 * diam));

  const Route routes[] = {Route::Classical, Route::Canonical, Route::Dual};
  Tracker agreement("route agreement"), unity("partition of unity"), precision("linear precision"),
      positivity("positivity"), additivity("additivity"), dual_volume("dual-volume identity");

  const auto base0 = polytope_canonical(poly, 0);
  std::vector<CanonicalFn<double>> fans;
  for (std::size_t b = 1; b < n; ++b) fans.push_back(polytope_canonical(poly, b));

  for (const auto& x : points) {
    try {
      std::vector<BaryWeights<double>> weights;
      for (Route r : routes) weights.push_back(wachspress(poly, x, r));
      for (std::size_t a = 0; a < weights.size(); ++a) {
        for (std::size_t b = a + 1; b < weights.size(); ++b)
          for (Eigen::Index i = 0; i < weights[a].size(); ++i)
            agreement.observe(relative(weights[a][i], weights[b][i]));
      }
      for (const auto& w : weights) {
        unity.observe(std::abs(w.values.sum() - 1));
        Vector2<double> reproduced = Vector2<double>::Zero();
        for (std::size_t i = 0; i < n; ++i) reproduced += w[Eigen::Index(i)] * poly.vertices()[i];
        precision.observe((reproduced - x).norm() / diam);
        positivity.observe(std::max(0.0, -w.values.minCoeff()));
      }
      const double c0 = base0.at(x);
      for (const auto& fan : fans) additivity.observe(relative(c0, fan.at(x)));
      dual_volume.observe(relative(c0, polygon_area(polar_dual(poly, x).vertices)));
    } catch (const GeometryError& e) {
      agreement.fail(e.what());
    }
  }

  Tracker lagrange("Lagrange and edge restriction");
  for (std::size_t j = 0; j < n; ++j) {
    const auto w = wachspress_classical(poly, poly.vertices()[j]);
    for (std::size_t i = 0; i < n; ++i)
      if (w[Eigen::Index(i)] != (i == j ? 1.0 : 0.0)) lagrange.fail("vertex weights differ from the Kronecker delta");
    for (double t : {0.125, 0.5, 0.8}) {
      const auto& p = poly.vertices()[j];
      const auto& q = poly.vertices()[(j + 1) % n];
      const auto e = wachspress_classical(poly, Vector2<double>(p + t * (q - p)));
      for (std::size_t i = 0; i < n; ++i) {
        const double v = e[Eigen::Index(i)];
        if (i == j) lagrange.observe(std::abs(v - (1 - t)));
        else if (i == (j + 1) % n) lagrange.observe(std::abs(v - t));
        else if (std::abs(v) > 1e-12) lagrange.fail("non-edge weight exceeds 1e-12 on an edge");
      }
    }
  }

  Tracker residue("residue ratio");
  std::vector<double> ratios;
  try {
    for (std::size_t f = 0; f < n; ++f)
      for (double t : {0.25, 0.5, 0.75}) ratios.push_back(residue_ratio(poly, f, t, local_residue_schedule(poly, f, t)));
  } catch (const GeometryError& e) {
    residue.fail(e.what());
  }
  for (double r : ratios) {
    residue.observe(std::abs(r - ratios.front()));
    residue.observe(std::abs(std::abs(r) - 0.5));
  }

  return {agreement.finish(1e-9), unity.finish(1e-10),   precision.finish(1e-10), positivity.finish(1e-10),
          lagrange.finish(1e-10), additivity.finish(1e-10), residue.finish(1e-6),   dual_volume.finish(1e-9)};
}

}  // namespace posgeo
