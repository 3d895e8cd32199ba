// Generators and comparison helpers shared by the test binaries.
#ifndef POSGEO_TESTS_SUPPORT_HPP
#define POSGEO_TESTS_SUPPORT_HPP

#include "posgeo/posgeo.hpp"

#include <numbers>
#include <random>

namespace posgeo::testing {

using Vec2 = Vector2<double>;

inline double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0 : std::abs(a - b) / scale;
}

/// Random nondegenerate affine map x -> A x + t with condition number <= 1/0.3.
struct AffineMap {
  Eigen::Matrix2d linear;
  Vec2 shift;
  Vec2 operator()(const Vec2& x) const { return linear * x + shift; }
};

inline AffineMap random_affine(std::mt19937_64& rng, bool allow_reflection = false) {
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> stretch(0.3, 1.0);
  std::uniform_real_distribution<double> offset(-2, 2);
  const Eigen::Matrix2d r1 = Eigen::Rotation2Dd(angle(rng)).toRotationMatrix();
  const Eigen::Matrix2d r2 = Eigen::Rotation2Dd(angle(rng)).toRotationMatrix();
  Eigen::Matrix2d d = Eigen::Vector2d(1.0, stretch(rng)).asDiagonal();
  if (allow_reflection && (rng() & 1)) d(1, 1) = -d(1, 1);
  return {r1 * d * r2, Vec2(offset(rng), offset(rng))};
}

/// Random strictly convex counterclockwise n-gon of unit diameter: sorted
/// angles on a circle with a minimum angular gap, then a random affine map.
inline Polyline2<double> random_convex_vertices(std::mt19937_64& rng, int n) {
  const double gap = 0.25 * 2 * std::numbers::pi / n;
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<double> angles;
  for (;;) {
    angles.clear();
    for (int i = 0; i < n; ++i) angles.push_back(2 * std::numbers::pi * unit(rng));
    std::sort(angles.begin(), angles.end());
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      const double next = i + 1 < n ? angles[i + 1] : angles[0] + 2 * std::numbers::pi;
      ok = ok && next - angles[i] >= gap;
    }
    if (ok) break;
  }
  const AffineMap map = random_affine(rng);
  Polyline2<double> pts;
  for (double a : angles) pts.push_back(map(Vec2(std::cos(a), std::sin(a))));
  const double diam = diameter(std::span<const Vec2>(pts));
  for (auto& p : pts) p /= diam;
  return pts;
}

inline ConvexPolytope<double> random_convex_polygon(std::mt19937_64& rng, int n) {
  return validate_polygon(random_convex_vertices(rng, n));
}

inline ConvexPolytope<double> sym_square() {
  return validate_polygon<double>({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}});
}

inline ConvexPolytope<double> unit_square() {
  return validate_polygon<double>({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline ConvexPolytope<double> standard_triangle() {
  return validate_polygon<double>({{0, 0}, {1, 0}, {0, 1}});
}

inline ConvexPolytope<double> regular_polygon(int n, double radius = 1.0) {
  Polyline2<double> pts;
  for (int i = 0; i < n; ++i) {
    const double a = 2 * std::numbers::pi * i / n;
    pts.emplace_back(radius * std::cos(a), radius * std::sin(a));
  }
  return validate_polygon(pts);
}

/// Closed form of the canonical function of [-1,1]^2.
inline double sym_square_closed_form(const Vec2& x) {
  return 2.0 / ((1 - x.x() * x.x()) * (1 - x.y() * x.y()));
}

}  // namespace posgeo::testing

#endif  // POSGEO_TESTS_SUPPORT_HPP
