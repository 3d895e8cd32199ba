#ifndef POSGEO_GEOMETRY_HPP
#define POSGEO_GEOMETRY_HPP

#include "posgeo/projective.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <vector>

namespace posgeo {

template <typename Scalar>
using Polyline2 = std::vector<Vector2<Scalar>>;

/// Signed area of the triangle (a, b, c); half the bracket of the lifted points.
template <typename Scalar>
Scalar signed_triangle_area(const Vector2<Scalar>& a, const Vector2<Scalar>& b,
                            const Vector2<Scalar>& c) {
  // difference form: exactly zero when a coincides with b or c
  const Vector2<Scalar> u = b - a;
  const Vector2<Scalar> v = c - a;
  return (u.x() * v.y() - u.y() * v.x()) / Scalar(2);
}

/// Shoelace area, positive for counterclockwise order.
template <typename Scalar>
Scalar polygon_area(std::span<const Vector2<Scalar>> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw GeometryError("polygon_area needs at least 3 vertices");
  Scalar twice = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = vertices[i];
    const auto& q = vertices[(i + 1) % n];
    twice += p.x() * q.y() - p.y() * q.x();
  }
  return twice / Scalar(2);
}

template <typename Scalar>
Scalar polygon_area(const Polyline2<Scalar>& vertices) {
  return polygon_area(std::span<const Vector2<Scalar>>(vertices));
}

template <typename Scalar>
Scalar diameter(std::span<const Vector2<Scalar>> points) {
  Scalar d = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) d = std::max(d, (points[i] - points[j]).norm());
  return d;
}

/// Strictly convex counterclockwise polygon with inward unit-gradient edge forms.
///
/// Facet i is the edge (p_i, p_{i+1}); its form evaluates to the Euclidean
/// distance from the edge line, positive inside.
template <typename Scalar = double>
class ConvexPolytope {
 public:
  using Point = Vector2<Scalar>;

  const Polyline2<Scalar>& vertices() const { return vertices_; }
  const std::vector<HyperplaneForm<Scalar>>& facets() const { return facets_; }
  std::size_t size() const { return vertices_.size(); }
  static constexpr int dim() { return 2; }

  const Point& vertex(std::ptrdiff_t i) const { return vertices_[wrap(i)]; }
  const HyperplaneForm<Scalar>& facet(std::ptrdiff_t i) const { return facets_[wrap(i)]; }
  HomPoint<Scalar> lifted(std::ptrdiff_t i) const { return HomPoint<Scalar>::lift(vertex(i)); }

  std::vector<HomPoint<Scalar>> lifted_vertices() const {
    std::vector<HomPoint<Scalar>> out;
    out.reserve(size());
    for (const auto& v : vertices_) out.push_back(HomPoint<Scalar>::lift(v));
    return out;
  }

  /// Signed distance of x from the line of facet i (positive inside).
  Scalar facet_value(std::ptrdiff_t i, const Point& x) const {
    const auto& c = facet(i).coeffs();
    return c(0) * x.x() + c(1) * x.y() + c(2);
  }

  Point inward_normal(std::ptrdiff_t i) const { return facet(i).coeffs().template head<2>(); }

  Scalar diameter() const { return diameter_; }

  /// True when the input arrived clockwise and was reversed.
  bool reversed() const { return reversed_; }

  /// Index in the caller's original vertex list of stored vertex i.
  std::size_t original_index(std::size_t i) const { return reversed_ ? (size() - i) % size() : i; }

  /// Every facet value exceeds 1e-12 * diameter.
  bool strictly_contains(const Point& x) const {
    const Scalar tol = interior_tolerance();
    for (std::size_t i = 0; i < size(); ++i)
      if (!(facet_value(std::ptrdiff_t(i), x) > tol)) return false;
    return true;
  }

  /// Inside or on the boundary, up to the interiority tolerance.
  bool contains(const Point& x) const {
    const Scalar tol = interior_tolerance();
    for (std::size_t i = 0; i < size(); ++i)
      if (facet_value(std::ptrdiff_t(i), x) < -tol) return false;
    return true;
  }

  Scalar interior_tolerance() const { return Scalar(1e-12) * diameter_; }

  /// Smallest facet value at x; the distance to the boundary when x is inside.
  Scalar boundary_distance(const Point& x) const {
    Scalar d = facet_value(0, x);
    for (std::size_t i = 1; i < size(); ++i) d = std::min(d, facet_value(std::ptrdiff_t(i), x));
    return d;
  }

  Point vertex_centroid() const {
    Point c = Point::Zero();
    for (const auto& v : vertices_) c += v;
    return c / Scalar(size());
  }

  template <typename S>
  friend ConvexPolytope<S> validate_polygon(Polyline2<S> points);

 private:
  std::size_t wrap(std::ptrdiff_t i) const {
    const auto n = std::ptrdiff_t(vertices_.size());
    return std::size_t(((i % n) + n) % n);
  }

  Polyline2<Scalar> vertices_;
  std::vector<HyperplaneForm<Scalar>> facets_;
  Scalar diameter_ = 0;
  bool reversed_ = false;
};

/// Validates a strictly convex polygon; clockwise input is reversed and flagged.
template <typename Scalar>
ConvexPolytope<Scalar> validate_polygon(Polyline2<Scalar> points) {
  const std::size_t n = points.size();
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
  for (const auto& p : points)
    if (!p.allFinite()) throw GeometryError("polygon vertex is not finite");

  const Scalar diam = diameter(std::span<const Vector2<Scalar>>(points));
  if (!(diam > 0)) throw GeometryError("polygon is degenerate (zero diameter)");
  for (std::size_t i = 0; i < n; ++i) {
    if ((points[i] - points[(i + 1) % n]).norm() <= Scalar(1e-12) * diam)
      throw GeometryError("polygon has duplicate consecutive vertices at index " + std::to_string(i));
  }

  auto turns = [&](const Polyline2<Scalar>& pts) {
    std::vector<Scalar> t(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = signed_triangle_area(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
    }
    return t;
  };
  const Scalar area_tol = Scalar(1e-12) * diam * diam;

  ConvexPolytope<Scalar> poly;
  std::vector<Scalar> t = turns(points);
  const bool all_neg = std::all_of(t.begin(), t.end(), [&](Scalar v) { return v < -area_tol; });
  if (all_neg) {
    std::reverse(points.begin(), points.end());
    // keep the caller's first vertex first: stored i <-> original (n-i) % n
    std::rotate(points.begin(), points.end() - 1, points.end());
    poly.reversed_ = true;
    t = turns(points);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t[i] > area_tol)) {
      throw GeometryError("polygon is not strictly convex at vertex " + std::to_string(i) +
                          " (collinear or reflex corner)");
    }
  }
  // all-left turns also admit star polygons; require total turning of one revolution
  Scalar turning = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector2<Scalar> a = points[i] - points[(i + n - 1) % n];
    const Vector2<Scalar> b = points[(i + 1) % n] - points[i];
    turning += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  }
  if (std::abs(turning - Scalar(2) * std::numbers::pi_v<Scalar>) > Scalar(1e-6))
    throw GeometryError("polygon winds more than once (self-intersecting)");

  poly.facets_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector2<Scalar>& p = points[i];
    const Vector2<Scalar> e = points[(i + 1) % n] - p;
    const Vector2<Scalar> nin = Vector2<Scalar>(-e.y(), e.x()) / e.norm();
    poly.facets_.emplace_back(VectorX<Scalar>(Vector3<Scalar>(nin.x(), nin.y(), -nin.dot(p))));
  }
  poly.vertices_ = std::move(points);
  poly.diameter_ = diam;
  return poly;
}

/// Polar dual of a polygon with respect to an interior point.
template <typename Scalar = double>
struct DualPolygon {
  /// One dual vertex per primal facet, in facet order.
  Polyline2<Scalar> vertices;
  Vector2<Scalar> base_point;
};

/// For facet n.p <= h (outward unit normal) the dual vertex is n / (h - n.x).
template <typename Scalar>
DualPolygon<Scalar> polar_dual(const ConvexPolytope<Scalar>& poly, const Vector2<Scalar>& x) {
  if (!poly.strictly_contains(x)) {
    throw GeometryError("polar_dual: point is not strictly interior (dual unbounded or degenerate)");
  }
  DualPolygon<Scalar> dual;
  dual.base_point = x;
  dual.vertices.reserve(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto k = std::ptrdiff_t(i);
    // h - n.x with outward n equals the inward facet value at x
    dual.vertices.push_back(-poly.inward_normal(k) / poly.facet_value(k, x));
  }
  return dual;
}

/// Reads a dual polygon back as a polygon of the dual plane and dualizes it
/// about the dual-plane origin. Returns the primal vertices, facet i of the
/// dual giving primal vertex i + 1.
template <typename Scalar>
Polyline2<Scalar> polar_dual_inverse(const DualPolygon<Scalar>& dual) {
  auto dpoly = validate_polygon(dual.vertices);
  const DualPolygon<Scalar> back = polar_dual(dpoly, Vector2<Scalar>(Vector2<Scalar>::Zero()));
  Polyline2<Scalar> out;
  out.reserve(back.vertices.size());
  for (const auto& v : back.vertices) out.push_back(v + dual.base_point);
  return out;
}

/// Nondegenerate simplex of R^d, d <= 4.
template <typename Scalar = double>
class Simplex {
 public:
  explicit Simplex(std::vector<VectorX<Scalar>> vertices) : vertices_(std::move(vertices)) {
    const auto d = Eigen::Index(vertices_.size()) - 1;
    if (d < 1 || d > 4) throw GeometryError("simplex dimension must be between 1 and 4");
    for (const auto& v : vertices_)
      if (v.size() != d) throw GeometryError("simplex needs d+1 vertices in R^d");
    const auto lifted = lifted_vertices();
    if (bracket(std::span<const HomPoint<Scalar>>(lifted)) == Scalar(0))
      throw GeometryError("simplex is degenerate");
  }

  Eigen::Index dim() const { return Eigen::Index(vertices_.size()) - 1; }
  const std::vector<VectorX<Scalar>>& vertices() const { return vertices_; }

  std::vector<HomPoint<Scalar>> lifted_vertices() const {
    std::vector<HomPoint<Scalar>> out;
    for (const auto& v : vertices_) out.push_back(HomPoint<Scalar>::lift(v));
    return out;
  }

 private:
  std::vector<VectorX<Scalar>> vertices_;
};

/// Uniform-ish interior sample: random convex combination of the vertices,
/// rejected when closer to the boundary than min_distance.
template <typename Scalar, typename Rng>
Vector2<Scalar> random_interior_point(const ConvexPolytope<Scalar>& poly, Rng& rng,
                                      Scalar min_distance = 0) {
  std::exponential_distribution<double> expo(1.0);
  for (;;) {
    Vector2<Scalar> p = Vector2<Scalar>::Zero();
    Scalar total = 0;
    for (const auto& v : poly.vertices()) {
      const Scalar w = Scalar(expo(rng));
      p += w * v;
      total += w;
    }
    p /= total;
    if (poly.strictly_contains(p) && poly.boundary_distance(p) >= min_distance) return p;
  }
}

}  // namespace posgeo

#endif  // POSGEO_GEOMETRY_HPP
