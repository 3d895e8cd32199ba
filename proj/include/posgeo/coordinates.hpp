#ifndef POSGEO_COORDINATES_HPP
#define POSGEO_COORDINATES_HPP

#include "posgeo/canonical.hpp"
#include "posgeo/geometry.hpp"

#include <string_view>

namespace posgeo {

enum class Route { Classical, Canonical, Dual, Area };

inline std::string_view route_name(Route r) {
  switch (r) {
    case Route::Classical: return "classical";
    case Route::Canonical: return "canonical";
    case Route::Dual: return "dual";
    case Route::Area: return "area";
  }
  return "unknown";
}

/// Barycentric weights, one per vertex, tagged with the route that made them.
template <typename Scalar = double>
struct BaryWeights {
  VectorX<Scalar> values;
  Route route = Route::Classical;

  Eigen::Index size() const { return values.size(); }
  Scalar operator[](Eigen::Index i) const { return values(i); }
};

/// Per-vertex pieces of the classical Wachspress formula at a point x.
template <typename Scalar = double>
struct WachspressTerms {
  struct Corner {
    Scalar corner_area;  // C_i = area(p_{i-1}, p_i, p_{i+1})
    Scalar prev_edge;    // A_{i-1,i} = area(x, p_{i-1}, p_i)
    Scalar next_edge;    // A_{i,i+1} = area(x, p_i, p_{i+1})
  };
  std::vector<Corner> corners;
};

template <typename Scalar>
WachspressTerms<Scalar> wachspress_terms(const ConvexPolytope<Scalar>& poly, const Vector2<Scalar>& x) {
  WachspressTerms<Scalar> out;
  const auto n = std::ptrdiff_t(poly.size());
  out.corners.reserve(std::size_t(n));
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out.corners.push_back({signed_triangle_area(poly.vertex(i - 1), poly.vertex(i), poly.vertex(i + 1)),
                           signed_triangle_area(x, poly.vertex(i - 1), poly.vertex(i)),
                           signed_triangle_area(x, poly.vertex(i), poly.vertex(i + 1))});
  }
  return out;
}

namespace detail {

template <typename Scalar>
BaryWeights<Scalar> lagrange(std::size_t n, std::size_t j, Route route) {
  BaryWeights<Scalar> w{VectorX<Scalar>::Zero(Eigen::Index(n)), route};
  w.values(Eigen::Index(j)) = Scalar(1);
  return w;
}

template <typename Scalar>
HomPoint<Scalar> translated(const HomPoint<Scalar>& p, const VectorX<Scalar>& origin) {
  // projective translation: [p : w] -> [p - w * origin : w]
  VectorX<Scalar> c = p.coords();
  const Eigen::Index d = p.dim();
  c.head(d) -= c(d) * origin;
  return HomPoint<Scalar>(std::move(c));
}

template <typename Scalar>
HomPoint<Scalar> chart_origin(Eigen::Index d) {
  VectorX<Scalar> c = VectorX<Scalar>::Zero(d + 1);
  c(d) = Scalar(1);
  return HomPoint<Scalar>(std::move(c));
}

}  // namespace detail

/// Linear interpolation weights on [a, b] as a ratio of segment canonical
/// functions, with x moved to the origin so its dual is the point at infinity.
template <typename Scalar>
BaryWeights<Scalar> segment_coords(Scalar a, Scalar b, Scalar x) {
  if (!(a < b)) throw GeometryError("segment_coords requires a < b");
  if (x < a || x > b) throw GeometryError("segment_coords: point outside the segment");
  if (x == a) return detail::lagrange<Scalar>(2, 0, Route::Canonical);
  if (x == b) return detail::lagrange<Scalar>(2, 1, Route::Canonical);

  const HomPoint<Scalar> pa{a - x, 1};
  const HomPoint<Scalar> pb{b - x, 1};
  const HomPoint<Scalar> dual{1, 0};
  const HomPoint<Scalar> here{0, 1};
  const Scalar whole = segment_canonical(pa, pb)(here);
  BaryWeights<Scalar> w{VectorX<Scalar>(2), Route::Canonical};
  w.values(0) = segment_canonical(pa, dual)(here) / whole;
  w.values(1) = segment_canonical(dual, pb)(here) / whole;
  return w;
}

/// Signed-area barycentric coordinates A_i / A.
template <typename Scalar>
BaryWeights<Scalar> triangle_coords(const Vector2<Scalar>& p0, const Vector2<Scalar>& p1,
                                    const Vector2<Scalar>& p2, const Vector2<Scalar>& x) {
  const Scalar area = signed_triangle_area(p0, p1, p2);
  const Scalar diam = std::max({(p1 - p0).norm(), (p2 - p1).norm(), (p0 - p2).norm()});
  if (!(std::abs(area) > Scalar(1e-12) * diam * diam)) throw GeometryError("degenerate triangle");
  BaryWeights<Scalar> w{VectorX<Scalar>(3), Route::Area};
  w.values(0) = signed_triangle_area(x, p1, p2) / area;
  w.values(1) = signed_triangle_area(p0, x, p2) / area;
  w.values(2) = signed_triangle_area(p0, p1, x) / area;
  return w;
}

/// Wachspress weights from corner and edge areas in cleared-denominator form,
///
///     w_i = C_i * prod_{k != i-1, i} A_{k,k+1},   lambda_i = w_i / sum w.
///
/// Valid on the closed polygon, including edges and vertices.
template <typename Scalar>
BaryWeights<Scalar> wachspress_classical(const ConvexPolytope<Scalar>& poly, const Vector2<Scalar>& x) {
  if (!poly.contains(x)) throw GeometryError("wachspress_classical: point lies outside the polygon");
  const std::size_t n = poly.size();
  const Scalar snap = Scalar(1e-12) * poly.diameter();
  for (std::size_t j = 0; j < n; ++j)
    if ((x - poly.vertices()[j]).norm() <= snap) return detail::lagrange<Scalar>(n, j, Route::Classical);

  const auto terms = wachspress_terms(poly, x);
  // A_{k,k+1} is corners[k].next_edge; clamp round-off below zero on edges
  std::vector<Scalar> edge(n);
  for (std::size_t k = 0; k < n; ++k) edge[k] = std::max(terms.corners[k].next_edge, Scalar(0));

  BaryWeights<Scalar> w{VectorX<Scalar>(Eigen::Index(n)), Route::Classical};
  for (std::size_t i = 0; i < n; ++i) {
    Scalar prod = terms.corners[i].corner_area;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == (i + n - 1) % n) continue;
      prod *= edge[k];
    }
    w.values(Eigen::Index(i)) = prod;
  }
  w.values /= w.values.sum();
  return w;
}

/// Numerators of the canonical-ratio Wachspress weights, from homogeneous
/// vertex data of a counterclockwise convex polygon and a finite point x.
///
/// With x moved to the origin its dual line is the line at infinity. The
/// numerator for vertex i is the canonical function, at x, of the triangle
/// bounded by the two edge lines at p_i and that line, oriented like the
/// polygon: (p_i, l_{i,i+1} meet x*, l_{i-1,i} meet x*). These triangles form
/// a signed triangulation of the polygon, so the numerators sum to C_P(x).
template <typename Scalar>
VectorX<Scalar> wachspress_canonical_numerators(std::span<const HomPoint<Scalar>> vertices,
                                                const HomPoint<Scalar>& x) {
  const std::size_t n = vertices.size();
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
  if (x.dim() != 2) throw GeometryError("wachspress_canonical: point must lie in P^2");
  const VectorX<Scalar> origin = to_affine(x);

  std::vector<HomPoint<Scalar>> moved;
  moved.reserve(n);
  for (const auto& v : vertices) {
    if (v.dim() != 2) throw GeometryError("wachspress_canonical: vertices must lie in P^2");
    moved.push_back(detail::translated(v, origin));
  }
  const HyperplaneForm<Scalar> dual_line{0, 0, 1};
  const HomPoint<Scalar> here = detail::chart_origin<Scalar>(2);

  std::vector<HyperplaneForm<Scalar>> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) edges.push_back(join_points(moved[i], moved[(i + 1) % n]));

  VectorX<Scalar> out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& next = edges[i];
    const auto& prev = edges[(i + n - 1) % n];
    if (next(here) == Scalar(0) || prev(here) == Scalar(0))
      throw GeometryError("wachspress_canonical: point lies on an edge line");
    auto corner = simplex_canonical<Scalar>({moved[i], meet_lines(next, dual_line), meet_lines(prev, dual_line)});
    out(Eigen::Index(i)) = corner(here);
  }
  return out;
}

/// Wachspress weights as ratios of canonical functions: each numerator over
/// the polygon's canonical function C_P(x) (fan triangulation from vertex 0).
template <typename Scalar>
BaryWeights<Scalar> wachspress_canonical(std::span<const HomPoint<Scalar>> vertices,
                                         const HomPoint<Scalar>& x) {
  BaryWeights<Scalar> w{wachspress_canonical_numerators(vertices, x), Route::Canonical};
  std::vector<HomPoint<Scalar>> moved;
  const VectorX<Scalar> origin = to_affine(x);
  for (const auto& v : vertices) moved.push_back(detail::translated(v, origin));
  const Scalar whole =
      polytope_canonical(std::span<const HomPoint<Scalar>>(moved), 0)(detail::chart_origin<Scalar>(2));
  if (!std::isfinite(whole) || whole == Scalar(0))
    throw GeometryError("wachspress_canonical: point is not strictly interior");
  w.values /= whole;
  return w;
}

template <typename Scalar>
BaryWeights<Scalar> wachspress_canonical(const ConvexPolytope<Scalar>& poly, const Vector2<Scalar>& x) {
  if (!poly.strictly_contains(x)) throw GeometryError("wachspress_canonical: point is not strictly interior");
  const auto lifted = poly.lifted_vertices();
  return wachspress_canonical(std::span<const HomPoint<Scalar>>(lifted), HomPoint<Scalar>::lift(x));
}

/// Wachspress weights as polar-dual pyramid areas: the dual face of p_i joins
/// the dual vertices of facets i-1 and i, and its cone from the dual-plane
/// origin is divided by the area of the whole dual.
template <typename Scalar>
BaryWeights<Scalar> wachspress_dual(const ConvexPolytope<Scalar>& poly, const Vector2<Scalar>& x) {
  const DualPolygon<Scalar> dual = polar_dual(poly, x);
  const std::size_t n = dual.vertices.size();
  const Vector2<Scalar> zero = Vector2<Scalar>::Zero();
  BaryWeights<Scalar> w{VectorX<Scalar>(Eigen::Index(n)), Route::Dual};
  for (std::size_t i = 0; i < n; ++i) {
    w.values(Eigen::Index(i)) = signed_triangle_area(zero, dual.vertices[(i + n - 1) % n], dual.vertices[i]);
  }
  w.values /= polygon_area(dual.vertices);
  return w;
}

template <typename Scalar>
BaryWeights<Scalar> wachspress(const ConvexPolytope<Scalar>& poly, const Vector2<Scalar>& x, Route route) {
  switch (route) {
    case Route::Classical: return wachspress_classical(poly, x);
    case Route::Canonical: return wachspress_canonical(poly, x);
    case Route::Dual: return wachspress_dual(poly, x);
    case Route::Area:
      if (poly.size() != 3) throw GeometryError("area route is defined for triangles only");
      return triangle_coords(poly.vertex(0), poly.vertex(1), poly.vertex(2), x);
  }
  throw GeometryError("unknown route");
}

/// f(x) = sum_i lambda_i(x) f(p_i).
template <typename Scalar>
Scalar interpolate(const ConvexPolytope<Scalar>& poly, const Vector2<Scalar>& x,
                   std::span<const Scalar> data, Route route) {
  if (data.size() != poly.size()) throw GeometryError("interpolate: one data value per vertex required");
  const auto w = wachspress(poly, x, route);
  return w.values.dot(Eigen::Map<const VectorX<Scalar>>(data.data(), Eigen::Index(data.size())));
}

/// Barycentric coordinates on a simplex of R^d (d <= 4) as canonical ratios:
/// the numerator for vertex i replaces every other vertex p_j by the point at
/// infinity in direction p_j - p_i, after moving x to the origin.
template <typename Scalar>
BaryWeights<Scalar> simplex_coords(const Simplex<Scalar>& simplex, const VectorX<Scalar>& x) {
  const Eigen::Index d = simplex.dim();
  if (x.size() != d) throw GeometryError("simplex_coords: point has wrong dimension");
  const auto& verts = simplex.vertices();
  const std::size_t n = verts.size();
  for (std::size_t j = 0; j < n; ++j)
    if (verts[j] == x) return detail::lagrange<Scalar>(n, j, Route::Canonical);

  std::vector<HomPoint<Scalar>> moved;
  for (const auto& v : verts) moved.push_back(HomPoint<Scalar>::lift(VectorX<Scalar>(v - x)));
  const HomPoint<Scalar> here = detail::chart_origin<Scalar>(d);
  const Scalar whole = simplex_canonical(moved)(here);
  if (!std::isfinite(whole)) throw GeometryError("simplex_coords: point lies on a facet hyperplane");

  BaryWeights<Scalar> w{VectorX<Scalar>(Eigen::Index(n)), Route::Canonical};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<HomPoint<Scalar>> corner;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        corner.push_back(moved[i]);
      } else {
        VectorX<Scalar> dir = VectorX<Scalar>::Zero(d + 1);
        dir.head(d) = verts[j] - verts[i];
        corner.emplace_back(std::move(dir));
      }
    }
    w.values(Eigen::Index(i)) = simplex_canonical(std::move(corner))(here) / whole;
  }
  return w;
}

}  // namespace posgeo

#endif  // POSGEO_COORDINATES_HPP
