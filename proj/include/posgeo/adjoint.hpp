#ifndef POSGEO_ADJOINT_HPP
#define POSGEO_ADJOINT_HPP

#include "posgeo/canonical.hpp"
#include "posgeo/geometry.hpp"

namespace posgeo {

/// Bivariate polynomial in the affine chart, graded monomial order
/// 1, x, y, x^2, xy, y^2, x^3, ...
template <typename Scalar = double>
struct AdjointPoly {
  int degree = 0;
  VectorX<Scalar> coefficients;
  /// max |fit - sample| / max |sample| over the sampling grid
  Scalar residual = 0;

  static Eigen::Index coefficient_count(int degree) { return Eigen::Index((degree + 1) * (degree + 2) / 2); }

  /// Exponents (i, j) of x^i y^j for coefficient k.
  static std::pair<int, int> exponents(Eigen::Index k) {
    int deg = 0;
    while (coefficient_count(deg) <= k) ++deg;
    const int offset = int(k - coefficient_count(deg - 1));
    return {deg - offset, offset};
  }

  Scalar operator()(const Vector2<Scalar>& p) const {
    Scalar sum = 0;
    for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
      const auto [i, j] = exponents(k);
      sum += coefficients(k) * std::pow(p.x(), Scalar(i)) * std::pow(p.y(), Scalar(j));
    }
    return sum;
  }
};

namespace detail {

// Largest box centred on the vertex centroid, with the bounding box's aspect,
// whose corners are inside the polygon.
template <typename Scalar>
std::pair<Vector2<Scalar>, Vector2<Scalar>> inscribed_box(const ConvexPolytope<Scalar>& poly) {
  Vector2<Scalar> lo = poly.vertices().front(), hi = lo;
  for (const auto& v : poly.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Vector2<Scalar> c = poly.vertex_centroid();
  const Vector2<Scalar> half = (hi - lo) / Scalar(2);
  auto fits = [&](Scalar s) {
    for (int sx : {-1, 1})
      for (int sy : {-1, 1})
        if (!poly.contains(Vector2<Scalar>(c.x() + sx * s * half.x(), c.y() + sy * s * half.y()))) return false;
    return true;
  };
  Scalar inside = 0, outside = 1;
  if (fits(outside)) inside = outside;
  for (int it = 0; it < 60 && inside != outside; ++it) {
    const Scalar mid = (inside + outside) / Scalar(2);
    (fits(mid) ? inside : outside) = mid;
  }
  return {c - inside * half, c + inside * half};
}

template <typename Scalar>
Scalar binomial(int n, int k) {
  Scalar r = 1;
  for (int i = 1; i <= k; ++i) r = r * Scalar(n - k + i) / Scalar(i);
  return r;
}

}  // namespace detail

/// Numerator of the polygon's canonical function against the product of its
/// unit-gradient inward edge forms, A(x) = C(x) * prod_i l_i(x), recovered by
/// least squares on an interior lattice. A has total degree n - 3.
template <typename Scalar>
AdjointPoly<Scalar> extract_adjoint(const ConvexPolytope<Scalar>& poly, std::size_t base = 0,
                                    Scalar max_residual = Scalar(1e-8)) {
  const std::size_t n = poly.size();
  const int degree = int(n) - 3;
  const Eigen::Index ncoef = AdjointPoly<Scalar>::coefficient_count(degree);
  const auto canonical = polytope_canonical(poly, base);
  auto sample = [&](const Vector2<Scalar>& x) {
    Scalar v = canonical.at(x);
    for (std::size_t i = 0; i < n; ++i) v *= poly.facet_value(std::ptrdiff_t(i), x);
    return v;
  };

  const auto [lo, hi] = detail::inscribed_box(poly);
  const Scalar margin = Scalar(1e-3) * poly.diameter();
  std::vector<Vector2<Scalar>> points;
  for (std::size_t side = n + 2; points.size() < std::size_t(2 * ncoef); ++side) {
    // thin polygons may lose most of the lattice to the margin; refine until overdetermined
    if (side > 64 * (n + 2)) throw GeometryError("extract_adjoint: polygon too thin to sample");
    points.clear();
    for (std::size_t i = 0; i < side; ++i) {
      for (std::size_t j = 0; j < side; ++j) {
        const Vector2<Scalar> p(lo.x() + (hi.x() - lo.x()) * Scalar(i) / Scalar(side - 1),
                                lo.y() + (hi.y() - lo.y()) * Scalar(j) / Scalar(side - 1));
        if (poly.strictly_contains(p) && poly.boundary_distance(p) >= margin) points.push_back(p);
      }
    }
  }

  VectorX<Scalar> values(Eigen::Index(points.size()));
  for (std::size_t r = 0; r < points.size(); ++r) values(Eigen::Index(r)) = sample(points[r]);
  const Scalar peak = values.cwiseAbs().maxCoeff();

  AdjointPoly<Scalar> adj;
  adj.degree = degree;
  if (degree == 0) {
    // closed form (1/2) <p0,p1,p2>^2 / prod |edge|
    const auto lifted = poly.lifted_vertices();
    Scalar value = bracket(std::span<const HomPoint<Scalar>>(lifted));
    value = value * value / Scalar(2);
    for (std::size_t i = 0; i < 3; ++i) value /= (poly.vertex(std::ptrdiff_t(i) + 1) - poly.vertex(std::ptrdiff_t(i))).norm();
    adj.coefficients = VectorX<Scalar>::Constant(1, value);
    adj.residual = (values.array() - value).abs().maxCoeff() / peak;
  } else {
    // fit in centred, scaled variables, then expand into raw monomials
    const Vector2<Scalar> centre = (lo + hi) / Scalar(2);
    const Vector2<Scalar> scale = ((hi - lo) / Scalar(2)).cwiseMax(Scalar(1e-300));
    MatrixX<Scalar> design(Eigen::Index(points.size()), ncoef);
    for (std::size_t r = 0; r < points.size(); ++r) {
      const Vector2<Scalar> u = (points[r] - centre).cwiseQuotient(scale);
      for (Eigen::Index k = 0; k < ncoef; ++k) {
        const auto [i, j] = AdjointPoly<Scalar>::exponents(k);
        design(Eigen::Index(r), k) = std::pow(u.x(), Scalar(i)) * std::pow(u.y(), Scalar(j));
      }
    }
    const VectorX<Scalar> local = design.colPivHouseholderQr().solve(values);
    adj.residual = (design * local - values).cwiseAbs().maxCoeff() / peak;

    // ((x - cx)/sx)^i ((y - cy)/sy)^j expanded binomially
    adj.coefficients = VectorX<Scalar>::Zero(ncoef);
    auto index_of = [](int i, int j) { return AdjointPoly<Scalar>::coefficient_count(i + j - 1) + j; };
    for (Eigen::Index k = 0; k < ncoef; ++k) {
      const auto [i, j] = AdjointPoly<Scalar>::exponents(k);
      const Scalar lead = local(k) / (std::pow(scale.x(), Scalar(i)) * std::pow(scale.y(), Scalar(j)));
      for (int a = 0; a <= i; ++a) {
        for (int b = 0; b <= j; ++b) {
          const Scalar c = lead * detail::binomial<Scalar>(i, a) * detail::binomial<Scalar>(j, b) *
                           std::pow(-centre.x(), Scalar(i - a)) * std::pow(-centre.y(), Scalar(j - b));
          adj.coefficients(a + b == 0 ? 0 : index_of(a, b)) += c;
        }
      }
    }
  }
  if (!(adj.residual <= max_residual)) {
    throw GeometryError("extract_adjoint: fit residual " + std::to_string(adj.residual) +
                        " exceeds threshold; the sampled numerator is not a polynomial of degree " +
                        std::to_string(degree));
  }
  return adj;
}

}  // namespace posgeo

#endif  // POSGEO_ADJOINT_HPP
