#ifndef POSGEO_CANONICAL_HPP
#define POSGEO_CANONICAL_HPP

#include "posgeo/geometry.hpp"
#include "posgeo/projective.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

namespace posgeo {

/// One oriented simplex of a signed triangulation.
template <typename Scalar = double>
struct SimplexTerm {
  std::vector<HomPoint<Scalar>> vertices;  // d+1 points of P^d
  int sign = 1;
};

/// Canonical rational function C(x) of a positive geometry, stored as a
/// signed sum of simplex canonical functions.
///
/// Values are the coefficient of the standard projective measure; the 1/d!
/// relating that measure to the affine volume form is never folded in.
///
/// A simplex term with vertices p_0..p_d contributes
///
///     sign * <p_0..p_d>^d / (d! * prod_k <p_0..x..p_d>)
///
/// where the k-th denominator bracket has x in place of p_k. For d = 1 and
/// d = 2 this is exactly <b,a> / (<x,a><x,b>) and
/// <p0,p1,p2>^2 / (2 <x,p0,p1><x,p1,p2><x,p2,p0>).
///
/// In the plane, terms that share a facet line with cancelling residues are
/// paired at construction. When x comes close to such an interior facet the
/// pair is evaluated as a single fraction whose numerator has the common
/// factor divided out, so the removable singularity costs no precision.
template <typename Scalar = double>
class CanonicalFn {
 public:
  CanonicalFn(Eigen::Index dim, std::vector<SimplexTerm<Scalar>> terms)
      : dim_(dim), terms_(std::move(terms)) {
    if (dim_ < 1) throw GeometryError("canonical function dimension must be positive");
    if (terms_.empty()) throw GeometryError("canonical function needs at least one term");
    Scalar factorial = 1;
    for (Eigen::Index k = 2; k <= dim_; ++k) factorial *= Scalar(k);
    for (const auto& term : terms_) {
      if (Eigen::Index(term.vertices.size()) != dim_ + 1)
        throw GeometryError("simplex term needs d+1 vertices");
      for (const auto& v : term.vertices)
        if (v.dim() != dim_) throw GeometryError("simplex term vertex has wrong dimension");
      if (term.sign != 1 && term.sign != -1) throw GeometryError("simplex term sign must be +1 or -1");
      compiled_.push_back(compile(term, factorial));
    }
    if (dim_ == 2) find_cancelling_pairs();
  }

  Eigen::Index dim() const { return dim_; }
  const std::vector<SimplexTerm<Scalar>>& terms() const { return terms_; }

  /// C(x). Poles evaluate to an infinity.
  Scalar operator()(const HomPoint<Scalar>& x) const {
    if (x.dim() != dim_) throw GeometryError("canonical function evaluated at a point of wrong dimension");
    const VectorX<Scalar>& xc = x.coords();
    const Scalar xnorm = xc.norm();

    std::vector<bool> done(compiled_.size(), false);
    Scalar sum = 0;
    if (!pairs_.empty()) {
      // nearest interior facets first; each term joins at most one pair
      std::vector<std::pair<Scalar, std::size_t>> near;
      for (std::size_t p = 0; p < pairs_.size(); ++p) {
        const Scalar rel = std::abs(xc.dot(pairs_[p].shared)) / (pairs_[p].shared.norm() * xnorm);
        if (rel < kPairThreshold) near.emplace_back(rel, p);
      }
      std::sort(near.begin(), near.end());
      for (const auto& [rel, p] : near) {
        const Pair& pair = pairs_[p];
        if (done[pair.a] || done[pair.b]) continue;
        done[pair.a] = done[pair.b] = true;
        Scalar den = pair.mu;
        for (const auto& g : pair.rest) den *= xc.dot(g);
        sum += xc.dot(pair.quotient) / den;
      }
    }
    for (std::size_t t = 0; t < compiled_.size(); ++t) {
      if (done[t]) continue;
      Scalar den = 1;
      for (const auto& g : compiled_[t].facets) den *= xc.dot(g);
      sum += compiled_[t].coefficient / den;
    }
    if (std::isnan(sum)) return std::numeric_limits<Scalar>::infinity();
    return sum;
  }

  /// Convenience for the affine chart.
  template <typename Derived>
  Scalar at(const Eigen::MatrixBase<Derived>& affine) const {
    return (*this)(HomPoint<Scalar>::lift(affine));
  }

  /// Number of cancelling term pairs found across interior facets.
  std::size_t interior_facet_count() const { return pairs_.size(); }

 private:
  static constexpr Scalar kPairThreshold = Scalar(1e-3);

  struct Compiled {
    Scalar coefficient;
    // x . facets[k] is the bracket with x in place of vertex k
    std::vector<VectorX<Scalar>> facets;
  };

  struct Pair {
    std::size_t a, b;
    VectorX<Scalar> shared;    // linear form of the common facet (as in term a)
    VectorX<Scalar> quotient;  // merged numerator divided by the shared form
    std::vector<VectorX<Scalar>> rest;
    Scalar mu;                 // term b's shared form = mu * shared
  };

  Compiled compile(const SimplexTerm<Scalar>& term, Scalar factorial) const {
    const Eigen::Index n = dim_ + 1;
    MatrixX<Scalar> m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m.row(i) = term.vertices[std::size_t(i)].coords().transpose();
    const Scalar vol = detail::determinant(m);
    Scalar scale = 1;
    for (Eigen::Index i = 0; i < n; ++i) scale *= m.row(i).norm();
    if (!(std::abs(vol) > Scalar(1e-14) * scale)) throw GeometryError("degenerate simplex term");

    Compiled c;
    c.coefficient = Scalar(term.sign) * std::pow(vol, Scalar(dim_)) / factorial;
    for (Eigen::Index k = 0; k < n; ++k) {
      VectorX<Scalar> g(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        MatrixX<Scalar> minor(n - 1, n - 1);
        for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
          if (r == k) continue;
          for (Eigen::Index s = 0, ss = 0; s < n; ++s) {
            if (s == j) continue;
            minor(rr, ss++) = m(r, s);
          }
          ++rr;
        }
        g(j) = ((k + j) % 2 == 0 ? Scalar(1) : Scalar(-1)) * detail::determinant(minor);
      }
      c.facets.push_back(std::move(g));
    }
    return c;
  }

  void find_cancelling_pairs() {
    for (std::size_t a = 0; a < compiled_.size(); ++a) {
      for (std::size_t b = a + 1; b < compiled_.size(); ++b) {
        for (std::size_t ka = 0; ka < 3; ++ka) {
          for (std::size_t kb = 0; kb < 3; ++kb) {
            if (auto pair = try_pair(a, ka, b, kb)) pairs_.push_back(std::move(*pair));
          }
        }
      }
    }
  }

  std::optional<Pair> try_pair(std::size_t a, std::size_t ka, std::size_t b, std::size_t kb) const {
    const Vector3<Scalar> ga = compiled_[a].facets[ka];
    const Vector3<Scalar> gb = compiled_[b].facets[kb];
    if (ga.cross(gb).norm() > Scalar(1e-12) * ga.norm() * gb.norm()) return std::nullopt;
    const Scalar mu = ga.dot(gb) / ga.squaredNorm();

    std::vector<Vector3<Scalar>> ra, rb;
    for (std::size_t k = 0; k < 3; ++k) {
      if (k != ka) ra.push_back(compiled_[a].facets[k]);
      if (k != kb) rb.push_back(compiled_[b].facets[k]);
    }
    // c_a/(l ra0 ra1) + c_b/(mu l rb0 rb1) = Q(x) / (mu l ra0 ra1 rb0 rb1)
    const Scalar ca = compiled_[a].coefficient;
    const Scalar cb = compiled_[b].coefficient;
    Eigen::Matrix<Scalar, 3, 3> q = ca * mu * rb[0] * rb[1].transpose() + cb * ra[0] * ra[1].transpose();
    q = (q + q.transpose()).eval() / Scalar(2);

    // solve sym(ga h^T) = q for h
    Eigen::Matrix<Scalar, 6, 3> lhs = Eigen::Matrix<Scalar, 6, 3>::Zero();
    Eigen::Matrix<Scalar, 6, 1> rhs;
    int row = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j, ++row) {
        lhs(row, j) += ga(i) / Scalar(2);
        lhs(row, i) += ga(j) / Scalar(2);
        rhs(row) = q(i, j);
      }
    }
    const Vector3<Scalar> h = lhs.colPivHouseholderQr().solve(rhs);
    const Scalar scale = rhs.norm();
    if (!(scale > 0) || (lhs * h - rhs).norm() > Scalar(1e-10) * scale) return std::nullopt;

    Pair pair{a, b, VectorX<Scalar>(ga), VectorX<Scalar>(h), {}, mu};
    for (const auto& g : ra) pair.rest.emplace_back(g);
    for (const auto& g : rb) pair.rest.emplace_back(g);
    return pair;
  }

  Eigen::Index dim_;
  std::vector<SimplexTerm<Scalar>> terms_;
  std::vector<Compiled> compiled_;
  std::vector<Pair> pairs_;
};

/// <b,a> / (<x,a><x,b>) on the projective line.
template <typename Scalar>
CanonicalFn<Scalar> segment_canonical(const HomPoint<Scalar>& a, const HomPoint<Scalar>& b) {
  if (a.dim() != 1 || b.dim() != 1) throw GeometryError("segment endpoints must lie on P^1");
  if (projectively_equal(a, b)) throw GeometryError("segment endpoints coincide projectively");
  return CanonicalFn<Scalar>(1, {SimplexTerm<Scalar>{{a, b}, 1}});
}

/// Canonical function of the simplex with the given d+1 vertices.
template <typename Scalar>
CanonicalFn<Scalar> simplex_canonical(std::vector<HomPoint<Scalar>> vertices) {
  if (vertices.size() < 2) throw GeometryError("simplex needs at least two vertices");
  const auto d = Eigen::Index(vertices.size()) - 1;
  return CanonicalFn<Scalar>(d, {SimplexTerm<Scalar>{std::move(vertices), 1}});
}

template <typename Scalar>
CanonicalFn<Scalar> simplex_canonical(const Simplex<Scalar>& s) {
  return simplex_canonical(s.lifted_vertices());
}

/// Fan triangulation of a convex polygon from the given base vertex:
/// triangles (p_b, p_i, p_{i+1}) for i != b-1, b, all positively signed.
template <typename Scalar>
CanonicalFn<Scalar> polytope_canonical(std::span<const HomPoint<Scalar>> vertices, std::size_t base) {
  const std::size_t n = vertices.size();
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
  if (base >= n) throw GeometryError("fan base vertex index out of range");
  std::vector<SimplexTerm<Scalar>> terms;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const std::size_t i = (base + k) % n;
    terms.push_back({{vertices[base], vertices[i], vertices[(i + 1) % n]}, 1});
  }
  return CanonicalFn<Scalar>(2, std::move(terms));
}

template <typename Scalar>
CanonicalFn<Scalar> polytope_canonical(const ConvexPolytope<Scalar>& poly, std::size_t base = 0) {
  const auto lifted = poly.lifted_vertices();
  return polytope_canonical(std::span<const HomPoint<Scalar>>(lifted), base);
}

namespace detail {

/// Neville extrapolation of samples (h_i, f_i) to h = 0.
template <typename Scalar>
Scalar extrapolate_to_zero(const std::vector<Scalar>& h, std::vector<Scalar> f) {
  const std::size_t n = h.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const Scalar hi = h[i];
      const Scalar hj = h[i + level];
      f[i] = (hi * f[i + 1] - hj * f[i]) / (hi - hj);
    }
  }
  return f[0];
}

}  // namespace detail

template <typename Scalar>
std::vector<Scalar> default_residue_schedule(const ConvexPolytope<Scalar>& poly) {
  const Scalar d = poly.diameter();
  return {Scalar(1e-3) * d, Scalar(5e-4) * d, Scalar(2.5e-4) * d};
}

/// Same relative steps, scaled by the distance from the facet point to the
/// nearest other facet line. Extrapolation error grows like (eps / that
/// distance)^3, so short facets need this rather than the diameter scale.
template <typename Scalar>
std::vector<Scalar> local_residue_schedule(const ConvexPolytope<Scalar>& poly, std::size_t facet, Scalar t) {
  if (facet >= poly.size()) throw GeometryError("facet index out of range");
  if (!(t > 0 && t < 1)) throw GeometryError("residue point must lie strictly inside the facet (vertex pole)");
  const auto k = std::ptrdiff_t(facet);
  const Vector2<Scalar> q = poly.vertex(k) + t * (poly.vertex(k + 1) - poly.vertex(k));
  Scalar reach = poly.diameter();
  for (std::size_t j = 0; j < poly.size(); ++j)
    if (j != facet) reach = std::min(reach, poly.facet_value(std::ptrdiff_t(j), q));
  return {Scalar(1e-3) * reach, Scalar(5e-4) * reach, Scalar(2.5e-4) * reach};
}

/// Residue of the polygon's canonical function along a facet divided by the
/// facet's own segment canonical function.
///
/// t in (0, 1) is the fractional arc length along facet i from p_i to
/// p_{i+1}. The limit of eps * C(q + eps * n_in) is extrapolated from the
/// schedule; the segment function is taken on [0, L] at arc length t * L.
/// With the segment orientation of <b,a>/(<x,a><x,b>) the ratio is -1/2 in
/// the plane.
template <typename Scalar>
Scalar residue_ratio(const ConvexPolytope<Scalar>& poly, std::size_t facet, Scalar t,
                     const std::vector<Scalar>& eps_schedule) {
  if (facet >= poly.size()) throw GeometryError("facet index out of range");
  if (!(t > 0 && t < 1)) throw GeometryError("residue point must lie strictly inside the facet (vertex pole)");
  if (eps_schedule.size() < 1) throw GeometryError("empty epsilon schedule");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0)) throw GeometryError("epsilon schedule must be positive");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
      throw GeometryError("epsilon schedule must be strictly decreasing");
  }

  const auto k = std::ptrdiff_t(facet);
  const Vector2<Scalar> p = poly.vertex(k);
  const Vector2<Scalar> e = poly.vertex(k + 1) - p;
  const Vector2<Scalar> q = p + t * e;
  const Vector2<Scalar> nin = poly.inward_normal(k);
  const auto canonical = polytope_canonical(poly, 0);

  std::vector<Scalar> samples;
  for (Scalar eps : eps_schedule) {
    const Vector2<Scalar> x = q + eps * nin;
    if (!poly.strictly_contains(x)) throw GeometryError("epsilon schedule leaves the polygon interior");
    samples.push_back(eps * canonical.at(x));
  }
  const Scalar limit = detail::extrapolate_to_zero(eps_schedule, samples);

  const Scalar length = e.norm();
  const auto segment = segment_canonical(HomPoint<Scalar>{0, 1}, HomPoint<Scalar>{length, 1});
  return limit / segment(HomPoint<Scalar>{t * length, 1});
}

template <typename Scalar>
Scalar residue_ratio(const ConvexPolytope<Scalar>& poly, std::size_t facet, Scalar t) {
  return residue_ratio(poly, facet, t, default_residue_schedule(poly));
}

/// Symmetric nondegenerate 3x3 matrix of a projective conic x^T Q x = 0.
template <typename Scalar = double>
class ConicQ {
 public:
  explicit ConicQ(const Eigen::Matrix<Scalar, 3, 3>& q) : q_(q) {
    if (!q_.allFinite()) throw GeometryError("conic matrix is not finite");
    if ((q_ - q_.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-14))
      throw GeometryError("conic matrix is not symmetric");
    det_ = q_.determinant();
    if (!(std::abs(det_) > Scalar(1e-14) * std::pow(q_.norm(), Scalar(3))))
      throw GeometryError("conic is degenerate (singular matrix)");
  }

  /// From the upper triangle q00, q01, q02, q11, q12, q22.
  static ConicQ from_upper(Scalar q00, Scalar q01, Scalar q02, Scalar q11, Scalar q12, Scalar q22) {
    Eigen::Matrix<Scalar, 3, 3> q;
    q << q00, q01, q02, q01, q11, q12, q02, q12, q22;
    return ConicQ(q);
  }

  const Eigen::Matrix<Scalar, 3, 3>& matrix() const { return q_; }
  Scalar determinant() const { return det_; }
  Scalar quadratic(const HomPoint<Scalar>& x) const {
    const Vector3<Scalar> v = x.coords();
    return v.dot(q_ * v);
  }

 private:
  Eigen::Matrix<Scalar, 3, 3> q_;
  Scalar det_;
};

/// pi |det Q|^{3/4} / |x^T Q x|^{3/2}, evaluated on the representative of the
/// conic scaled to |det Q| = 1 so the value does not depend on the scale of Q.
template <typename Scalar = double>
class ConicCanonical {
 public:
  explicit ConicCanonical(ConicQ<Scalar> q) : q_(std::move(q)) {
    scale_ = std::cbrt(std::abs(q_.determinant()));
  }

  Scalar operator()(const HomPoint<Scalar>& x) const {
    if (x.dim() != 2) throw GeometryError("conic canonical function lives on P^2");
    const Scalar form = q_.quadratic(x) / scale_;
    if (form == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
    if ((form > 0) != (q_.determinant() > 0)) throw GeometryError("point lies outside the conic");
    const Scalar det = q_.determinant() / (scale_ * scale_ * scale_);
    return std::numbers::pi_v<Scalar> * std::pow(std::abs(det), Scalar(0.75)) /
           std::pow(std::abs(form), Scalar(1.5));
  }

  const ConicQ<Scalar>& conic() const { return q_; }

 private:
  ConicQ<Scalar> q_;
  Scalar scale_;
};

template <typename Scalar>
ConicCanonical<Scalar> conic_canonical(const ConicQ<Scalar>& q) {
  return ConicCanonical<Scalar>(q);
}

}  // namespace posgeo

#endif  // POSGEO_CANONICAL_HPP
