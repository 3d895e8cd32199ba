#ifndef POSGEO_PROJECTIVE_HPP
#define POSGEO_PROJECTIVE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

namespace posgeo {

/// Raised for degenerate or out-of-domain geometric input.
class GeometryError : public std::domain_error {
 public:
  explicit GeometryError(const std::string& what) : std::domain_error(what) {}
};

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

/// A point of projective d-space given by d+1 homogeneous coordinates.
///
/// The affine chart is fixed to "last coordinate = 1": an affine point p of
/// R^d is lifted to [p : 1].
template <typename Scalar = double>
class HomPoint {
 public:
  HomPoint() = default;

  explicit HomPoint(VectorX<Scalar> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) {
      throw GeometryError("HomPoint needs at least two coordinates");
    }
    if ((coords_.array() == Scalar(0)).all()) {
      throw GeometryError("HomPoint coordinates are all zero");
    }
  }

  HomPoint(std::initializer_list<Scalar> coords)
      : HomPoint(VectorX<Scalar>::Map(coords.begin(), Eigen::Index(coords.size()))) {}

  /// Lifts an affine point of R^d to [p : 1].
  template <typename Derived>
  static HomPoint lift(const Eigen::MatrixBase<Derived>& affine) {
    VectorX<Scalar> c(affine.size() + 1);
    c.head(affine.size()) = affine.template cast<Scalar>();
    c(affine.size()) = Scalar(1);
    return HomPoint(std::move(c));
  }

  /// Dimension d of the ambient projective space.
  Eigen::Index dim() const { return coords_.size() - 1; }
  const VectorX<Scalar>& coords() const { return coords_; }
  Scalar operator[](Eigen::Index i) const { return coords_(i); }

  HomPoint scaled(Scalar s) const {
    if (s == Scalar(0)) throw GeometryError("zero rescaling of a HomPoint");
    return HomPoint(VectorX<Scalar>(coords_ * s));
  }

  bool at_infinity() const { return coords_(dim()) == Scalar(0); }

 private:
  VectorX<Scalar> coords_;
};

/// A hyperplane of projective d-space; x lies on it iff coeffs . x == 0.
template <typename Scalar = double>
class HyperplaneForm {
 public:
  HyperplaneForm() = default;

  explicit HyperplaneForm(VectorX<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) {
      throw GeometryError("HyperplaneForm needs at least two coefficients");
    }
    if ((coeffs_.array() == Scalar(0)).all()) {
      throw GeometryError("HyperplaneForm coefficients are all zero");
    }
  }

  HyperplaneForm(std::initializer_list<Scalar> coeffs)
      : HyperplaneForm(VectorX<Scalar>::Map(coeffs.begin(), Eigen::Index(coeffs.size()))) {}

  Eigen::Index dim() const { return coeffs_.size() - 1; }
  const VectorX<Scalar>& coeffs() const { return coeffs_; }

  /// Incidence product coeffs . x.
  Scalar operator()(const HomPoint<Scalar>& x) const {
    if (x.coords().size() != coeffs_.size()) {
      throw GeometryError("hyperplane/point dimension mismatch");
    }
    return coeffs_.dot(x.coords());
  }

 private:
  VectorX<Scalar> coeffs_;
};

namespace detail {

template <typename Scalar>
Scalar det2(Scalar a, Scalar b, Scalar c, Scalar d) {
  return a * d - b * c;
}

// Explicit cofactor expansion for the small sizes so that row swaps negate
// the result bit-for-bit; LU otherwise.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  switch (m.rows()) {
    case 1:
      return m(0, 0);
    case 2:
      return det2<Scalar>(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
    case 3:
      return m(0, 0) * det2<Scalar>(m(1, 1), m(1, 2), m(2, 1), m(2, 2)) -
             m(0, 1) * det2<Scalar>(m(1, 0), m(1, 2), m(2, 0), m(2, 2)) +
             m(0, 2) * det2<Scalar>(m(1, 0), m(1, 1), m(2, 0), m(2, 1));
    default:
      return MatrixX<Scalar>(m).partialPivLu().determinant();
  }
}

}  // namespace detail

/// Determinant of the matrix whose rows are the given points, in order.
template <typename Scalar>
Scalar bracket(std::span<const HomPoint<Scalar>> points) {
  const auto n = Eigen::Index(points.size());
  if (n < 2) throw GeometryError("bracket needs at least two points");
  MatrixX<Scalar> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (points[i].coords().size() != n) {
      throw GeometryError("bracket: expected " + std::to_string(n) +
                          " points of dimension " + std::to_string(n - 1));
    }
    m.row(i) = points[i].coords().transpose();
  }
  return detail::determinant(m);
}

template <typename Scalar>
Scalar bracket(std::initializer_list<HomPoint<Scalar>> points) {
  return bracket(std::span<const HomPoint<Scalar>>(points.begin(), points.size()));
}

/// Standard duality through the identity form: coeffs = coords.
template <typename Scalar>
HyperplaneForm<Scalar> dual_of_point(const HomPoint<Scalar>& x) {
  return HyperplaneForm<Scalar>(x.coords());
}

template <typename Scalar>
HomPoint<Scalar> dual_of_hyperplane(const HyperplaneForm<Scalar>& h) {
  return HomPoint<Scalar>(h.coeffs());
}

/// Intersection of two projective lines (d = 2).
template <typename Scalar>
HomPoint<Scalar> meet_lines(const HyperplaneForm<Scalar>& l1, const HyperplaneForm<Scalar>& l2) {
  if (l1.dim() != 2 || l2.dim() != 2) throw GeometryError("meet_lines is defined for d = 2 only");
  const Vector3<Scalar> a = l1.coeffs();
  const Vector3<Scalar> b = l2.coeffs();
  const Vector3<Scalar> p = a.cross(b);
  // proportionality measured on inputs normalized to unit max-coefficient
  const Scalar scale = a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff();
  if (p.norm() <= Scalar(1e-12) * scale) throw GeometryError("meet_lines: lines are proportional");
  return HomPoint<Scalar>(VectorX<Scalar>(p));
}

/// Line through two points of the projective plane.
template <typename Scalar>
HyperplaneForm<Scalar> join_points(const HomPoint<Scalar>& p, const HomPoint<Scalar>& q) {
  if (p.dim() != 2 || q.dim() != 2) throw GeometryError("join_points is defined for d = 2 only");
  const Vector3<Scalar> l = Vector3<Scalar>(p.coords()).cross(Vector3<Scalar>(q.coords()));
  if ((l.array() == Scalar(0)).all()) throw GeometryError("join_points: points coincide");
  return HyperplaneForm<Scalar>(VectorX<Scalar>(l));
}

/// Divides the first d coordinates by the last.
template <typename Scalar>
VectorX<Scalar> to_affine(const HomPoint<Scalar>& x) {
  const Scalar w = x[x.dim()];
  if (w == Scalar(0)) throw GeometryError("to_affine: point at infinity");
  return x.coords().head(x.dim()) / w;
}

/// True when p and q are nonzero multiples of each other (relative tolerance).
template <typename Scalar>
bool projectively_equal(const HomPoint<Scalar>& p, const HomPoint<Scalar>& q,
                        Scalar tol = Scalar(1e-12)) {
  if (p.dim() != q.dim()) return false;
  const VectorX<Scalar> a = p.coords() / p.coords().norm();
  const VectorX<Scalar> b = q.coords() / q.coords().norm();
  return std::min((a - b).norm(), (a + b).norm()) <= tol;
}

}  // namespace posgeo

#endif  // POSGEO_PROJECTIVE_HPP
