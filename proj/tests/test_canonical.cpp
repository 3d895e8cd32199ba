#include "support.hpp"

#include <gtest/gtest.h>

using namespace posgeo;
using namespace posgeo::testing;
using P = HomPoint<double>;

namespace {

// <b,a> / (<x,a><x,b>) written out with explicit 2x2 determinants.
double segment_oracle(double a, double b, double x) {
  const double ba = b * 1 - 1 * a;
  const double xa = x * 1 - 1 * a;
  const double xb = x * 1 - 1 * b;
  return ba / (xa * xb);
}

// <abc>^2 / (2 <xab><xbc><xca>), each bracket a triple product.
double triangle_oracle(const Vec2& p0, const Vec2& p1, const Vec2& p2, const Vec2& x) {
  auto lift = [](const Vec2& v) { return Eigen::Vector3d(v.x(), v.y(), 1); };
  auto br = [](const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
    return a.dot(b.cross(c));
  };
  const auto X = lift(x), A = lift(p0), B = lift(p1), C = lift(p2);
  const double whole = br(A, B, C);
  return 0.5 * whole * whole / (br(X, A, B) * br(X, B, C) * br(X, C, A));
}

// Standard simplex of R^d: C(x) = (-1)^d / (d! * x_1 ... x_d * (1 - sum x)).
double standard_simplex_oracle(const Eigen::VectorXd& x) {
  const auto d = x.size();
  double factorial = 1, prod = 1 - x.sum();
  for (Eigen::Index k = 0; k < d; ++k) {
    factorial *= double(k + 1);
    prod *= x(k);
  }
  return (d % 2 ? -1.0 : 1.0) / (factorial * prod);
}

std::vector<P> standard_simplex(int d) {
  std::vector<P> v;
  v.push_back(P::lift(Eigen::VectorXd::Zero(d)));
  for (int i = 0; i < d; ++i) v.push_back(P::lift(Eigen::VectorXd::Unit(d, i)));
  return v;
}

}  // namespace

TEST(SegmentCanonical, Fixtures) {
  const auto seg = segment_canonical(P{0, 1}, P{1, 1});
  EXPECT_DOUBLE_EQ(seg(P{0.5, 1}), -4.0);
  EXPECT_DOUBLE_EQ(seg(P{0.25, 1}), -16.0 / 3.0);
  EXPECT_TRUE(std::isinf(seg(P{0, 1})));
  EXPECT_THROW(segment_canonical(P{1, 2}, P{2, 4}), GeometryError);
}

TEST(SegmentCanonical, MatchesBracketOracle) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = u(rng), b = u(rng), x = u(rng);
    const auto seg = segment_canonical(P{a, 1}, P{b, 1});
    EXPECT_NEAR(seg(P{x, 1}), segment_oracle(a, b, x), 1e-12 * std::abs(segment_oracle(a, b, x)));
  }
}

TEST(SimplexCanonical, TriangleFixtures) {
  const auto tri = simplex_canonical<double>({P{0, 0, 1}, P{1, 0, 1}, P{0, 1, 1}});
  EXPECT_NEAR(tri.at(Vec2(0.25, 0.25)), 16.0, 16.0 * 1e-14);
  EXPECT_NEAR(tri.at(Vec2(1.0 / 3, 1.0 / 3)), 13.5, 13.5 * 1e-14);
  EXPECT_TRUE(std::isinf(tri.at(Vec2(0.5, 0))));
  EXPECT_THROW(simplex_canonical<double>({P{0, 0, 1}, P{1, 1, 1}, P{2, 2, 1}}), GeometryError);
}

TEST(SimplexCanonical, MatchesCyclicBracketOracle) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec2 a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng)), x(u(rng), u(rng));
    const auto fn = simplex_canonical<double>({P::lift(a), P::lift(b), P::lift(c)});
    const double expected = triangle_oracle(a, b, c, x);
    EXPECT_NEAR(fn.at(x), expected, 1e-10 * std::abs(expected));
  }
}

TEST(SimplexCanonical, StandardSimplexAllDimensions) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.05, 1);
  for (int d = 1; d <= 4; ++d) {
    const auto fn = simplex_canonical(standard_simplex(d));
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd w(d + 1);
      for (int k = 0; k <= d; ++k) w(k) = u(rng);
      const Eigen::VectorXd x = w.tail(d) / w.sum();
      EXPECT_NEAR(fn.at(x), standard_simplex_oracle(x), 1e-12 * std::abs(standard_simplex_oracle(x)));
    }
  }
}

TEST(SimplexCanonical, ProjectiveInvariance) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1, 1), s(0.1, 10);
  for (int d = 1; d <= 4; ++d) {
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<P> verts;
      for (int k = 0; k <= d; ++k) {
        Eigen::VectorXd v(d);
        for (int j = 0; j < d; ++j) v(j) = u(rng);
        verts.push_back(P::lift(v));
      }
      Eigen::VectorXd x(d);
      for (int j = 0; j < d; ++j) x(j) = u(rng);
      const double before = simplex_canonical(verts).at(x);
      for (auto& v : verts) v = v.scaled(s(rng));
      EXPECT_LE(relative_error(simplex_canonical(verts).at(x), before), 1e-12);
    }
  }
}

TEST(PolytopeCanonical, SquareFixtures) {
  const auto sq = sym_square();
  for (std::size_t base = 0; base < 4; ++base) {
    const auto fn = polytope_canonical(sq, base);
    // the origin lies on every fan diagonal of the square
    EXPECT_NEAR(fn.at(Vec2(0, 0)), 2.0, 2.0 * 1e-12) << "base " << base;
    EXPECT_NEAR(fn.at(Vec2(0.5, 0)), 8.0 / 3.0, 8.0 / 3.0 * 1e-12) << "base " << base;
  }
}

TEST(PolytopeCanonical, SquareFanTermsAtHalf) {
  // base (1,-1): triangles (1,-1),(1,1),(-1,1) and (1,-1),(-1,1),(-1,-1)
  const auto fn = polytope_canonical(sym_square(), 0);
  ASSERT_EQ(fn.terms().size(), 2u);
  const auto t0 = simplex_canonical(fn.terms()[0].vertices).at(Vec2(0.5, 0));
  const auto t1 = simplex_canonical(fn.terms()[1].vertices).at(Vec2(0.5, 0));
  EXPECT_NEAR(t0 + t1, 8.0 / 3.0, 1e-14);
  EXPECT_NEAR(std::max(t0, t1), 4.0, 1e-14);
  EXPECT_NEAR(std::min(t0, t1), -4.0 / 3.0, 1e-14);
}

TEST(PolytopeCanonical, TriangleIsSingleSimplex) {
  const auto tri = standard_triangle();
  const auto fan = polytope_canonical(tri, 1);
  const auto simplex = simplex_canonical(tri.lifted_vertices());
  ASSERT_EQ(fan.terms().size(), 1u);
  for (const Vec2& x : {Vec2(0.25, 0.25), Vec2(0.1, 0.7), Vec2(2, 3)})
    EXPECT_NEAR(fan.at(x), simplex.at(x), 1e-14 * std::abs(simplex.at(x)));
  EXPECT_THROW(polytope_canonical(tri, 3), GeometryError);
}

TEST(PolytopeCanonical, SquareMatchesClosedForm) {
  const auto sq = sym_square();
  std::mt19937_64 rng(15);
  for (std::size_t base = 0; base < 4; ++base) {
    const auto fn = polytope_canonical(sq, base);
    for (int trial = 0; trial < 200; ++trial) {
      const Vec2 x = random_interior_point(sq, rng, 1e-3);
      EXPECT_LE(relative_error(fn.at(x), sym_square_closed_form(x)), 1e-12);
    }
    // exactly on and very near the diagonals
    for (double t : {-0.9, -0.3, 0.0, 0.2, 0.77}) {
      for (double off : {0.0, 1e-15, 1e-9, 1e-5}) {
        for (const Vec2& x : {Vec2(t, t + off), Vec2(t, -t - off)})
          EXPECT_LE(relative_error(fn.at(x), sym_square_closed_form(x)), 1e-12) << x.transpose();
      }
    }
  }
}

TEST(PolytopeCanonical, BaseIndependence) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 60; ++trial) {
    const auto poly = random_convex_polygon(rng, 3 + trial % 10);
    std::vector<CanonicalFn<double>> fans;
    for (std::size_t b = 0; b < poly.size(); ++b) fans.push_back(polytope_canonical(poly, b));
    for (int k = 0; k < 20; ++k) {
      const Vec2 x = random_interior_point(poly, rng);
      const double ref = fans[0].at(x);
      for (const auto& f : fans) EXPECT_LE(relative_error(f.at(x), ref), 1e-10);
    }
  }
}

TEST(PolytopeCanonical, PoleCancellationOnDiagonal) {
  // on and beside a fan diagonal the sum stays finite and matches the dual area
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto poly = random_convex_polygon(rng, 5 + trial % 6);
    const auto fn = polytope_canonical(poly, 0);
    EXPECT_GT(fn.interior_facet_count(), 0u);
    for (std::size_t far = 2; far + 1 < poly.size(); ++far) {
      const Vec2 b = poly.vertex(0), q = poly.vertex(std::ptrdiff_t(far));
      const Vec2 normal = Vec2(-(q - b).y(), (q - b).x()).normalized();
      for (double s : {0.1, 0.4, 0.85}) {
        const Vec2 x = b + s * (q - b);
        for (double h : {0.0, 1e-14, -1e-11, 1e-8, -1e-6, 1e-4, -1e-3, 3e-3}) {
          const Vec2 y = x + h * normal;
          const double value = fn.at(y);
          ASSERT_TRUE(std::isfinite(value));
          EXPECT_LE(relative_error(value, polygon_area(polar_dual(poly, y).vertices)), 1e-10)
              << "far " << far << " s " << s << " h " << h;
        }
      }
    }
  }
}

TEST(PolytopeCanonical, DualVolumeIdentity) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 60; ++trial) {
    const auto poly = random_convex_polygon(rng, 3 + trial % 10);
    const auto fn = polytope_canonical(poly, std::size_t(trial) % poly.size());
    for (int k = 0; k < 20; ++k) {
      const Vec2 x = random_interior_point(poly, rng);
      EXPECT_LE(relative_error(fn.at(x), polygon_area(polar_dual(poly, x).vertices)), 1e-9);
    }
  }
}

TEST(PolytopeCanonical, SignStructure) {
  std::mt19937_64 rng(19);
  const auto poly = random_convex_polygon(rng, 6);
  const auto fn = polytope_canonical(poly, 2);
  for (int k = 0; k < 100; ++k) EXPECT_GT(fn.at(random_interior_point(poly, rng)), 0);
  // blows up approaching a facet from inside
  const Vec2 mid = 0.5 * (poly.vertex(1) + poly.vertex(2));
  const Vec2 n = poly.inward_normal(1);
  double prev = 0;
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const double v = fn.at(Vec2(mid + eps * n));
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_GT(prev, 1e6);
}

TEST(ResidueRatio, TriangleFixture) {
  const auto tri = standard_triangle();
  // facet 0 is y = 0, parametrised from (0,0) to (1,0)
  const double r = residue_ratio(tri, 0, 0.5);
  EXPECT_NEAR(r, -0.5, 1e-6);
}

TEST(ResidueRatio, SquareFixture) {
  // facet 0 of the symmetric square is x = 1, from (1,-1) to (1,1); t = 1/2 is y = 0
  const double r = residue_ratio(sym_square(), 0, 0.5);
  EXPECT_NEAR(r, -0.5, 1e-6);
}

TEST(ResidueRatio, ConstantAlongAndAcrossFacets) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    const auto poly = random_convex_polygon(rng, 3 + trial % 8);
    std::vector<double> ratios;
    for (std::size_t f = 0; f < poly.size(); ++f)
      for (double t : {0.2, 0.5, 0.8}) ratios.push_back(residue_ratio(poly, f, t, local_residue_schedule(poly, f, t)));
    for (double r : ratios) EXPECT_NEAR(r, ratios.front(), 1e-6);
    EXPECT_NEAR(std::abs(ratios.front()), 0.5, 1e-6);
  }
}

TEST(ResidueRatio, DiameterScheduleOnFixtures) {
  for (const auto& poly : {regular_polygon(5), regular_polygon(6), unit_square()})
    for (std::size_t f = 0; f < poly.size(); ++f)
      for (double t : {0.25, 0.5, 0.75}) EXPECT_NEAR(residue_ratio(poly, f, t), -0.5, 1e-6);
}

TEST(ResidueRatio, LocalScheduleScalesWithFacetPoint) {
  const auto sq = unit_square();
  const auto s = local_residue_schedule(sq, 0, 0.25);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s[0], 1e-3 * 0.25);
  EXPECT_DOUBLE_EQ(s[2], 2.5e-4 * 0.25);
}

TEST(ResidueRatio, Errors) {
  const auto tri = standard_triangle();
  EXPECT_THROW(residue_ratio(tri, 0, 0.0), GeometryError);
  EXPECT_THROW(residue_ratio(tri, 0, 1.0), GeometryError);
  EXPECT_THROW(residue_ratio(tri, 5, 0.5), GeometryError);
  EXPECT_THROW(residue_ratio(tri, 0, 0.5, {0.1, 0.2}), GeometryError);
  // leaves the interior: the triangle is only 0.5 tall above (0.5, 0)
  EXPECT_THROW(residue_ratio(tri, 0, 0.5, {0.9, 0.45}), GeometryError);
}

TEST(ExtrapolateToZero, ExactForQuadratics) {
  const std::vector<double> h{0.3, 0.2, 0.05};
  std::vector<double> f;
  for (double v : h) f.push_back(2 - 3 * v + 7 * v * v);
  EXPECT_NEAR(detail::extrapolate_to_zero(h, f), 2.0, 1e-13);
}

TEST(ConicCanonical, UnitCircle) {
  const auto q = ConicQ<double>::from_upper(1, 0, 0, 1, 0, -1);
  const auto fn = conic_canonical(q);
  EXPECT_NEAR(fn(P{0, 0, 1}), std::numbers::pi, 1e-15);
  const double expected = 8 * std::numbers::pi / (3 * std::sqrt(3.0));
  EXPECT_NEAR(fn(P{0.5, 0, 1}), expected, 1e-14 * expected);
  EXPECT_TRUE(std::isinf(fn(P{1, 0, 1})));
  EXPECT_THROW(fn(P{2, 0, 1}), GeometryError);
}

TEST(ConicCanonical, ScaleInvariance) {
  const Eigen::Matrix3d base = (Eigen::Matrix3d() << 2, 0.3, -0.1, 0.3, 1, 0.2, -0.1, 0.2, -1).finished();
  const ConicQ<double> q(base);
  const P x{0.1, -0.2, 1};
  const double ref = conic_canonical(q)(x);
  for (double lambda : {2.0, 0.5, 1e-3, 37.0, -1.0, -4.5}) {
    EXPECT_LE(relative_error(conic_canonical(ConicQ<double>(Eigen::Matrix3d(lambda * base)))(x), ref), 1e-12)
        << "lambda " << lambda;
  }
  // homogeneous of degree -3 in the evaluation point
  EXPECT_LE(relative_error(conic_canonical(q)(x.scaled(2.0)), ref / 8), 1e-12);
}

TEST(ConicCanonical, Validation) {
  EXPECT_THROW(ConicQ<double>::from_upper(1, 0, 0, 1, 0, 0), GeometryError);
  Eigen::Matrix3d asym = Eigen::Matrix3d::Identity();
  asym(0, 1) = 1e-3;
  EXPECT_THROW(ConicQ<double>{asym}, GeometryError);
}

TEST(CanonicalFn, Validation) {
  EXPECT_THROW(CanonicalFn<double>(2, {}), GeometryError);
  EXPECT_THROW(CanonicalFn<double>(2, {SimplexTerm<double>{{P{0, 0, 1}, P{1, 0, 1}}, 1}}), GeometryError);
  EXPECT_THROW(CanonicalFn<double>(2, {SimplexTerm<double>{{P{0, 0, 1}, P{1, 0, 1}, P{0, 1, 1}}, 2}}),
               GeometryError);
  const auto tri = simplex_canonical<double>({P{0, 0, 1}, P{1, 0, 1}, P{0, 1, 1}});
  EXPECT_THROW(tri(P{0.5, 1}), GeometryError);
}

TEST(CanonicalFn, LongDoubleScalar) {
  using PL = HomPoint<long double>;
  const auto tri = simplex_canonical<long double>({PL{0, 0, 1}, PL{1, 0, 1}, PL{0, 1, 1}});
  EXPECT_NEAR(double(tri(PL{0.25L, 0.25L, 1})), 16.0, 1e-15);
}
