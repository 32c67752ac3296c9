#include "doctest.h"

#include "revolve/bodies.hpp"
#include "revolve/linalg.hpp"
#include "revolve/polytope.hpp"

#include <cmath>
#include <random>

using namespace revolve;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// The directionally dilated simplex of the tightness construction, n = 2,
// gamma = 0.25, t = 0.8; built inline so the check is independent of the
// constructions module.
VPolytope dilatedSimplex2() {
  Vector a = vec2(1, 1).normalized();
  Vector q1 = vec2(1, -1).normalized();
  Vector q2 = -q1;
  Matrix V(2, 3);
  V.col(0) = 0.8 * q1 + 0.6 * a;
  V.col(1) = 0.8 * q2 + 0.6 * a;
  V.col(2) = -0.6 * a;
  return {V};
}

}  // namespace

TEST_CASE("LP basics") {
  // max x + y on the unit square
  HPolytope sq = cubeBody(2);
  Vector c = vec2(1, 1);
  LpResult r = solveLp(sq.A, sq.b, c);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(2.0));

  // unbounded: single half-space
  Matrix A(1, 2);
  A << 1, 0;
  CHECK(solveLp(A, Vector::Ones(1), c).status == LpStatus::Unbounded);

  // infeasible: x <= -1 and -x <= -1  (x <= -1 and x >= 1)
  Matrix B(2, 1);
  B << 1, -1;
  Vector bb(2);
  bb << -1, -1;
  Vector c1(1);
  c1 << 1;
  CHECK(solveLp(B, bb, c1).status == LpStatus::Infeasible);
}

TEST_CASE("Chebyshev inradius") {
  ChebyshevBall sq = inradiusChebyshev(cubeBody(2));
  CHECK(sq.radius == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sq.center.norm() < 1e-9);

  ChebyshevBall tri = inradiusChebyshev(simplexJohn(2));
  CHECK(tri.radius == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(tri.center.norm() < 1e-9);

  // Inradius of the polar of the dilated simplex equals
  // (1 / (n gamma)) / (1 + sqrt(1 - t^2)) = 2 / 1.6 = 1.25.
  HPolytope polar = polarVPolytope(dilatedSimplex2());
  ChebyshevBall ball = inradiusChebyshev(polar);
  CHECK(ball.radius == doctest::Approx(1.25).epsilon(1e-9));
}

TEST_CASE("minimal enclosing ball") {
  EnclosingBall cross = circumradius(crossPolytopeVertices(2));
  CHECK(cross.radius == doctest::Approx(1.0));
  CHECK(cross.center.norm() < 1e-9);

  Matrix single(2, 1);
  single << 3, -4;
  EnclosingBall pt = minimalEnclosingBall(single);
  CHECK(pt.radius == 0.0);
  CHECK((pt.center - single.col(0)).norm() == 0.0);

  // Right triangle: the oracle is the hypotenuse midpoint.
  Matrix tri(2, 3);
  tri << 0, 2, 0, 0, 0, 2;
  const Vector mid = 0.5 * (tri.col(1) + tri.col(2));
  const double rad = (tri.col(1) - mid).norm();
  EnclosingBall ball = minimalEnclosingBall(tri);
  CHECK(ball.radius == doctest::Approx(rad).epsilon(1e-12));
  CHECK((ball.center - mid).norm() < 1e-9);
  CHECK(rad == doctest::Approx(std::sqrt(2.0)));

  Matrix dup(2, 4);
  dup << 1, 1, -1, -1, 0, 0, 0, 0;
  CHECK(minimalEnclosingBall(dup).radius == doctest::Approx(1.0));
}

TEST_CASE("polar of V-polytopes") {
  HPolytope sq = polarVPolytope(crossPolytopeVertices(2));
  CHECK(sq.numFacets() == 4);
  Matrix V = enumerateVertices(sq);
  REQUIRE(V.cols() == 4);
  CHECK(V.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
  CHECK(std::abs(V.cwiseAbs().minCoeff() - 1.0) < 1e-12);

  HPolytope cross = polarVPolytope(cubeVertices(2));
  Matrix W = enumerateVertices(cross);
  REQUIRE(W.cols() == 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    CHECK(W.col(i).lpNorm<1>() == doctest::Approx(1.0));

  // Origin on the boundary of the hull: polar unbounded, rejected.
  Matrix shifted = cubeVertices(2).V;
  shifted.row(0).array() += 1.0;
  CHECK_THROWS(polarVPolytope(VPolytope{shifted}));
}

TEST_CASE("polar involution on random hulls") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index d = (trial % 2) ? 3 : 2;
    Matrix pts(d, 12);
    for (Eigen::Index i = 0; i < pts.size(); ++i) pts(i) = gauss(rng);
    // Symmetrize the cloud so the origin is well inside the hull.
    Matrix sym(d, 24);
    sym << pts, -pts;
    const HPolytope polar = polarVPolytope(VPolytope{sym});
    const Matrix polar_vertices = enumerateVertices(polar);
    const HPolytope back = polarVPolytope(VPolytope{polar_vertices});
    const Matrix hull_back = enumerateVertices(back);
    // Vertices of the double polar must match the hull of the original set.
    const Matrix original_hull =
        enumerateVertices(vpolyToHpoly(VPolytope{sym}));
    CHECK(vertexSetDistance(hull_back, original_hull) < 1e-8);
  }
}

TEST_CASE("sections") {
  HPolytope seg = section(cubeBody(3), Subspace::span(Vector::Unit(3, 0)));
  CHECK(volume(seg) == doctest::Approx(2.0));

  HPolytope diag = section(cubeBody(2), Subspace::span(vec2(1, 1)));
  double lo = 0, hi = 0;
  CHECK(volume(diag) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  (void)lo;
  (void)hi;

  // A plane section of a polyhedral ball approximation is close to a disk.
  Matrix rows(2, 3);
  rows << 1, 0, 0, 0, 1, 1;
  Subspace plane = Subspace::fromSpanningRows(3, rows);
  HPolytope ball3;
  {
    // tangent-plane approximation of B^3 via an icosahedral-like grid
    Vector semi(3);
    semi << 1, 1, 1;
    ball3 = ellipsoidInnerApprox3D(semi, 24, 48);
  }
  HPolytope disk = section(ball3, plane);
  CHECK(volume(disk) == doctest::Approx(M_PI).epsilon(0.02));
}

TEST_CASE("exact volumes") {
  CHECK(volume(cubeBody(3)) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(volume(crossPolytopeBody(3)) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(volume(simplexJohn(2)) == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(volume(simplexJohn(3)) > 0.0);
}

TEST_CASE("Monte Carlo volume agrees with exact volume") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.25, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    // Random 3D polytope: the cube cut by a few random half-spaces.
    Matrix A(6 + 4, 3);
    Vector b(10);
    A.topRows(6) = cubeBody(3).A;
    b.head(6) = cubeBody(3).b;
    std::normal_distribution<double> gauss;
    for (int i = 0; i < 4; ++i) {
      Vector n(3);
      n << gauss(rng), gauss(rng), gauss(rng);
      A.row(6 + i) = n.normalized().transpose();
      b[6 + i] = unif(rng);
    }
    HPolytope P{A, b};
    const double exact = volume(P);
    const McVolume mc = volumeMonteCarlo(P, 200000, 1000 + unsigned(trial));
    CHECK(std::abs(mc.volume - exact) <= 3.0 * mc.std_error + 1e-12);
  }
}

TEST_CASE("inradius never exceeds circumradius") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    HPolytope P = randomPolygon2D(unsigned(trial * 13 + 1), 7);
    const ChebyshevBall in = inradiusChebyshev(P);
    const EnclosingBall out = minimalEnclosingBall(enumerateVertices(P));
    CHECK(in.radius <= out.radius + 1e-9);
  }
  (void)rng;
}

TEST_CASE("V to H conversion round trip") {
  const VPolytope tri = triangleWithAxis(vec2(0, 1));
  const HPolytope H = vpolyToHpoly(tri);
  CHECK(H.numFacets() == 3);
  const Matrix back = enumerateVertices(H);
  CHECK(vertexSetDistance(back, tri.V) < 1e-9);
  CHECK(volumeV(tri) == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-12));

  // Degenerate (1-dimensional) hull in the plane has volume 0.
  Matrix seg(2, 2);
  seg << 0, 1, 0, 1;
  CHECK(volumeV(VPolytope{seg}) == 0.0);
}

TEST_CASE("body validation") {
  CHECK_NOTHROW(validateBody(cubeBody(3)));
  Matrix A(1, 2);
  A << 1, 0;
  CHECK_THROWS(validateBody(HPolytope{A, Vector::Ones(1)}));
}
