#include "doctest.h"

#include "revolve/linalg.hpp"

#include <random>

using namespace revolve;

namespace {
Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST_CASE("project onto coordinate and general subspaces") {
  Subspace F = Subspace::span(vec2(1, 0));
  CHECK((project(F, vec2(3, 4)) - vec2(3, 0)).norm() == doctest::Approx(0));

  Subspace Z = Subspace::trivial(2);
  CHECK(project(Z, vec2(5, -7)).norm() == doctest::Approx(0));

  // Oracle: P_F = f f^T for a unit vector f.
  const Vector f = vec2(1, 1).normalized();
  Subspace D = Subspace::span(f);
  const Vector expected = f * (f.transpose() * vec2(1, 0));
  CHECK((project(D, vec2(1, 0)) - expected).norm() < 1e-15);
  CHECK((project(D, vec2(1, 0)) - vec2(0.5, 0.5)).norm() < 1e-15);
}

TEST_CASE("project is idempotent and self-adjoint") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = 2 + trial % 5;
    Matrix rows(2, d);
    for (Eigen::Index i = 0; i < rows.size(); ++i) rows(i) = gauss(rng);
    Subspace F = Subspace::fromSpanningRows(d, rows);
    Vector x(d), y(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      x[i] = gauss(rng);
      y[i] = gauss(rng);
    }
    const Vector px = project(F, x);
    CHECK((project(F, px) - px).norm() < 1e-12);
    CHECK(px.dot(y) == doctest::Approx(x.dot(project(F, y))).epsilon(1e-12));
  }
}

TEST_CASE("diadic products") {
  Matrix M = diadic(vec2(1, 0), vec2(0, 1));
  CHECK(M(0, 1) == 1.0);
  CHECK(M.sum() == 1.0);

  Matrix P = diadic(vec2(1, 0), vec2(1, 0));
  CHECK((P * P - P).norm() < 1e-15);

  Matrix D = diadic(vec2(1, 2), vec2(3, 4));
  Matrix expect(2, 2);
  expect << 3, 4, 6, 8;
  CHECK((D - expect).norm() < 1e-15);
}

TEST_CASE("support function of F-ellipsoids") {
  FEllipsoid ball{Subspace::trivial(2), Vector::Zero(2), Matrix(0, 0), 1.0};
  CHECK(supportEllipsoid(ball, vec2(1, 0)) == doctest::Approx(1.0));

  Matrix m1(1, 1);
  m1 << 2.0;
  FEllipsoid E{Subspace::span(vec2(1, 0)), Vector::Zero(2), m1, 1.0};
  CHECK(supportEllipsoid(E, vec2(1, 0)) == doctest::Approx(2.0));

  FEllipsoid Et{Subspace::span(vec2(1, 0)), vec2(1, 0), m1, 1.0};
  CHECK(supportEllipsoid(Et, vec2(1, 0)) == doctest::Approx(3.0));
}

TEST_CASE("support function dominates inner products over sampled points") {
  Matrix m1(1, 1);
  m1 << 1.7;
  FEllipsoid E{Subspace::span(vec2(3, 4)), vec2(0.3, -0.2), m1, 0.6};
  const Matrix A = E.fullOperator();
  std::mt19937_64 rng(21);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    Vector u = vec2(gauss(rng), gauss(rng)).normalized() * std::sqrt(unif(rng));
    const Vector x = A * u + E.center;
    Vector p = vec2(gauss(rng), gauss(rng));
    CHECK(supportEllipsoid(E, p) >= p.dot(x) - 1e-10);
    CHECK(gaugeEllipsoid(E, x) <= 1.0 + 1e-10);
  }
}

TEST_CASE("regular simplex directions") {
  for (Eigen::Index d = 1; d <= 6; ++d) {
    const Matrix Q = regularSimplexDirections(d);
    REQUIRE(Q.cols() == d + 1);
    Vector sum = Q.rowwise().sum();
    CHECK(sum.norm() < 1e-12);
    for (Eigen::Index i = 0; i <= d; ++i) {
      CHECK(Q.col(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
      for (Eigen::Index j = i + 1; j <= d; ++j)
        CHECK(Q.col(i).dot(Q.col(j)) ==
              doctest::Approx(-1.0 / double(d)).epsilon(1e-12));
    }
  }
}

TEST_CASE("subspace from spanning rows and complement") {
  Matrix rows(3, 3);
  rows << 1, 1, 0, 2, 2, 0, 0, 1, 1;  // middle row dependent
  Subspace F = Subspace::fromSpanningRows(3, rows);
  CHECK(F.dim() == 2);
  Subspace G = F.complement();
  CHECK(G.dim() == 1);
  CHECK((F.basis().transpose() * G.basis()).norm() < 1e-12);

  Vector x(3);
  x << 1, 2, 3;
  CHECK((project(F, x) + project(G, x) - x).norm() < 1e-12);
}

TEST_CASE("symmetric packing round trip") {
  SymPack pack{3};
  Matrix S(3, 3);
  S << 2, 1, 0.5, 1, 3, -1, 0.5, -1, 4;
  CHECK((pack.unpack(pack.pack(S)) - S).norm() == 0.0);
}

TEST_CASE("dimension mismatches are rejected") {
  Vector x3(3);
  x3.setZero();
  CHECK_THROWS_AS(project(Subspace::span(vec2(1, 0)), x3), DimensionError);
  CHECK_THROWS_AS(diadic(vec2(1, 0), x3), DimensionError);
}
