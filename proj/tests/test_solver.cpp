#include "doctest.h"

#include "revolve/bodies.hpp"
#include "revolve/linalg.hpp"
#include "revolve/solver.hpp"

#include <cmath>

using namespace revolve;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

double relVolumeError(const FEllipsoid& E, double expected_logvol) {
  return std::abs(std::exp(E.logVolumeFactor() - expected_logvol) - 1.0);
}

}  // namespace

TEST_CASE("unit ball is extremal in the cube for every axis") {
  for (Eigen::Index d = 2; d <= 3; ++d) {
    std::vector<Subspace> axes;
    for (Eigen::Index j = 0; j < d; ++j) axes.push_back(Subspace::span(Vector::Unit(d, j)));
    axes.push_back(Subspace::span(Vector::Ones(d)));
    axes.push_back(Subspace::full(d));
    axes.push_back(Subspace::trivial(d));
    for (const Subspace& F : axes) {
      auto out = solveEllipsoidFixedAxis(cubeBody(d), F);
      CHECK(out.diagnostics.status == SolveStatus::Optimal);
      CHECK(relVolumeError(out.value, 0.0) < 1e-9);
      CHECK(out.value.center.norm() < 1e-9);
      if (F.dim() > 0)
        CHECK((out.value.shape_on_f - Matrix::Identity(F.dim(), F.dim())).norm() <
              1e-8);
    }
  }
}

TEST_CASE("polyhedral ball approximation returns nearly the ball") {
  auto out = solveEllipsoidFixedAxis(ballApprox2D(64), Subspace::span(vec2(1, 0)));
  const double area = M_PI * std::exp(out.value.logVolumeFactor());
  CHECK(std::abs(area - M_PI) / M_PI < 0.02);
}

TEST_CASE("rectangle: semi-axes match the box and the grid oracle") {
  Vector hw(2);
  hw << 2, 1;
  auto out = solveEllipsoidFixedAxis(boxBody(hw), Subspace::span(vec2(1, 0)));
  CHECK(out.value.shape_on_f(0, 0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(out.value.mu == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(out.value.center.norm() < 1e-9);

  OracleProblem op;
  op.kind = OracleProblem::Kind::EllipsoidFixed;
  op.L = boxBody(hw);
  op.F = Subspace::span(vec2(1, 0));
  const OracleResult oracle = oracleGridSearch(op, 200);
  CHECK(oracle.shape_on_f(0, 0) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(oracle.mu == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(std::exp(out.value.logVolumeFactor() - oracle.log_volume_factor) -
                 1.0) < 1e-3);
}

TEST_CASE("identity is the optimal position of the cube in itself") {
  auto out = solveGeneralFixedAxis(cubeVertices(2), cubeBody(2),
                                   Subspace::span(vec2(1, 0)));
  CHECK(out.value.linear_on_f(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(out.value.mu == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(out.value.translation.norm() < 1e-9);
}

TEST_CASE("largest triangle with vertical axis in the square") {
  const VPolytope K = triangleWithAxis(vec2(0, 1));
  auto out = solveGeneralFixedAxis(K, cubeBody(2), Subspace::span(vec2(0, 1)));
  // Best area is 2 (half of the square), so det A = 2 / area(K).
  const double detA = std::exp(out.value.logVolumeFactor());
  CHECK(detA * 3.0 * std::sqrt(3.0) == doctest::Approx(2.0).epsilon(1e-8));

  OracleProblem op;
  op.kind = OracleProblem::Kind::GeneralFixed;
  op.K = K;
  op.L = cubeBody(2);
  op.F = Subspace::span(vec2(0, 1));
  const OracleResult oracle = oracleGridSearch(op, 200);
  CHECK(std::abs(std::exp(out.value.logVolumeFactor() - oracle.log_volume_factor) -
                 1.0) < 1e-3);
}

TEST_CASE("simplex in its reflected double dilate stays put") {
  const HPolytope L{-0.5 * simplexJohn(2).A, Vector::Ones(3)};
  const Matrix q = regularSimplexDirections(2);
  auto out = solveGeneralFixedAxis(VPolytope{-2.0 * q}, L, Subspace::full(2));
  CHECK((out.value.linear_on_f - Matrix::Identity(2, 2)).norm() < 1e-7);
  CHECK(out.value.translation.norm() < 1e-7);
}

TEST_CASE("axis sweep: cube and discretized ellipse") {
  auto cube3 = solveEllipsoidAnyAxis(cubeBody(3), 1);
  CHECK(relVolumeError(cube3.value, 0.0) < 1e-7);

  auto ell = solveEllipsoidAnyAxis(ellipseApprox2D(2.0, 1.0, 64), 1);
  const double area = M_PI * std::exp(ell.value.logVolumeFactor());
  CHECK(std::abs(area - 2.0 * M_PI) / (2.0 * M_PI) < 0.02);
  // Both principal directions parametrize the same ellipse; the
  // lexicographic tie-break picks the vertical label, and the recovered
  // operator must be the ellipse itself either way.
  const Matrix full = ell.value.fullOperator();
  CHECK(full(0, 0) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(full(1, 1) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(full(0, 1)) < 0.02);

  CHECK_THROWS(solveEllipsoidAnyAxis(cubeBody(3), 4));
}

TEST_CASE("Loewner: cube vertices, stretched cross, inscribed simplex") {
  for (Eigen::Index d = 2; d <= 3; ++d) {
    auto out = solveLownerFixedAxis(cubeVertices(d), Subspace::span(Vector::Unit(d, 0)));
    const double r = std::sqrt(double(d));
    CHECK(out.value.shape_on_f(0, 0) == doctest::Approx(r).epsilon(1e-9));
    CHECK(out.value.mu == doctest::Approx(r).epsilon(1e-9));
    CHECK(out.value.center.norm() < 1e-9);
  }
  Matrix V(2, 4);
  V << 1, -1, 0, 0, 0, 0, 2, -2;
  auto out = solveLownerFixedAxis(VPolytope{V}, Subspace::span(vec2(1, 0)));
  CHECK(out.value.shape_on_f(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(out.value.mu == doctest::Approx(2.0).epsilon(1e-8));

  OracleProblem op;
  op.kind = OracleProblem::Kind::LownerFixed;
  op.K = VPolytope{V};
  op.F = Subspace::span(vec2(1, 0));
  const OracleResult oracle = oracleGridSearch(op, 200);
  CHECK(oracle.shape_on_f(0, 0) == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(oracle.mu == doctest::Approx(2.0).epsilon(2e-3));

  auto tri = solveLownerFixedAxis(simplexLowner(2), Subspace::full(2));
  CHECK((tri.value.shape_on_f - Matrix::Identity(2, 2)).norm() < 1e-8);
  CHECK(tri.value.center.norm() < 1e-8);
}

TEST_CASE("feasibility of returned solutions") {
  for (unsigned seed : {3u, 14u, 15u}) {
    const HPolytope L = randomPolygon2D(seed, 7);
    auto out = solveEllipsoidFixedAxis(L, Subspace::span(vec2(1, 0)));
    for (Eigen::Index i = 0; i < L.numFacets(); ++i)
      CHECK(supportEllipsoid(out.value, L.A.row(i).transpose()) <=
            L.b[i] + 1e-9 * (1.0 + std::abs(L.b[i])));
  }
}

TEST_CASE("scale and translation covariance") {
  const HPolytope L = randomPolygon2D(42, 6);
  const Subspace F = Subspace::span(vec2(1, 0));
  auto base = solveEllipsoidFixedAxis(L, F);

  const double c = 2.5;
  auto scaled = solveEllipsoidFixedAxis(L.scaled(c), F);
  CHECK(std::abs(scaled.value.shape_on_f(0, 0) - c * base.value.shape_on_f(0, 0)) <
        1e-7 * c * base.value.shape_on_f(0, 0));
  CHECK(std::abs(scaled.value.mu - c * base.value.mu) < 1e-7 * c * base.value.mu);
  CHECK((scaled.value.center - c * base.value.center).norm() < 1e-7 * c);

  const Vector w = vec2(0.3, -0.8);
  auto moved = solveEllipsoidFixedAxis(L.translated(w), F);
  CHECK((moved.value.shape_on_f - base.value.shape_on_f).norm() < 1e-7);
  CHECK(std::abs(moved.value.mu - base.value.mu) < 1e-7);
  CHECK((moved.value.center - base.value.center - w).norm() < 1e-7);
}

TEST_CASE("enlarging the body never shrinks the optimum") {
  for (unsigned seed : {5u, 6u}) {
    const HPolytope L = randomPolygon2D(seed, 8);
    HPolytope bigger = L;
    bigger.b.array() += 0.1;
    const Subspace F = Subspace::span(vec2(1, 0));
    auto a = solveEllipsoidFixedAxis(L, F);
    auto b = solveEllipsoidFixedAxis(bigger, F);
    CHECK(b.value.logVolumeFactor() >= a.value.logVolumeFactor() - 1e-9);
  }
}

TEST_CASE("oracle equivalence on random polygons") {
  for (unsigned seed : {11u, 12u, 13u}) {
    const HPolytope L = randomPolygon2D(seed, 5);
    const Subspace F = Subspace::span(vec2(1, 0));
    auto out = solveEllipsoidFixedAxis(L, F);
    OracleProblem op;
    op.kind = OracleProblem::Kind::EllipsoidFixed;
    op.L = L;
    op.F = F;
    const OracleResult oracle = oracleGridSearch(op, 200);
    const double gap =
        std::abs(std::exp(out.value.logVolumeFactor()) -
                 std::exp(oracle.log_volume_factor)) /
        std::exp(oracle.log_volume_factor);
    CHECK(gap <= 1e-3);
  }
}

TEST_CASE("distinct initializations agree on the shape") {
  const HPolytope L = randomPolygon2D(77, 7);
  const Subspace F = Subspace::span(vec2(1, 0));
  SolveConfig cfg;
  cfg.init_seed = 101;
  auto a = solveEllipsoidFixedAxis(L, F, cfg);
  cfg.init_seed = 999;
  auto b = solveEllipsoidFixedAxis(L, F, cfg);
  CHECK((a.value.shape_on_f - b.value.shape_on_f).norm() < 1e-6);
  CHECK(std::abs(a.value.mu - b.value.mu) < 1e-6);
}

TEST_CASE("no feasible perturbation improves a solution") {
  // identity in the cube
  auto cube = solveEllipsoidFixedAxis(cubeBody(2), Subspace::span(vec2(1, 0)));
  auto rep = localPerturbationTest(cubeBody(2), Subspace::span(vec2(1, 0)),
                                   cube.value, 1000);
  CHECK(rep.max_improvement <= 0.0);

  for (unsigned seed = 1; seed <= 10; ++seed) {
    const HPolytope L = randomPolygon2D(seed * 7 + 1, 6);
    const Subspace F = Subspace::span(vec2(1, 0));
    auto out = solveEllipsoidFixedAxis(L, F);
    auto r = localPerturbationTest(L, F, out.value, 200, seed);
    CHECK(r.max_improvement <= 1e-9);
  }

  // A deliberately shrunken solution admits improvements.
  FEllipsoid bad = cube.value;
  bad.shape_on_f *= 0.9;
  bad.mu *= 0.9;
  auto repBad = localPerturbationTest(cubeBody(2), Subspace::span(vec2(1, 0)),
                                      bad, 1000);
  CHECK(repBad.max_improvement > 0.0);
}

TEST_CASE("infeasible and degenerate inputs are rejected") {
  Matrix A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  Vector b(4);
  b << 0, 0, 1, 1;  // slab with empty interior
  CHECK_THROWS_AS(solveEllipsoidFixedAxis(HPolytope{A, b}, Subspace::span(vec2(1, 0))),
                  InfeasibleProblem);

  Matrix seg(2, 2);
  seg << 0, 1, 0, 1;
  CHECK_THROWS_AS(solveLownerFixedAxis(VPolytope{seg}, Subspace::span(vec2(1, 0))),
                  InfeasibleProblem);
}
