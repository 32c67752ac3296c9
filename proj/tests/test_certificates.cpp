#include "doctest.h"

#include "revolve/bodies.hpp"
#include "revolve/certificates.hpp"
#include "revolve/linalg.hpp"
#include "revolve/solver.hpp"

#include <cmath>
#include <random>

using namespace revolve;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

FEllipsoid unitBall(Eigen::Index d, const Subspace& F) {
  return {F, Vector::Zero(d), Matrix::Identity(F.dim(), F.dim()), 1.0};
}

}  // namespace

TEST_CASE("contact extraction: ball in square, simplex, ellipse in box") {
  const Subspace F1 = Subspace::span(vec2(1, 0));
  auto square = extractContactPairs(unitBall(2, F1), cubeBody(2));
  REQUIRE(square.size() == 4);
  for (const ContactPair& cp : square) {
    CHECK((cp.v - cp.p).norm() < 1e-12);
    CHECK(std::abs(cp.v.norm() - 1.0) < 1e-12);
    CHECK(std::abs(cp.p.dot(cp.v) - 1.0) < 1e-10);
  }

  auto simplex = extractContactPairs(unitBall(2, Subspace::full(2)), simplexJohn(2));
  REQUIRE(simplex.size() == 3);
  const Matrix q = regularSimplexDirections(2);
  for (const ContactPair& cp : simplex) {
    double best = 1e9;
    for (Eigen::Index i = 0; i < 3; ++i)
      best = std::min(best, (cp.v - q.col(i)).norm());
    CHECK(best < 1e-10);
    CHECK((cp.v - cp.p).norm() < 1e-10);
  }

  // Ellipse with semi-axes (2, 1) in the box [-2,2] x [-1,1].
  Vector hw(2);
  hw << 2, 1;
  Matrix m1(1, 1);
  m1 << 2.0;
  FEllipsoid E{F1, Vector::Zero(2), m1, 1.0};
  auto box = extractContactPairs(E, boxBody(hw));
  REQUIRE(box.size() == 4);
  for (const ContactPair& cp : box) {
    if (std::abs(cp.v[0]) > 1.0) {
      CHECK(std::abs(cp.v[0]) == doctest::Approx(2.0));
      CHECK(std::abs(cp.p[0]) == doctest::Approx(0.5));
    } else {
      CHECK(std::abs(cp.v[1]) == doctest::Approx(1.0));
      CHECK(std::abs(cp.p[1]) == doctest::Approx(1.0));
    }
  }

  // Strictly interior ellipsoid: no contacts.
  FEllipsoid small{F1, Vector::Zero(2), 0.5 * Matrix::Identity(1, 1), 0.5};
  CHECK_THROWS_AS(extractContactPairs(small, cubeBody(2)), CertificateNotFound);
}

TEST_CASE("support-plane property of extracted pairs") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> gauss;
  auto out = solveEllipsoidFixedAxis(randomPolygon2D(19, 7), Subspace::span(vec2(1, 0)));
  auto pairs = extractContactPairs(out.value, randomPolygon2D(19, 7));
  const Matrix A = out.value.fullOperator();
  for (const ContactPair& cp : pairs) {
    CHECK(std::abs(cp.p.dot(cp.v) - 1.0) < 1e-10);
    for (int trial = 0; trial < 100; ++trial) {
      Vector u = vec2(gauss(rng), gauss(rng)).normalized();
      const Vector x = A * u;  // recentered boundary point of the solution
      CHECK(cp.p.dot(x) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("weight fitting on the cube and the simplex") {
  auto pairs = extractContactPairs(unitBall(2, Subspace::full(2)), cubeBody(2));
  auto cert = fitJohnWeights(pairs, Subspace::full(2), 2);
  CHECK(cert.valid(1e-10));
  CHECK(cert.weights.sum() == doctest::Approx(2.0).epsilon(1e-12));

  // The uniform weights named in the hand computation are also valid.
  JohnCertificate uniform;
  uniform.pairs = pairs;
  uniform.weights = Vector::Constant(4, 0.5);
  for (const CertificateCheck& c : verifyCertificate(uniform, Subspace::full(2), 2))
    CHECK(c.pass);

  auto spairs = extractContactPairs(unitBall(2, Subspace::full(2)), simplexJohn(2));
  auto scert = fitJohnWeights(spairs, Subspace::full(2), 2);
  REQUIRE(scert.pairs.size() == 3);
  for (Eigen::Index i = 0; i < 3; ++i)
    CHECK(scert.weights[i] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));

  // Independent oracle: the 3x3 system (one diagonal and one off-diagonal
  // decomposition entry plus the trace row) solved directly.
  Matrix S(3, 3);
  Vector rhs(3);
  for (Eigen::Index i = 0; i < 3; ++i) {
    S(0, i) = scert.pairs[size_t(i)].p[0] * scert.pairs[size_t(i)].v[0];
    S(1, i) = scert.pairs[size_t(i)].p[0] * scert.pairs[size_t(i)].v[1];
    S(2, i) = 1.0;
  }
  rhs << 1, 0, 2;
  const Vector alpha = S.colPivHouseholderQr().solve(rhs);
  CHECK((alpha - scert.weights).norm() < 1e-9);
  CHECK(std::abs(alpha[0] - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("a single pair admits no certificate") {
  std::vector<ContactPair> one;
  one.push_back({vec2(1, 0), vec2(1, 0)});
  CHECK_THROWS_AS(fitJohnWeights(one, Subspace::span(vec2(1, 0)), 2),
                  CertificateNotFound);
}

TEST_CASE("verification flags corrupted certificates") {
  auto pairs = extractContactPairs(unitBall(2, Subspace::full(2)), cubeBody(2));
  JohnCertificate cert = fitJohnWeights(pairs, Subspace::full(2), 2);
  cert.weights[0] = 0.0;
  bool all = true;
  for (const CertificateCheck& c : verifyCertificate(cert, Subspace::full(2), 2))
    all = all && c.pass;
  CHECK_FALSE(all);
}

TEST_CASE("rotated-axis symmetry residual on sweep output") {
  auto out = solveEllipsoidAnyAxis(cubeBody(2), 1);
  auto pairs = extractContactPairs(out.value, cubeBody(2));
  auto cert = fitJohnWeights(pairs, out.value.axis, 2, true);
  REQUIRE(cert.residual_symmetry.has_value());
  CHECK(*cert.residual_symmetry <= 1e-5);

  auto ell = solveEllipsoidAnyAxis(ellipseApprox2D(2.0, 1.0, 64), 1);
  auto epairs = extractContactPairs(ell.value, ellipseApprox2D(2.0, 1.0, 64));
  auto ecert = fitJohnWeights(epairs, ell.value.axis, 2, true);
  REQUIRE(ecert.residual_symmetry.has_value());
  CHECK(*ecert.residual_symmetry <= 1e-5);
}

TEST_CASE("good center: symmetric configurations and the simplex") {
  auto pairs = extractContactPairs(unitBall(2, Subspace::full(2)), cubeBody(2));
  auto cert = fitJohnWeights(pairs, Subspace::full(2), 2);
  auto gc = goodCenter(cert.pairs, cert.weights, Subspace::span(vec2(1, 0)), 2);
  REQUIRE(gc.ok);
  CHECK(gc.z.norm() < 1e-12);
  CHECK((gc.c - cert.weights).norm() < 1e-12);

  auto spairs = extractContactPairs(unitBall(2, Subspace::full(2)), simplexJohn(2));
  auto scert = fitJohnWeights(spairs, Subspace::full(2), 2);
  const Subspace F = Subspace::span(vec2(1, 0));
  auto sgc = goodCenter(scert.pairs, scert.weights, F, 2);
  REQUIRE(sgc.ok);
  // Direct arithmetic for the center.
  Vector vsum = Vector::Zero(2);
  for (size_t i = 0; i < scert.pairs.size(); ++i)
    vsum += scert.weights[Eigen::Index(i)] * scert.pairs[i].v;
  CHECK((sgc.z - project(F, vsum) / 3.0).norm() < 1e-12);
  CHECK(sgc.resid_zerosum_p < 1e-10);
  CHECK(sgc.resid_zerosum_pfv < 1e-10);
}

TEST_CASE("contact polytopes and the reflected-dilate inclusion") {
  const Subspace F = Subspace::span(vec2(1, 0));
  auto pairs = extractContactPairs(unitBall(2, F), cubeBody(2));
  auto cp = contactPolytopes(pairs, F, 2);
  CHECK(cp.inner.numVertices() == 4);
  CHECK(cp.outer.numFacets() == 4);
  REQUIRE(cp.inclusion_checked);
  CHECK(cp.inclusion_margin == doctest::Approx(1.0).epsilon(1e-9));

  // Simplex: the outer contact polytope equals the body and the inclusion
  // in the reflected double dilate of the inner one is tight.
  auto spairs = extractContactPairs(unitBall(2, Subspace::full(2)), simplexJohn(2));
  auto scp = contactPolytopes(spairs, Subspace::full(2), 2);
  REQUIRE(scp.inclusion_checked);
  CHECK(std::abs(scp.inclusion_margin) < 1e-9);

  // Ellipse (2,1) in the box, axis e1: strict margin.
  Vector hw(2);
  hw << 2, 1;
  Matrix m1(1, 1);
  m1 << 2.0;
  auto bpairs = extractContactPairs(FEllipsoid{F, Vector::Zero(2), m1, 1.0},
                                    boxBody(hw));
  auto bcp = contactPolytopes(bpairs, F, 2);
  REQUIRE(bcp.inclusion_checked);
  CHECK(bcp.inclusion_margin > 0.5);
}

TEST_CASE("Loewner certificates") {
  Matrix V = cubeVertices(2).V / std::sqrt(2.0);
  auto cert = lownerCertificate(VPolytope{V}, Subspace::span(vec2(1, 0)), 2);
  CHECK(cert.valid(1e-10));
  CHECK(cert.weights.sum() == doctest::Approx(2.0).epsilon(1e-10));

  // The uniform half weights on all four sphere points are valid too.
  JohnCertificate uniform;
  for (Eigen::Index i = 0; i < 4; ++i) {
    const Vector u = V.col(i);
    uniform.pairs.push_back({u, u});
  }
  uniform.weights = Vector::Constant(4, 0.5);
  for (const CertificateCheck& c :
       verifyCertificate(uniform, Subspace::span(vec2(1, 0)), 2))
    CHECK(c.pass);

  auto tri = lownerCertificate(simplexLowner(2), Subspace::full(2), 2);
  REQUIRE(tri.pairs.size() == 3);
  for (Eigen::Index i = 0; i < 3; ++i)
    CHECK(tri.weights[i] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));

  CHECK_THROWS_AS(lownerCertificate(VPolytope{0.9 * V}, Subspace::full(2), 2),
                  CertificateNotFound);
}

TEST_CASE("projected contact unit vectors satisfy the moment identities") {
  Vector diag(3);
  diag << 1, 1, 1;
  const Subspace F = Subspace::span(diag);
  auto out = solveEllipsoidFixedAxis(cubeBody(3), F);
  auto pairs = extractContactPairs(out.value, cubeBody(3));
  auto cert = fitJohnWeights(pairs, F, 3);
  const std::vector<Vector> us = contactUnitVectors(out.value, cert.pairs);
  const USpaceIdentities id = uSpaceIdentities(us, cert.weights, F);
  CHECK(id.resid_projector <= 1e-6);
  CHECK(id.resid_zerosum <= 1e-6);
  CHECK(id.resid_mass_on_f <= 1e-6);
  CHECK(id.resid_mass_off_f <= 1e-6);
}

TEST_CASE("pruning respects the size bound and the residual tolerance") {
  // Dense contact set from a polyhedral disk.
  auto out = solveEllipsoidFixedAxis(ballApprox2D(64), Subspace::span(vec2(1, 0)));
  auto pairs = extractContactPairs(out.value, ballApprox2D(64));
  auto cert = fitJohnWeights(pairs, Subspace::span(vec2(1, 0)), 2);
  CHECK(cert.pairs.size() <= 2 * 2 * 2 + 2 + 1);
  CHECK(cert.valid(1e-6));
  CHECK((cert.weights.array() > 0).all());
}
