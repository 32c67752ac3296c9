#include "revolve/bodies.hpp"

#include "revolve/linalg.hpp"

#include <cmath>
#include <random>

namespace revolve {

HPolytope cubeBody(Eigen::Index d) {
  Matrix A(2 * d, d);
  A.setZero();
  for (Eigen::Index i = 0; i < d; ++i) {
    A(2 * i, i) = 1.0;
    A(2 * i + 1, i) = -1.0;
  }
  return {A, Vector::Ones(2 * d)};
}

VPolytope cubeVertices(Eigen::Index d) {
  const Eigen::Index n = Eigen::Index(1) << d;
  Matrix V(d, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      V(j, i) = (i >> j) & 1 ? 1.0 : -1.0;
  return {V};
}

HPolytope simplexJohn(Eigen::Index d) {
  const Matrix Q = regularSimplexDirections(d);
  return {Q.transpose(), Vector::Ones(d + 1)};
}

VPolytope simplexLowner(Eigen::Index d) { return {regularSimplexDirections(d)}; }

HPolytope crossPolytopeBody(Eigen::Index d) {
  const Eigen::Index n = Eigen::Index(1) << d;
  Matrix A(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      A(i, j) = (i >> j) & 1 ? 1.0 : -1.0;
  return {A, Vector::Ones(n)};
}

VPolytope crossPolytopeVertices(Eigen::Index d) {
  Matrix V(d, 2 * d);
  V.setZero();
  for (Eigen::Index i = 0; i < d; ++i) {
    V(i, 2 * i) = 1.0;
    V(i, 2 * i + 1) = -1.0;
  }
  return {V};
}

HPolytope boxBody(const Vector& half_widths) {
  const Eigen::Index d = half_widths.size();
  Matrix A(2 * d, d);
  A.setZero();
  Vector b(2 * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    A(2 * i, i) = 1.0;
    A(2 * i + 1, i) = -1.0;
    b[2 * i] = half_widths[i];
    b[2 * i + 1] = half_widths[i];
  }
  return {A, b};
}

HPolytope ballApprox2D(int k) {
  Matrix A(k, 2);
  for (int i = 0; i < k; ++i) {
    const double t = 2.0 * M_PI * i / k;
    A(i, 0) = std::cos(t);
    A(i, 1) = std::sin(t);
  }
  return {A, Vector::Ones(k)};
}

HPolytope ellipseApprox2D(double a, double b, int k) {
  // Tangent line at (a cos t, b sin t): (x cos t)/a + (y sin t)/b = 1.
  Matrix A(k, 2);
  for (int i = 0; i < k; ++i) {
    const double t = 2.0 * M_PI * i / k;
    A(i, 0) = std::cos(t) / a;
    A(i, 1) = std::sin(t) / b;
  }
  return {A, Vector::Ones(k)};
}

HPolytope ellipsoidInnerApprox3D(const Vector& semi, int n_theta, int n_phi) {
  requireDim(semi.size(), 3, "ellipsoidInnerApprox3D");
  std::vector<Vector> dirs;
  dirs.push_back(Vector(3));
  dirs.back() << 0, 0, 1;
  dirs.push_back(Vector(3));
  dirs.back() << 0, 0, -1;
  for (int i = 1; i < n_theta; ++i) {
    const double th = M_PI * i / n_theta;
    for (int j = 0; j < n_phi; ++j) {
      const double ph = 2.0 * M_PI * j / n_phi;
      Vector u(3);
      u << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
      dirs.push_back(u);
    }
  }
  // Covering radius bound of the grid: a point of the sphere is within
  // half a cell diagonal of some grid direction.
  const double dth = M_PI / n_theta, dph = 2.0 * M_PI / n_phi;
  const double cover = 0.5 * std::sqrt(dth * dth + dph * dph);
  const double shrink = std::cos(cover);

  // Unit-ball tangent planes <u, y> <= 1 pulled in to <u, y> <= cos(cover)
  // stay inside B^3; mapping y = D^{-1} x sends them into the ellipsoid.
  Matrix A(Eigen::Index(dirs.size()), 3);
  for (size_t i = 0; i < dirs.size(); ++i)
    for (int j = 0; j < 3; ++j) A(Eigen::Index(i), j) = dirs[i][j] / semi[j];
  return {A, Vector::Constant(Eigen::Index(dirs.size()), shrink)};
}

HPolytope randomPolygon2D(unsigned seed, int k) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix A(k, 2);
  Vector b(k);
  for (int i = 0; i < k; ++i) {
    const double t = 2.0 * M_PI * (i + 0.35 * unif(rng)) / k;
    A(i, 0) = std::cos(t);
    A(i, 1) = std::sin(t);
    b[i] = 0.7 + 0.8 * unif(rng);
  }
  return {A, b};
}

VPolytope triangleWithAxis(const Vector& axis_dir) {
  requireDim(axis_dir.size(), 2, "triangleWithAxis");
  const Vector u = axis_dir.normalized();
  Vector w(2);
  w << -u[1], u[0];
  Matrix V(2, 3);
  V.col(0) = 2.0 * u;
  V.col(1) = -u + std::sqrt(3.0) * w;
  V.col(2) = -u - std::sqrt(3.0) * w;
  return {V};
}

}  // namespace revolve
