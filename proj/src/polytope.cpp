#include "revolve/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace revolve {
namespace {

double bodyScale(const HPolytope& P) {
  double s = 1.0;
  for (Eigen::Index i = 0; i < P.b.size(); ++i) s = std::max(s, std::abs(P.b[i]));
  return s;
}

// Ball through a support set of at most d+1 affinely independent points.
EnclosingBall ballFromSupport(const std::vector<Vector>& R) {
  EnclosingBall ball;
  if (R.empty()) return ball;
  const Eigen::Index d = R[0].size();
  ball.center = R[0];
  if (R.size() == 1) return ball;
  const Eigen::Index k = Eigen::Index(R.size()) - 1;
  Matrix Q(d, k);
  for (Eigen::Index i = 0; i < k; ++i) Q.col(i) = R[i + 1] - R[0];
  Matrix G = Q.transpose() * Q;
  Vector rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) rhs[i] = 0.5 * Q.col(i).squaredNorm();
  Vector lam = G.ldlt().solve(rhs);
  ball.center = R[0] + Q * lam;
  ball.radius = (ball.center - R[0]).norm();
  return ball;
}

bool inBall(const EnclosingBall& B, const Vector& p, double tol) {
  return (p - B.center).norm() <= B.radius + tol;
}

EnclosingBall welzl(std::vector<Vector>& pts, size_t n, std::vector<Vector>& R,
                    Eigen::Index d) {
  if (n == 0 || Eigen::Index(R.size()) == d + 1) return ballFromSupport(R);
  EnclosingBall ball = welzl(pts, n - 1, R, d);
  const Vector& p = pts[n - 1];
  if (R.empty() && ball.center.size() == 0) ball = ballFromSupport({p});
  if (inBall(ball, p, 1e-12 * (1.0 + ball.radius))) return ball;
  R.push_back(p);
  ball = welzl(pts, n - 1, R, d);
  R.pop_back();
  // Move-to-front: keeps the support points early in later calls.
  auto it = pts.begin() + long(n - 1);
  Vector tmp = *it;
  pts.erase(it);
  pts.insert(pts.begin(), tmp);
  return ball;
}

}  // namespace

void validateBody(const HPolytope& P, double tol) {
  for (Eigen::Index i = 0; i < P.numFacets(); ++i)
    if (P.A.row(i).norm() <= tol)
      throw std::invalid_argument("HPolytope: zero facet normal");
  if (!isBounded(P)) throw std::invalid_argument("HPolytope: unbounded");
  const ChebyshevBall ball = chebyshevBall(P);
  if (ball.radius <= tol)
    throw std::invalid_argument("HPolytope: empty interior");
}

ChebyshevBall inradiusChebyshev(const HPolytope& P) { return chebyshevBall(P); }

EnclosingBall minimalEnclosingBall(const Matrix& points) {
  if (points.cols() == 0)
    throw std::invalid_argument("minimalEnclosingBall: no points");
  const Eigen::Index d = points.rows();
  std::vector<Vector> pts;
  pts.reserve(size_t(points.cols()));
  for (Eigen::Index i = 0; i < points.cols(); ++i) pts.push_back(points.col(i));
  std::vector<Vector> support;
  EnclosingBall ball = welzl(pts, pts.size(), support, d);
  if (ball.center.size() == 0) {
    ball.center = points.col(0);
    ball.radius = 0.0;
  }
  return ball;
}

HPolytope polarVPolytope(const VPolytope& P) {
  HPolytope polar{P.V.transpose(), Vector::Ones(P.numVertices())};
  if (!isBounded(polar))
    throw std::invalid_argument(
        "polarVPolytope: origin is not interior to the hull (polar unbounded)");
  return polar;
}

HPolytope section(const HPolytope& P, const Subspace& F) {
  requireDim(F.ambientDim(), P.dim(), "section");
  const Eigen::Index s = F.dim();
  Matrix A(P.numFacets(), s);
  Vector b(P.numFacets());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < P.numFacets(); ++i) {
    Vector row = F.basis().transpose() * P.A.row(i).transpose();
    if (row.norm() <= 1e-13 * (1.0 + P.A.row(i).norm())) {
      // Half-space parallel to F: either redundant or makes the section empty.
      if (P.b[i] < -1e-12 * bodyScale(P))
        throw std::invalid_argument("section: empty (parallel facet excludes F)");
      continue;
    }
    A.row(k) = row.transpose();
    b[k] = P.b[i];
    ++k;
  }
  HPolytope S{A.topRows(k), b.head(k)};
  if (s > 0 && !isFeasible(S)) throw std::invalid_argument("section: empty");
  return S;
}

Matrix enumerateVertices(const HPolytope& P, double tol) {
  const Eigen::Index m = P.numFacets(), d = P.dim();
  if (d < 1) throw std::invalid_argument("enumerateVertices: dimension < 1");
  double combos = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) combos *= double(m - i) / double(i + 1);
  if (combos > 5e6)
    throw std::invalid_argument("enumerateVertices: too many facet subsets");

  const double scale = bodyScale(P);
  std::vector<Vector> verts;
  std::vector<Eigen::Index> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  Matrix Asub(d, d);
  Vector bsub(d);
  while (true) {
    for (Eigen::Index i = 0; i < d; ++i) {
      Asub.row(i) = P.A.row(idx[size_t(i)]);
      bsub[i] = P.b[idx[size_t(i)]];
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(Asub);
    qr.setThreshold(1e-10);
    if (qr.rank() == d) {
      Vector x = qr.solve(bsub);
      if (((P.A * x - P.b).array() <= tol * scale).all()) {
        bool dup = false;
        for (const Vector& v : verts)
          if ((v - x).norm() <= 1e-9 * (1.0 + x.norm())) { dup = true; break; }
        if (!dup) verts.push_back(x);
      }
    }
    // next lexicographic combination
    Eigen::Index i = d - 1;
    while (i >= 0 && idx[size_t(i)] == m - d + i) --i;
    if (i < 0) break;
    ++idx[size_t(i)];
    for (Eigen::Index j = i + 1; j < d; ++j) idx[size_t(j)] = idx[size_t(j - 1)] + 1;
  }

  std::sort(verts.begin(), verts.end(), [](const Vector& a, const Vector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a[i] < b[i] - 1e-12) return true;
      if (a[i] > b[i] + 1e-12) return false;
    }
    return false;
  });
  Matrix out(d, Eigen::Index(verts.size()));
  for (size_t i = 0; i < verts.size(); ++i) out.col(Eigen::Index(i)) = verts[i];
  return out;
}

Matrix convexHull2D(const Matrix& points) {
  requireDim(points.rows(), 2, "convexHull2D");
  std::vector<Vector> pts;
  for (Eigen::Index i = 0; i < points.cols(); ++i) pts.push_back(points.col(i));
  std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vector& a, const Vector& b) {
                          return (a - b).norm() < 1e-12;
                        }),
            pts.end());
  const auto cross = [](const Vector& o, const Vector& a, const Vector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  if (pts.size() <= 2) {
    Matrix out(2, Eigen::Index(pts.size()));
    for (size_t i = 0; i < pts.size(); ++i) out.col(Eigen::Index(i)) = pts[i];
    return out;
  }
  std::vector<Vector> hull(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
    hull[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
    hull[k++] = pts[i];
  }
  Matrix out(2, Eigen::Index(k - 1));
  for (size_t i = 0; i + 1 < k; ++i) out.col(Eigen::Index(i)) = hull[i];
  return out;
}

namespace {

double polygonArea(const Matrix& ccwHull) {
  double a = 0.0;
  const Eigen::Index n = ccwHull.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto p = ccwHull.col(i);
    const auto q = ccwHull.col((i + 1) % n);
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * std::abs(a);
}

double interval1D(const HPolytope& P, double* lo_out = nullptr,
                  double* hi_out = nullptr) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < P.numFacets(); ++i) {
    const double a = P.A(i, 0), b = P.b[i];
    if (a > 1e-13) hi = std::min(hi, b / a);
    else if (a < -1e-13) lo = std::max(lo, b / a);
    else if (b < 0) return 0.0;
  }
  if (lo_out) *lo_out = lo;
  if (hi_out) *hi_out = hi;
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("volume: unbounded interval");
  return std::max(0.0, hi - lo);
}

}  // namespace

double volume(const HPolytope& P) {
  const Eigen::Index d = P.dim();
  if (d == 0) return 1.0;
  if (d == 1) return interval1D(P);
  if (d > 3) throw std::invalid_argument("volume: exact mode requires dim <= 3");
  const Matrix V = enumerateVertices(P);
  if (V.cols() < d + 1) return 0.0;
  if (d == 2) {
    const Matrix hull = convexHull2D(V);
    if (hull.cols() < 3) return 0.0;
    return polygonArea(hull);
  }
  // d == 3: facet decomposition around the vertex centroid.
  const Vector c = V.rowwise().mean();
  const double scale = bodyScale(P);
  double vol = 0.0;
  for (Eigen::Index i = 0; i < P.numFacets(); ++i) {
    const Vector n = P.A.row(i).transpose();
    const double nn = n.norm();
    if (nn <= 1e-13) continue;
    std::vector<Eigen::Index> on;
    for (Eigen::Index j = 0; j < V.cols(); ++j)
      if (std::abs(n.dot(V.col(j)) - P.b[i]) <= 1e-8 * scale * std::max(1.0, nn))
        on.push_back(j);
    if (on.size() < 3) continue;
    // Orthonormal basis of the facet plane.
    const Eigen::Vector3d n3 = n;
    const Eigen::Vector3d u = n3.unitOrthogonal();
    const Eigen::Vector3d w = n3.cross(u).normalized();
    Vector fc = Vector::Zero(3);
    for (auto j : on) fc += V.col(j);
    fc /= double(on.size());
    std::vector<std::pair<double, Eigen::Index>> ang;
    for (auto j : on) {
      const Vector r = V.col(j) - fc;
      ang.emplace_back(std::atan2(w.dot(r), u.dot(r)), j);
    }
    std::sort(ang.begin(), ang.end());
    Matrix poly(2, Eigen::Index(ang.size()));
    for (size_t k = 0; k < ang.size(); ++k) {
      const Vector r = V.col(ang[k].second) - fc;
      poly(0, Eigen::Index(k)) = u.dot(r);
      poly(1, Eigen::Index(k)) = w.dot(r);
    }
    const double area = polygonArea(poly);
    const double h = (P.b[i] - n.dot(c)) / nn;
    vol += area * h / 3.0;
  }
  return vol;
}

McVolume volumeMonteCarlo(const HPolytope& P, long samples, unsigned seed) {
  const Eigen::Index d = P.dim();
  Vector lo(d), hi(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    Vector c = Vector::Zero(d);
    c[j] = 1.0;
    LpResult up = solveLp(P.A, P.b, c);
    LpResult dn = solveLp(P.A, P.b, -c);
    if (up.status != LpStatus::Optimal || dn.status != LpStatus::Optimal)
      throw std::invalid_argument("volumeMonteCarlo: unbounded or empty");
    hi[j] = up.objective;
    lo[j] = -dn.objective;
  }
  double box = 1.0;
  for (Eigen::Index j = 0; j < d; ++j) box *= std::max(0.0, hi[j] - lo[j]);
  if (box == 0.0) return {0.0, 0.0};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  long hits = 0;
  Vector x(d);
  for (long i = 0; i < samples; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x[j] = lo[j] + (hi[j] - lo[j]) * unif(rng);
    if (P.contains(x, 0.0)) ++hits;
  }
  const double p = double(hits) / double(samples);
  McVolume out;
  out.volume = box * p;
  out.std_error = box * std::sqrt(std::max(0.0, p * (1.0 - p)) / double(samples));
  return out;
}

double volumeAuto(const HPolytope& P) {
  if (P.dim() <= 3) return volume(P);
  if (P.dim() <= 6) return volumeMonteCarlo(P).volume;
  throw std::invalid_argument("volumeAuto: dimension > 6");
}

HPolytope vpolyToHpoly(const VPolytope& P) {
  const Eigen::Index d = P.dim();
  if (d > 3) throw std::invalid_argument("vpolyToHpoly: dim <= 3 only");
  const Vector c = P.centroid();
  Matrix C = P.V.colwise() - c;
  Eigen::ColPivHouseholderQR<Matrix> qr(C);
  qr.setThreshold(1e-10);
  if (qr.rank() < d)
    throw std::invalid_argument("vpolyToHpoly: hull is lower-dimensional");
  const HPolytope polar = polarVPolytope(VPolytope{C});
  const Matrix U = enumerateVertices(polar);
  HPolytope out{U.transpose(), Vector::Ones(U.cols()) + U.transpose() * c};
  return out;
}

double volumeV(const VPolytope& P) {
  const Eigen::Index d = P.dim();
  if (d == 0) return 1.0;
  if (P.numVertices() < d + 1) return 0.0;
  const Vector c = P.centroid();
  Matrix C = P.V.colwise() - c;
  Eigen::ColPivHouseholderQR<Matrix> qr(C);
  qr.setThreshold(1e-10);
  if (qr.rank() < d) return 0.0;
  if (d == 1) {
    return P.V.row(0).maxCoeff() - P.V.row(0).minCoeff();
  }
  if (d == 2) {
    const Matrix hull = convexHull2D(P.V);
    if (hull.cols() < 3) return 0.0;
    return polygonArea(hull);
  }
  if (d == 3) return volume(vpolyToHpoly(P));
  throw std::invalid_argument("volumeV: dim <= 3 only");
}

bool containsAll(const HPolytope& P, const Matrix& points, double tol) {
  for (Eigen::Index i = 0; i < points.cols(); ++i)
    if (!P.contains(points.col(i), tol)) return false;
  return true;
}

double vertexSetDistance(const Matrix& A, const Matrix& B) {
  const auto oneSided = [](const Matrix& X, const Matrix& Y) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < Y.cols(); ++j)
        best = std::min(best, (X.col(i) - Y.col(j)).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  if (A.cols() == 0 || B.cols() == 0)
    return A.cols() == B.cols() ? 0.0 : std::numeric_limits<double>::infinity();
  return std::max(oneSided(A, B), oneSided(B, A));
}

}  // namespace revolve
