#include "revolve/lp.hpp"

#include <cmath>
#include <limits>

namespace revolve {
namespace {

constexpr double kPivotEps = 1e-11;

// Standard-form tableau simplex:  max c^T y, D y = e, y >= 0.
// Returns false if the iteration limit is hit (should not happen with
// Bland's rule; kept as a hard safety stop).
struct Tableau {
  Matrix T;                 // (m+1) x (n+1); last row = objective, last col = rhs
  std::vector<int> basis;   // basic variable per row

  Eigen::Index rows() const { return T.rows() - 1; }
  Eigen::Index cols() const { return T.cols() - 1; }

  bool iterate() {
    const Eigen::Index m = rows(), n = cols();
    for (long iter = 0; iter < 50000; ++iter) {
      // Bland: entering = smallest index with positive reduced cost.
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < n; ++j)
        if (T(m, j) > kPivotEps) { enter = j; break; }
      if (enter < 0) return true;  // optimal

      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        if (T(i, enter) > kPivotEps) {
          const double ratio = T(i, n) / T(i, enter);
          if (ratio < best - kPivotEps ||
              (ratio < best + kPivotEps &&
               (leave < 0 || basis[i] < basis[leave]))) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return true;  // unbounded; caller inspects reduced costs

      pivot(leave, enter);
    }
    return false;
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    T.row(r) /= T(r, c);
    for (Eigen::Index i = 0; i < T.rows(); ++i)
      if (i != r && std::abs(T(i, c)) > 0) T.row(i) -= T(i, c) * T.row(r);
    basis[r] = int(c);
  }

  bool hasImprovingUnboundedColumn() const {
    const Eigen::Index m = rows(), n = cols();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (T(m, j) > kPivotEps) {
        bool bounded = false;
        for (Eigen::Index i = 0; i < m; ++i)
          if (T(i, j) > kPivotEps) { bounded = true; break; }
        if (!bounded) return true;
      }
    }
    return false;
  }
};

}  // namespace

LpResult solveLp(const Matrix& A, const Vector& b, const Vector& c) {
  const Eigen::Index m = A.rows(), d = A.cols();
  requireDim(c.size(), d, "solveLp");
  requireDim(b.size(), m, "solveLp rhs");

  // Free x is split as x = u - w with u, w >= 0; one slack per row.
  const Eigen::Index n = 2 * d + m;
  Matrix D(m, n);
  D.leftCols(d) = A;
  D.middleCols(d, d) = -A;
  D.rightCols(m) = Matrix::Identity(m, m);
  Vector rhs = b;
  for (Eigen::Index i = 0; i < m; ++i)
    if (rhs[i] < 0) { D.row(i) *= -1.0; rhs[i] *= -1.0; }

  // Phase 1: minimize the sum of artificials.
  Tableau t1;
  t1.T = Matrix::Zero(m + 1, n + m + 1);
  t1.T.block(0, 0, m, n) = D;
  t1.T.block(0, n, m, m) = Matrix::Identity(m, m);
  t1.T.col(n + m).head(m) = rhs;
  t1.basis.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) t1.basis[i] = int(n + i);
  // Objective row: maximize -(sum of artificials) expressed through the basis.
  for (Eigen::Index j = 0; j < n; ++j) t1.T(m, j) = D.col(j).sum();
  t1.T(m, n + m) = rhs.sum();
  if (!t1.iterate()) return {LpStatus::Infeasible, 0.0, Vector()};
  if (t1.T(m, n + m) > 1e-7) return {LpStatus::Infeasible, 0.0, Vector()};

  // Drive any artificial still basic out of the basis when possible.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (t1.basis[i] >= int(n)) {
      Eigen::Index c2 = -1;
      for (Eigen::Index j = 0; j < n; ++j)
        if (std::abs(t1.T(i, j)) > 1e-9) { c2 = j; break; }
      if (c2 >= 0) t1.pivot(i, c2);
    }
  }

  // Phase 2 on the original columns.
  Tableau t2;
  t2.T = Matrix::Zero(m + 1, n + 1);
  t2.T.block(0, 0, m, n) = t1.T.block(0, 0, m, n);
  t2.T.col(n).head(m) = t1.T.col(n + m).head(m);
  t2.basis = t1.basis;
  Vector cost = Vector::Zero(n);
  cost.head(d) = c;
  cost.segment(d, d) = -c;
  t2.T.row(m).head(n) = cost.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const int bv = t2.basis[i];
    if (bv < int(n) && std::abs(cost[bv]) > 0)
      t2.T.row(m) -= cost[bv] * t2.T.row(i);
  }
  if (!t2.iterate()) return {LpStatus::Infeasible, 0.0, Vector()};
  if (t2.hasImprovingUnboundedColumn()) return {LpStatus::Unbounded, 0.0, Vector()};

  Vector y = Vector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    if (t2.basis[i] < int(n)) y[t2.basis[i]] = t2.T(i, n);
  LpResult res;
  res.status = LpStatus::Optimal;
  res.x = y.head(d) - y.segment(d, d);
  res.objective = c.dot(res.x);
  return res;
}

ChebyshevBall chebyshevBall(const HPolytope& P) {
  const Eigen::Index m = P.numFacets(), d = P.dim();
  Matrix A(m, d + 1);
  A.leftCols(d) = P.A;
  for (Eigen::Index i = 0; i < m; ++i) A(i, d) = P.A.row(i).norm();
  Vector c = Vector::Zero(d + 1);
  c[d] = 1.0;
  const LpResult r = solveLp(A, P.b, c);
  if (r.status == LpStatus::Unbounded)
    throw std::invalid_argument("chebyshevBall: polytope is unbounded");
  if (r.status == LpStatus::Infeasible)
    throw std::invalid_argument("chebyshevBall: polytope is empty");
  return {r.objective, r.x.head(d)};
}

bool isFeasible(const HPolytope& P) {
  const LpResult r = solveLp(P.A, P.b, Vector::Zero(P.dim()));
  return r.status != LpStatus::Infeasible;
}

bool isBounded(const HPolytope& P) {
  const Eigen::Index d = P.dim();
  for (Eigen::Index j = 0; j < d; ++j) {
    for (double sign : {1.0, -1.0}) {
      Vector c = Vector::Zero(d);
      c[j] = sign;
      const LpResult r = solveLp(P.A, P.b, c);
      if (r.status == LpStatus::Unbounded) return false;
      if (r.status == LpStatus::Infeasible) return true;  // empty set is bounded
    }
  }
  return true;
}

}  // namespace revolve
