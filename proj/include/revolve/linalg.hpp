#pragma once

#include "revolve/types.hpp"

namespace revolve {

/// Orthogonal projection of x onto F.
inline Vector project(const Subspace& F, const Vector& x) {
  requireDim(x.size(), F.ambientDim(), "project");
  return F.basis() * (F.basis().transpose() * x);
}

/// Diadic product (p (x) v): the operator x -> <v, x> p, with matrix p v^T.
inline Matrix diadic(const Vector& p, const Vector& v) {
  requireDim(v.size(), p.size(), "diadic");
  return p * v.transpose();
}

/// Support function of an F-ellipsoid: h_E(p) = <p, z> + |A p|.
inline double supportEllipsoid(const FEllipsoid& E, const Vector& p) {
  requireDim(p.size(), E.dim(), "supportEllipsoid");
  const Vector a = E.axis.toCoords(p);
  const Vector p_perp = p - E.axis.fromCoords(a);
  double q = p_perp.squaredNorm() * E.mu * E.mu;
  if (E.axis.dim() > 0) q += (E.shape_on_f * a).squaredNorm();
  return p.dot(E.center) + std::sqrt(q);
}

/// Gauge (Minkowski functional) of the centered ellipsoid of E at x - center:
/// |A^{-1}(x - z)|. Values <= 1 mean x lies in E.
inline double gaugeEllipsoid(const FEllipsoid& E, const Vector& x) {
  requireDim(x.size(), E.dim(), "gaugeEllipsoid");
  const Vector r = x - E.center;
  const Vector a = E.axis.toCoords(r);
  const Vector r_perp = r - E.axis.fromCoords(a);
  double q = r_perp.squaredNorm() / (E.mu * E.mu);
  if (E.axis.dim() > 0) q += E.shape_on_f.ldlt().solve(a).squaredNorm();
  return std::sqrt(q);
}

/// Unit directions q_1..q_{d+1} of a regular simplex in R^d centered at the
/// origin: |q_i| = 1 and <q_i, q_j> = -1/d for i != j.
Matrix regularSimplexDirections(Eigen::Index d);

/// Packing of symmetric s x s matrices into vectors of length s(s+1)/2 and
/// helpers to accumulate full-matrix first/second derivatives in the packed
/// parametrization (off-diagonal entries are counted twice).
struct SymPack {
  Eigen::Index s = 0;

  Eigen::Index size() const { return s * (s + 1) / 2; }

  Vector pack(const Matrix& S) const {
    Vector v(size());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < s; ++j)
      for (Eigen::Index i = 0; i <= j; ++i) v[k++] = S(i, j);
    return v;
  }

  Matrix unpack(const Vector& v) const {
    Matrix S(s, s);
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < s; ++j)
      for (Eigen::Index i = 0; i <= j; ++i) {
        S(i, j) = v[k];
        S(j, i) = v[k];
        ++k;
      }
    return S;
  }

  /// Adds the packed gradient of f given its full-matrix gradient G,
  /// i.e. d f / d m_{ij} = G_ij + G_ji for i < j and G_ii on the diagonal.
  void addGradient(const Matrix& G, double scale, Eigen::Ref<Vector> out) const {
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < s; ++j)
      for (Eigen::Index i = 0; i <= j; ++i) {
        out[k] += scale * (i == j ? G(i, i) : G(i, j) + G(j, i));
        ++k;
      }
  }
};

}  // namespace revolve
