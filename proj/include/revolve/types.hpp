#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace revolve {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default numeric tolerances used across the library. Feasibility-type
/// checks use `feas`, exact-structure checks (orthonormality, symmetry)
/// use `structure`, and reported equalities use `report`.
struct Tolerances {
  double feas = 1e-9;
  double structure = 1e-12;
  double report = 1e-8;
};

inline constexpr Tolerances kTol{};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void requireDim(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want)
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(got) + " vs " + std::to_string(want) + ")");
}

/// A linear subspace of R^d, stored as a d x s matrix whose columns form an
/// orthonormal basis. s may be zero (the trivial subspace).
class Subspace {
 public:
  Subspace() : dim_(0), basis_(0, 0) {}

  Subspace(Eigen::Index ambient_dim, Matrix orthonormal_basis)
      : dim_(ambient_dim), basis_(std::move(orthonormal_basis)) {
    if (basis_.size() == 0) basis_.resize(dim_, 0);
    if (basis_.rows() != dim_)
      throw DimensionError("Subspace: basis rows must equal ambient dimension");
    const Matrix gram = basis_.transpose() * basis_;
    if (!gram.isIdentity(kTol.structure * 10))
      throw std::invalid_argument("Subspace: basis is not orthonormal");
  }

  static Subspace trivial(Eigen::Index ambient_dim) {
    return Subspace(ambient_dim, Matrix(ambient_dim, 0));
  }
  static Subspace full(Eigen::Index ambient_dim) {
    return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim));
  }
  static Subspace span(const Vector& v) {
    const double n = v.norm();
    if (n <= 0) throw std::invalid_argument("Subspace::span: zero vector");
    return Subspace(v.size(), v / n);
  }
  /// Builds a subspace from (possibly non-orthonormal) spanning rows by
  /// modified Gram-Schmidt; near-dependent rows are dropped.
  static Subspace fromSpanningRows(Eigen::Index ambient_dim, const Matrix& rows);

  Eigen::Index ambientDim() const { return dim_; }
  Eigen::Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  Matrix projector() const { return basis_ * basis_.transpose(); }
  Vector toCoords(const Vector& x) const { return basis_.transpose() * x; }
  Vector fromCoords(const Vector& y) const { return basis_ * y; }

  /// Orthogonal complement, with basis taken from a full QR of `basis_`.
  Subspace complement() const;

 private:
  Eigen::Index dim_;
  Matrix basis_;  // d x s, orthonormal columns
};

/// Convex body given as an intersection of half-spaces <a_i, x> <= b_i.
/// Rows of A are the (not necessarily unit) outer normals.
struct HPolytope {
  Matrix A;  // m x d
  Vector b;  // m

  Eigen::Index dim() const { return A.cols(); }
  Eigen::Index numFacets() const { return A.rows(); }

  bool contains(const Vector& x, double tol = kTol.feas) const {
    return ((A * x - b).array() <= tol).all();
  }

  HPolytope translated(const Vector& w) const { return {A, b + A * w}; }
  HPolytope scaled(double c) const { return {A, b * c}; }
};

/// Convex body given as the convex hull of points; vertices are columns.
struct VPolytope {
  Matrix V;  // d x n

  Eigen::Index dim() const { return V.rows(); }
  Eigen::Index numVertices() const { return V.cols(); }

  Vector centroid() const { return V.rowwise().mean(); }
  VPolytope translated(const Vector& w) const {
    return {V.colwise() + w};
  }
};

/// Ellipsoid of revolution with axis F: the image A * B^d + center where A
/// acts as `shape_on_f` on F and as mu * Id on the orthogonal complement.
struct FEllipsoid {
  Subspace axis;
  Vector center;
  Matrix shape_on_f;  // s x s symmetric positive definite
  double mu = 1.0;    // radius multiplier on the complement of the axis

  Eigen::Index dim() const { return axis.ambientDim(); }

  /// Full d x d symmetric operator B M1 B^T + mu (I - B B^T).
  Matrix fullOperator() const {
    const Matrix& B = axis.basis();
    const Eigen::Index d = axis.ambientDim();
    Matrix P = B * B.transpose();
    return B * shape_on_f * B.transpose() + mu * (Matrix::Identity(d, d) - P);
  }

  double logVolumeFactor() const {
    double v = std::log(mu) * double(axis.ambientDim() - axis.dim());
    if (axis.dim() > 0)
      v += std::log(shape_on_f.determinant());
    return v;
  }
};

/// Contact pair (v, p): common boundary point and outer normal of a shared
/// supporting hyperplane, normalized so that <p, v> = 1.
struct ContactPair {
  Vector v;
  Vector p;
};

/// Affine position x -> A x + z with A a positive definite F-operator,
/// stored in the same split form as FEllipsoid.
struct GeneralPosition {
  Subspace axis;
  Matrix linear_on_f;  // s x s symmetric positive definite
  double mu = 1.0;
  Vector translation;

  Matrix fullOperator() const {
    const Matrix& B = axis.basis();
    const Eigen::Index d = axis.ambientDim();
    Matrix P = B * B.transpose();
    return B * linear_on_f * B.transpose() + mu * (Matrix::Identity(d, d) - P);
  }

  Vector apply(const Vector& x) const { return fullOperator() * x + translation; }

  double logVolumeFactor() const {
    double v = std::log(mu) * double(axis.ambientDim() - axis.dim());
    if (axis.dim() > 0)
      v += std::log(linear_on_f.determinant());
    return v;
  }
};

struct SolveConfig {
  double tol_feas = 1e-9;
  double tol_opt = 1e-8;
  int max_iter = 200;       // Newton iteration cap per centering stage
  double barrier_mu = 5.0;  // path-following multiplier
  unsigned init_seed = 0;   // 0: deterministic default start; else jittered
  double sweep_coarse_deg_2d = 1.0;
  double sweep_coarse_deg_3d = 5.0;
  double sweep_refine_rad_2d = 1e-7;
  double sweep_refine_rad_3d = 1e-4;
};

enum class SolveStatus { Optimal, MaxIterations, Infeasible };

struct SolveDiagnostics {
  SolveStatus status = SolveStatus::Optimal;
  int newton_iterations = 0;
  double barrier_gap = 0.0;     // m / t at the end of the path
  double kkt_residual = 0.0;    // after the active-set polish
  double wall_time_ms = 0.0;
  std::string message;
};

}  // namespace revolve
