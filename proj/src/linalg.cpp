#include "revolve/linalg.hpp"

namespace revolve {

Subspace Subspace::fromSpanningRows(Eigen::Index ambient_dim, const Matrix& rows) {
  if (rows.size() == 0) return Subspace::trivial(ambient_dim);
  requireDim(rows.cols(), ambient_dim, "Subspace::fromSpanningRows");
  Matrix basis(ambient_dim, rows.rows());
  Eigen::Index s = 0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    Vector v = rows.row(i).transpose();
    // Modified Gram-Schmidt with one re-orthogonalization pass.
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j < s; ++j) v -= basis.col(j).dot(v) * basis.col(j);
    const double n = v.norm();
    if (n > kTol.structure * (1.0 + rows.row(i).norm())) basis.col(s++) = v / n;
  }
  return Subspace(ambient_dim, basis.leftCols(s));
}

Subspace Subspace::complement() const {
  const Eigen::Index d = dim_, s = basis_.cols();
  if (s == 0) return Subspace::full(d);
  if (s == d) return Subspace::trivial(d);
  Eigen::HouseholderQR<Matrix> qr(basis_);
  Matrix Q = qr.householderQ() * Matrix::Identity(d, d);
  return Subspace(d, Q.rightCols(d - s));
}

Matrix regularSimplexDirections(Eigen::Index d) {
  // d+1 unit vectors with pairwise inner product -1/d, built inside the
  // hyperplane orthogonal to (1,...,1) in R^{d+1}.
  const Eigen::Index n = d + 1;
  Matrix ones(n, 1);
  ones.setOnes();
  Eigen::HouseholderQR<Matrix> qr(ones);
  Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix basis = Q.rightCols(d);  // orthonormal basis of the hyperplane
  Matrix out(d, n);
  const double scale = std::sqrt(double(n) / double(d));
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector u = -Vector::Ones(n) / double(n);
    u[i] += 1.0;
    out.col(i) = scale * (basis.transpose() * u);
  }
  return out;
}

}  // namespace revolve
