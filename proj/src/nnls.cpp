#include "revolve/nnls.hpp"

#include <cmath>
#include <vector>

namespace revolve {

Vector nnls(const Matrix& A, const Vector& b, int max_iter) {
  const Eigen::Index n = A.cols();
  if (max_iter <= 0) max_iter = int(3 * n) + 30;
  Vector x = Vector::Zero(n);
  std::vector<bool> passive(size_t(n), false);
  const double tol = 1e-12 * (1.0 + A.cwiseAbs().maxCoeff()) * (1.0 + b.norm());

  const auto solvePassive = [&](Vector& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < n; ++i)
      if (passive[size_t(i)]) idx.push_back(i);
    z.setZero(n);
    if (idx.empty()) return;
    Matrix Ap(A.rows(), Eigen::Index(idx.size()));
    for (size_t k = 0; k < idx.size(); ++k) Ap.col(Eigen::Index(k)) = A.col(idx[k]);
    const Vector zp = Ap.colPivHouseholderQr().solve(b);
    for (size_t k = 0; k < idx.size(); ++k) z[idx[k]] = zp[Eigen::Index(k)];
  };

  for (int outer = 0; outer < max_iter; ++outer) {
    const Vector w = A.transpose() * (b - A * x);
    Eigen::Index enter = -1;
    double best = tol;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!passive[size_t(i)] && w[i] > best) {
        best = w[i];
        enter = i;
      }
    if (enter < 0) break;
    passive[size_t(enter)] = true;

    Vector z(n);
    solvePassive(z);
    int guard = 0;
    while (guard++ < max_iter) {
      bool all_pos = true;
      for (Eigen::Index i = 0; i < n; ++i)
        if (passive[size_t(i)] && z[i] <= 0) {
          all_pos = false;
          break;
        }
      if (all_pos) break;
      double alpha = 1.0;
      for (Eigen::Index i = 0; i < n; ++i)
        if (passive[size_t(i)] && z[i] <= 0)
          alpha = std::min(alpha, x[i] / (x[i] - z[i]));
      x += alpha * (z - x);
      for (Eigen::Index i = 0; i < n; ++i)
        if (passive[size_t(i)] && x[i] <= 1e-14) passive[size_t(i)] = false;
      solvePassive(z);
    }
    x = z;
  }
  return x;
}

}  // namespace revolve
