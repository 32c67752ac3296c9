#include "revolve/bounds.hpp"

#include "revolve/bodies.hpp"
#include "revolve/linalg.hpp"

#include <cmath>

namespace revolve {

double volumeUnitBall(Eigen::Index s) {
  return std::pow(M_PI, double(s) / 2.0) / std::tgamma(double(s) / 2.0 + 1.0);
}

double volumeSimplexCircumscribed(Eigen::Index s) {
  // Regular s-simplex with inradius 1.
  return std::pow(double(s), double(s) / 2.0) *
         std::pow(double(s + 1), double(s + 1) / 2.0) / std::tgamma(double(s) + 1.0);
}

double volumeSimplexInscribed(Eigen::Index s) {
  // Regular s-simplex with circumradius 1 (the circumscribed one shrunk by s).
  return volumeSimplexCircumscribed(s) / std::pow(double(s), double(s));
}

double volumeCube(Eigen::Index s) { return std::pow(2.0, double(s)); }

double volumeCrossPolytope(Eigen::Index s) {
  return std::pow(2.0, double(s)) / std::tgamma(double(s) + 1.0);
}

BoundReport checkInradiusBound(const HPolytope& K, const FEllipsoid& E,
                               bool symmetric) {
  const Eigen::Index d = K.dim(), s = E.axis.dim();
  if (s >= d)
    throw std::invalid_argument("checkInradiusBound: needs dim F < d");
  const HPolytope sec = section(K.translated(-E.center), E.axis.complement());
  const double inr = chebyshevBall(sec).radius;
  const double factor = symmetric ? std::sqrt(double(d) / double(d - s))
                                  : double(d) / double(d - s);
  return {symmetric ? "inradius_bound_sym" : "inradius_bound", inr,
          factor * E.mu};
}

BoundReport checkVolumeBound(const HPolytope& K, const FEllipsoid& E,
                             bool symmetric) {
  const Eigen::Index d = K.dim(), s = E.axis.dim();
  if (s < 1 || s > 3)
    throw std::invalid_argument("checkVolumeBound: needs 1 <= dim F <= 3");
  const HPolytope sec = section(K.translated(-E.center), E.axis);
  const double volK = volume(sec);
  const double volE = volumeUnitBall(s) * E.shape_on_f.determinant();
  const double lhs = std::pow(volK / volE, 1.0 / double(s));
  double rhs;
  if (symmetric) {
    rhs = std::sqrt(double(d) / double(s)) *
          std::pow(volumeCube(s) / volumeUnitBall(s), 1.0 / double(s));
  } else {
    const double c =
        std::pow(double(s + 1),
                 -double(d - s) / double(2 * s * (d + 1))) *
        std::sqrt(double(d) * double(d + 1) / (double(s) * double(s + 1)));
    rhs = c * std::pow(volumeSimplexCircumscribed(s) / volumeUnitBall(s),
                       1.0 / double(s));
  }
  return {symmetric ? "volume_bound_sym" : "volume_bound", lhs, rhs};
}

InclusionReport checkInclusion(const HPolytope& K, const FEllipsoid& E,
                               bool symmetric) {
  const Eigen::Index d = K.dim(), s = E.axis.dim();
  if (s < 1 || s > 3)
    throw std::invalid_argument("checkInclusion: needs 1 <= dim F <= 3");
  const HPolytope sec = section(K.translated(-E.center), E.axis);

  InclusionReport out;
  // E cap F inside K cap F: support comparison per facet of the section.
  out.inner_inclusion = true;
  for (Eigen::Index i = 0; i < sec.numFacets(); ++i) {
    const Vector a = sec.A.row(i).transpose();
    if ((E.shape_on_f * a).norm() > sec.b[i] + 1e-9 * (1.0 + std::abs(sec.b[i])))
      out.inner_inclusion = false;
  }
  // Smallest dilation of E cap F containing K cap F: the vertex gauge max.
  const Matrix W = enumerateVertices(sec);
  double lam = 0.0;
  for (Eigen::Index j = 0; j < W.cols(); ++j)
    lam = std::max(lam, E.shape_on_f.ldlt().solve(W.col(j)).norm());
  out.lambda_star = lam;
  out.dilation = {symmetric ? "inclusion_sym" : "inclusion", lam,
                  symmetric ? std::sqrt(double(d)) : double(d)};
  return out;
}

std::vector<BoundReport> checkLownerProperties(const VPolytope& K,
                                               const Subspace& F) {
  const Eigen::Index d = K.dim(), s = F.dim();
  std::vector<BoundReport> out;

  double maxNorm = 0.0;
  for (Eigen::Index k = 0; k < K.numVertices(); ++k)
    maxNorm = std::max(maxNorm, K.V.col(k).norm());
  out.push_back({"containment_in_ball", maxNorm, 1.0});

  bool symmetric = true;
  for (Eigen::Index k = 0; k < K.numVertices() && symmetric; ++k) {
    bool found = false;
    for (Eigen::Index j = 0; j < K.numVertices(); ++j)
      if ((K.V.col(k) + K.V.col(j)).norm() < 1e-9) {
        found = true;
        break;
      }
    symmetric = found;
  }

  if (s >= 1) {
    Matrix proj(s, K.numVertices());
    for (Eigen::Index k = 0; k < K.numVertices(); ++k)
      proj.col(k) = F.toCoords(K.V.col(k));
    if (s <= 3) {
      const double volP = volumeV(VPolytope{proj});
      const double lhsBound = std::sqrt(double(s) / double(d));
      out.push_back({"outer_volume_ratio",
                     lhsBound,
                     std::pow(volP / volumeSimplexInscribed(s), 1.0 / double(s))});
      if (symmetric)
        out.push_back({"outer_volume_ratio_sym",
                       lhsBound,
                       std::pow(volP / volumeCrossPolytope(s), 1.0 / double(s))});
    }
    double maxProj = 0.0;
    for (Eigen::Index k = 0; k < proj.cols(); ++k)
      maxProj = std::max(maxProj, proj.col(k).norm());
    out.push_back({"projection_in_ball", maxProj, 1.0});
    if (s <= 3) {
      const HPolytope hull = vpolyToHpoly(VPolytope{proj});
      double minOffset = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < hull.numFacets(); ++i)
        minOffset = std::min(minOffset, hull.b[i] / hull.A.row(i).norm());
      out.push_back({"ball_in_dilated_projection", 1.0, double(d) * minOffset});
      if (symmetric)
        out.push_back({"ball_in_dilated_projection_sym", 1.0,
                       std::sqrt(double(d)) * minOffset});
    }
  }
  if (s < d) {
    const Subspace G = F.complement();
    Matrix proj(d - s, K.numVertices());
    for (Eigen::Index k = 0; k < K.numVertices(); ++k)
      proj.col(k) = G.toCoords(K.V.col(k));
    const double rad = minimalEnclosingBall(proj).radius;
    out.push_back({"complement_circumradius",
                   std::sqrt(double(d - s) / double(d)), rad});
  }
  return out;
}

namespace {

void requireMoments(const Matrix& vs, const Vector& beta, double theta,
                    bool unit_ball) {
  requireDim(beta.size(), vs.cols(), "moment weights");
  if ((beta.array() <= 0).any())
    throw std::invalid_argument("moment primitive: weights must be positive");
  if (std::abs(beta.sum() - 1.0) > 1e-10)
    throw std::invalid_argument("moment primitive: weights must sum to 1");
  Vector mean = Vector::Zero(vs.rows());
  double m2 = 0.0;
  for (Eigen::Index i = 0; i < vs.cols(); ++i) {
    mean += beta[i] * vs.col(i);
    m2 += beta[i] * vs.col(i).squaredNorm();
    if (unit_ball && vs.col(i).norm() > 1.0 + 1e-10)
      throw std::invalid_argument("moment primitive: vector outside unit ball");
  }
  if (mean.norm() > 1e-10)
    throw std::invalid_argument("moment primitive: weighted mean is not zero");
  if (std::abs(m2 - theta) > 1e-10)
    throw std::invalid_argument("moment primitive: second moment mismatch");
}

}  // namespace

BoundReport lemmaInradiusPrimitive(const Matrix& vs, const Vector& beta,
                                   double theta) {
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("lemmaInradiusPrimitive: theta must be in (0,1]");
  requireMoments(vs, beta, theta, true);
  const HPolytope polar{vs.transpose(), Vector::Ones(vs.cols())};
  const double inr = chebyshevBall(polar).radius;
  return {"polar_inradius", inr, 1.0 / theta};
}

BoundReport lemmaCircumradiusPrimitive(const Matrix& vs, const Vector& beta,
                                       double theta) {
  if (!(theta > 0.0))
    throw std::invalid_argument("lemmaCircumradiusPrimitive: theta must be positive");
  requireMoments(vs, beta, theta, false);
  const double rad = minimalEnclosingBall(vs).radius;
  return {"hull_circumradius", std::sqrt(theta), rad};
}

namespace {

// Intersection of the line z + t u with an H-polytope, as a t-interval.
std::pair<double, double> lineInterval(const HPolytope& P, const Vector& z,
                                       const Vector& u) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < P.numFacets(); ++i) {
    const double num = P.b[i] - P.A.row(i).dot(z);
    const double den = P.A.row(i).dot(u);
    if (std::abs(den) < 1e-13) {
      if (num < -1e-12) return {1.0, -1.0};  // line misses the body
      continue;
    }
    if (den > 0) hi = std::min(hi, num / den);
    else lo = std::max(lo, num / den);
  }
  return {lo, hi};
}

}  // namespace

BoundReport checkRightConeAxisContainment(const VPolytope& K,
                                          const Vector& axis_direction,
                                          const VPolytope& solution_triangle,
                                          const Vector& z) {
  requireDim(K.dim(), 2, "checkRightConeAxisContainment");
  const Vector u = axis_direction.normalized();
  const HPolytope HK = vpolyToHpoly(K);
  const HPolytope HT = vpolyToHpoly(solution_triangle);
  const auto [loK, hiK] = lineInterval(HK, z, u);
  const auto [loT, hiT] = lineInterval(HT, z, u);
  if (!(loT < 0.0 && hiT > 0.0))
    throw std::invalid_argument(
        "checkRightConeAxisContainment: z is not interior to the axis section");
  // Reflected dilation: need [loK, hiK] inside -lambda [loT, hiT].
  const double lam = std::max(-loK / hiT, hiK / (-loT));
  return {"axis_containment_factor", lam, 2.0};
}

BadEllipsoidReport badEllipsoidInstance(Eigen::Index d, Eigen::Index s,
                                        double lambda, const SolveConfig& cfg) {
  if (!(s >= 0 && s <= d - 2))
    throw std::invalid_argument("badEllipsoidInstance: needs 0 <= s <= d - 2");
  if (d > 3)
    throw std::invalid_argument("badEllipsoidInstance: d <= 3 (axis sweep)");
  if (lambda < 1.0)
    throw std::invalid_argument("badEllipsoidInstance: lambda >= 1");

  Vector semi(d);
  for (Eigen::Index i = 0; i < d; ++i) semi[i] = std::pow(lambda, double(i + 1));

  HPolytope L;
  if (d == 3) {
    L = ellipsoidInnerApprox3D(semi, 14, 28);
  } else {
    const int k = 256;
    L = ellipseApprox2D(semi[0], semi[1], k);
    L.b *= std::cos(M_PI / k);  // pull the tangents in: certified inside
  }

  SolveConfig sweep = cfg;
  sweep.sweep_coarse_deg_3d = std::max(cfg.sweep_coarse_deg_3d, 15.0);
  const auto sol = solveEllipsoidAnyAxis(L, s, sweep);

  BadEllipsoidReport rep;
  rep.solution = sol.value;
  double logBig = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) logBig += std::log(semi[i]);
  rep.ratio = std::exp(sol.value.logVolumeFactor() - logBig);
  rep.volume_ratio = {"volume_ratio", rep.ratio, 1.0 / lambda};

  // Section of the exact big ellipsoid by the complement of the found axis.
  const Subspace G = sol.value.axis.complement();
  const Matrix B = G.basis();
  Matrix Q = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) Q(i, i) = 1.0 / (semi[i] * semi[i]);
  const Matrix Qs = B.transpose() * Q * B;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(Qs);
  const double sigma_max = 1.0 / std::sqrt(eig.eigenvalues()[0]);
  const Vector dir = B * eig.eigenvectors().col(0);
  rep.section_witness = {"witness_diameter", lambda * sol.value.mu, sigma_max};
  rep.witness_points.resize(d, 2);
  rep.witness_points.col(0) = sigma_max * dir;
  rep.witness_points.col(1) = -sigma_max * dir;
  return rep;
}

}  // namespace revolve
