#include "revolve/certificates.hpp"

#include "revolve/linalg.hpp"
#include "revolve/nnls.hpp"

#include <algorithm>
#include <cmath>

namespace revolve {
namespace {

double angleBetween(const Vector& a, const Vector& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0 || nb == 0) return 0.0;
  return std::acos(std::clamp(a.dot(b) / (na * nb), -1.0, 1.0));
}

std::vector<ContactPair> mergeClosePairs(std::vector<ContactPair> pairs,
                                         double merge_angle) {
  if (merge_angle <= 0) return pairs;
  std::vector<ContactPair> out;
  std::vector<int> count;
  for (const ContactPair& cp : pairs) {
    bool merged = false;
    for (size_t j = 0; j < out.size(); ++j) {
      if (angleBetween(out[j].v, cp.v) < merge_angle &&
          angleBetween(out[j].p, cp.p) < merge_angle) {
        const double w = double(count[j]);
        out[j].v = (w * out[j].v + cp.v) / (w + 1.0);
        out[j].p = (w * out[j].p + cp.p) / (w + 1.0);
        ++count[j];
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.push_back(cp);
      count.push_back(1);
    }
  }
  for (ContactPair& cp : out) {
    const double ip = cp.p.dot(cp.v);
    if (ip > 0) cp.p /= ip;  // restore the <p, v> = 1 normalization
  }
  return out;
}

Matrix certificateRows(const std::vector<ContactPair>& pairs, const Subspace& F,
                       Eigen::Index d, bool with_symmetry, bool with_pfv,
                       Vector* rhs_out) {
  const Eigen::Index s = F.dim();
  const Eigen::Index m = Eigen::Index(pairs.size());
  const Eigen::Index rows = s * s + d + 1 + (with_symmetry ? d * (d - 1) / 2 : 0) +
                            (with_pfv ? s : 0);
  Matrix C(rows, m);
  Vector e = Vector::Zero(rows);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vector a = F.toCoords(pairs[size_t(i)].p);
    const Vector eta = F.toCoords(pairs[size_t(i)].v);
    Eigen::Index r = 0;
    for (Eigen::Index row = 0; row < s; ++row)
      for (Eigen::Index col = 0; col < s; ++col) C(r++, i) = a[row] * eta[col];
    for (Eigen::Index k = 0; k < d; ++k) C(r++, i) = pairs[size_t(i)].p[k];
    C(r++, i) = 1.0;
    if (with_symmetry) {
      const Vector& p = pairs[size_t(i)].p;
      const Vector& v = pairs[size_t(i)].v;
      for (Eigen::Index row = 0; row < d; ++row)
        for (Eigen::Index col = row + 1; col < d; ++col)
          C(r++, i) = p[row] * v[col] - p[col] * v[row];
    }
    if (with_pfv)
      for (Eigen::Index k = 0; k < s; ++k) C(r++, i) = eta[k];
  }
  {
    Eigen::Index r = 0;
    for (Eigen::Index row = 0; row < s; ++row)
      for (Eigen::Index col = 0; col < s; ++col) e[r++] = row == col ? 1.0 : 0.0;
    r += d;
    e[r] = double(d);
  }
  if (rhs_out) *rhs_out = e;
  return C;
}

void computeResiduals(JohnCertificate& cert, const Subspace& F, Eigen::Index d,
                      bool with_symmetry) {
  const Eigen::Index s = F.dim();
  Matrix MF = Matrix::Zero(s, s);
  Vector psum = Vector::Zero(d);
  double asum = 0.0;
  Matrix skew = Matrix::Zero(d, d);
  for (size_t i = 0; i < cert.pairs.size(); ++i) {
    const double a = cert.weights[Eigen::Index(i)];
    const Vector pf = F.toCoords(cert.pairs[i].p);
    const Vector vf = F.toCoords(cert.pairs[i].v);
    MF += a * pf * vf.transpose();
    psum += a * cert.pairs[i].p;
    asum += a;
    if (with_symmetry) {
      const Matrix pv = cert.pairs[i].p * cert.pairs[i].v.transpose();
      skew += a * (pv - pv.transpose());
    }
  }
  const Matrix R = MF - Matrix::Identity(s, s);
  cert.residual_decomposition =
      s > 0 ? Eigen::JacobiSVD<Matrix>(R).singularValues()[0] : 0.0;
  cert.residual_zerosum = psum.norm();
  cert.residual_trace = std::abs(asum - double(d));
  if (with_symmetry)
    cert.residual_symmetry = Eigen::JacobiSVD<Matrix>(skew).singularValues()[0];
}

}  // namespace

std::vector<ContactPair> extractContactPairs(const FEllipsoid& E,
                                             const HPolytope& L, double tol,
                                             double merge_angle) {
  const Matrix A = E.fullOperator();
  std::vector<ContactPair> pairs;
  for (Eigen::Index i = 0; i < L.numFacets(); ++i) {
    const Vector p = L.A.row(i).transpose();
    const double slack = L.b[i] - supportEllipsoid(E, p);
    if (slack > tol * (1.0 + std::abs(L.b[i]))) continue;
    const Vector Ap = A * p;
    const double nAp = Ap.norm();
    if (nAp <= 0) continue;
    ContactPair cp;
    cp.v = A * Ap / nAp;  // touching point relative to the center
    cp.p = p / p.dot(cp.v);
    pairs.push_back(std::move(cp));
  }
  if (pairs.empty())
    throw CertificateNotFound(
        "extractContactPairs: no touching facets (ellipsoid strictly interior)");
  return mergeClosePairs(std::move(pairs), merge_angle);
}

std::vector<ContactPair> extractContactPairsPolytope(const Matrix& image,
                                                     const HPolytope& L,
                                                     const Vector& origin,
                                                     double tol) {
  std::vector<ContactPair> pairs;
  for (Eigen::Index k = 0; k < image.cols(); ++k) {
    const Vector w = image.col(k);
    for (Eigen::Index j = 0; j < L.numFacets(); ++j) {
      const Vector p = L.A.row(j).transpose();
      const double slack = L.b[j] - p.dot(w);
      if (slack > tol * (1.0 + std::abs(L.b[j]))) continue;
      const double denom = p.dot(w - origin);
      if (denom <= 0) continue;
      pairs.push_back({w - origin, p / denom});
    }
  }
  if (pairs.empty())
    throw CertificateNotFound(
        "extractContactPairsPolytope: no vertex touches the boundary");
  return pairs;
}

std::vector<Vector> contactUnitVectors(const FEllipsoid& E,
                                       const std::vector<ContactPair>& pairs) {
  const Matrix Ainv = E.fullOperator().inverse();
  std::vector<Vector> us;
  us.reserve(pairs.size());
  for (const ContactPair& cp : pairs) us.push_back(Ainv * cp.v);
  return us;
}

JohnCertificate fitJohnWeights(const std::vector<ContactPair>& pairs,
                               const Subspace& F, Eigen::Index d,
                               bool require_symmetry, double tol) {
  if (pairs.empty())
    throw CertificateNotFound("fitJohnWeights: no contact pairs");

  const auto fit = [&](const std::vector<ContactPair>& ps) {
    Vector rhs;
    const Matrix C = certificateRows(ps, F, d, require_symmetry, false, &rhs);
    JohnCertificate cert;
    cert.pairs = ps;
    cert.weights = nnls(C, rhs);
    computeResiduals(cert, F, d, require_symmetry);
    return cert;
  };

  JohnCertificate cert = fit(pairs);
  if (!cert.valid(tol))
    throw CertificateNotFound("fitJohnWeights: no certificate at tolerance " +
                              std::to_string(cert.worstResidual()));

  // Drop zero weights, then prune smallest weights while validity holds
  // (the count bound 2 d^2 + d + 1 is implied by the NNLS support size).
  const auto compact = [&](const JohnCertificate& c, double drop) {
    std::vector<ContactPair> kept;
    for (size_t i = 0; i < c.pairs.size(); ++i)
      if (c.weights[Eigen::Index(i)] > drop) kept.push_back(c.pairs[i]);
    return kept;
  };
  for (int round = 0; round < 4; ++round) {
    const double drop = 1e-12 * std::max(1.0, cert.weights.maxCoeff());
    if ((cert.weights.array() > drop).all()) break;
    cert = fit(compact(cert, drop));
  }
  while (cert.pairs.size() > 1) {
    Eigen::Index smallest = 0;
    cert.weights.minCoeff(&smallest);
    std::vector<ContactPair> reduced = cert.pairs;
    reduced.erase(reduced.begin() + long(smallest));
    JohnCertificate attempt;
    try {
      attempt = fit(reduced);
    } catch (const CertificateNotFound&) {
      break;
    }
    if (!attempt.valid(tol) || (attempt.weights.array() <= 0).any()) break;
    cert = attempt;
  }
  return cert;
}

std::vector<CertificateCheck> verifyCertificate(const JohnCertificate& cert,
                                                const Subspace& F,
                                                Eigen::Index d,
                                                bool with_symmetry, double tol) {
  JohnCertificate fresh = cert;
  computeResiduals(fresh, F, d, with_symmetry || cert.residual_symmetry.has_value());
  std::vector<CertificateCheck> out;
  out.push_back({"decomposition", fresh.residual_decomposition,
                 fresh.residual_decomposition <= tol});
  out.push_back({"zerosum", fresh.residual_zerosum, fresh.residual_zerosum <= tol});
  out.push_back({"trace", fresh.residual_trace, fresh.residual_trace <= tol});
  if (fresh.residual_symmetry)
    out.push_back({"symmetry", *fresh.residual_symmetry,
                   *fresh.residual_symmetry <= tol});
  double worst = 0.0;
  for (const ContactPair& cp : cert.pairs)
    worst = std::max(worst, std::abs(cp.p.dot(cp.v) - 1.0));
  out.push_back({"pair_normalization", worst, worst <= 1e-10});
  return out;
}

USpaceIdentities uSpaceIdentities(const std::vector<Vector>& us,
                                  const Vector& weights, const Subspace& F) {
  const Eigen::Index s = F.dim();
  const Eigen::Index d = F.ambientDim();
  Matrix M = Matrix::Zero(s, s);
  Vector sum = Vector::Zero(s);
  double on_f = 0.0, off_f = 0.0;
  for (size_t i = 0; i < us.size(); ++i) {
    const double a = weights[Eigen::Index(i)];
    const Vector uf = F.toCoords(us[i]);
    M += a * uf * uf.transpose();
    sum += a * uf;
    on_f += a * uf.squaredNorm();
    off_f += a * (us[i].squaredNorm() - uf.squaredNorm());
  }
  USpaceIdentities out;
  out.resid_projector =
      s > 0 ? Eigen::JacobiSVD<Matrix>(M - Matrix::Identity(s, s)).singularValues()[0]
            : 0.0;
  out.resid_zerosum = sum.norm();
  out.resid_mass_on_f = std::abs(on_f - double(s));
  out.resid_mass_off_f = std::abs(off_f - double(d - s));
  return out;
}

GoodCenter goodCenter(const std::vector<ContactPair>& pairs,
                      const Vector& weights, const Subspace& F,
                      Eigen::Index d) {
  GoodCenter out;
  Vector vsum = Vector::Zero(d);
  for (size_t i = 0; i < pairs.size(); ++i)
    vsum += weights[Eigen::Index(i)] * pairs[i].v;
  out.z = project(F, vsum) / double(d + 1);

  Vector c(Eigen::Index(pairs.size()));
  for (size_t i = 0; i < pairs.size(); ++i) {
    const double f = 1.0 - out.z.dot(pairs[i].p);
    if (f <= 0) {
      out.message = "good center violates 1 - <z, p_i> > 0";
      return out;
    }
    c[Eigen::Index(i)] = weights[Eigen::Index(i)] * f;
    out.transformed.push_back({pairs[i].v - out.z, pairs[i].p / f});
  }
  out.c = c;
  Vector psum = Vector::Zero(d), vfsum = Vector::Zero(d);
  for (size_t i = 0; i < pairs.size(); ++i) {
    psum += c[Eigen::Index(i)] * out.transformed[i].p;
    vfsum += c[Eigen::Index(i)] * project(F, out.transformed[i].v);
  }
  out.resid_zerosum_p = psum.norm();
  out.resid_zerosum_pfv = vfsum.norm();
  out.ok = true;
  return out;
}

ContactPolytopes contactPolytopes(const std::vector<ContactPair>& pairs,
                                  const Subspace& F, Eigen::Index d) {
  ContactPolytopes out;
  const Eigen::Index m = Eigen::Index(pairs.size());
  Matrix V(d, m), P(m, d);
  for (Eigen::Index i = 0; i < m; ++i) {
    V.col(i) = pairs[size_t(i)].v;
    P.row(i) = pairs[size_t(i)].p.transpose();
  }
  out.inner = VPolytope{V};
  out.outer = HPolytope{P, Vector::Ones(m)};

  const Eigen::Index s = F.dim();
  if (s == 0 || s > 3) {
    out.message = "inclusion check needs 1 <= dim F <= 3";
    return out;
  }
  // Weights for the extended system including sum a_i P_F v_i = 0.
  Vector rhs;
  const Matrix C = certificateRows(pairs, F, d, false, true, &rhs);
  const Vector alpha = nnls(C, rhs);
  if ((C * alpha - rhs).norm() > 1e-6) {
    out.message = "no weights satisfy the extended zero-sum system";
    return out;
  }
  HPolytope sec = section(out.outer, F);
  if (!isBounded(sec)) {
    out.message = "outer contact polytope section unbounded";
    return out;
  }
  const Matrix secV = enumerateVertices(sec);
  // -d * P_F(inner) in F-coordinates.
  Matrix proj(s, m);
  for (Eigen::Index i = 0; i < m; ++i)
    proj.col(i) = -double(d) * F.toCoords(pairs[size_t(i)].v);
  const HPolytope hull = vpolyToHpoly(VPolytope{proj});
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < secV.cols(); ++j)
    for (Eigen::Index i = 0; i < hull.numFacets(); ++i)
      margin = std::min(margin, (hull.b[i] - hull.A.row(i).dot(secV.col(j))) /
                                    hull.A.row(i).norm());
  out.inclusion_checked = true;
  out.inclusion_margin = margin;
  return out;
}

JohnCertificate lownerCertificate(const VPolytope& K, const Subspace& F,
                                  Eigen::Index d, double tol) {
  std::vector<ContactPair> pairs;
  for (Eigen::Index k = 0; k < K.numVertices(); ++k) {
    const double n = K.V.col(k).norm();
    if (n > 1.0 + 1e-9)
      throw std::invalid_argument("lownerCertificate: vertex outside the ball");
    if (n < 1.0 - tol) continue;
    const Vector u = K.V.col(k) / n;
    pairs.push_back({u, u});
  }
  if (pairs.empty())
    throw CertificateNotFound(
        "lownerCertificate: no vertex on the unit sphere");
  return fitJohnWeights(pairs, F, d, false);
}

}  // namespace revolve
