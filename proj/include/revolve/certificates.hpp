#pragma once

#include "revolve/polytope.hpp"
#include "revolve/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace revolve {

/// First-order optimality certificate: contact pairs, positive weights, and
/// the residuals of the decomposition / zero-sum / trace equations (plus the
/// symmetry equation when the rotated-axis condition is requested).
struct JohnCertificate {
  std::vector<ContactPair> pairs;
  Vector weights;
  double residual_decomposition = 0.0;  // |P_F (sum a_i p_i (x) v_i) P_F - P_F|_op
  double residual_zerosum = 0.0;        // |sum a_i p_i|
  double residual_trace = 0.0;          // |sum a_i - d|
  std::optional<double> residual_symmetry;

  double worstResidual() const {
    double r = std::max({residual_decomposition, residual_zerosum, residual_trace});
    if (residual_symmetry) r = std::max(r, *residual_symmetry);
    return r;
  }
  bool valid(double tol = 1e-6) const { return worstResidual() <= tol; }
};

class CertificateNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contact pairs of an F-ellipsoid inside L, in the frame centered at the
/// ellipsoid center: v = A^2 p / |A p| on the touching facets, p scaled so
/// that <p, v> = 1. Facet i is a contact when its support slack is at most
/// tol * (1 + |b_i|). Near-duplicate pairs (angular distance below
/// merge_angle) are merged, which polyhedral approximations of smooth
/// bodies need.
std::vector<ContactPair> extractContactPairs(const FEllipsoid& E,
                                             const HPolytope& L,
                                             double tol = 1e-7,
                                             double merge_angle = 1e-3);

/// Contact pairs of a polytope position (columns of `image`) inside L,
/// in the frame centered at `origin` (an interior point of the position).
/// A vertex on a lower-dimensional face of L yields one pair per touching
/// facet.
std::vector<ContactPair> extractContactPairsPolytope(const Matrix& image,
                                                     const HPolytope& L,
                                                     const Vector& origin,
                                                     double tol = 1e-7);

/// Unit-sphere preimages u_i = A^{-1} v_i of the contact points of an
/// F-ellipsoid certificate.
std::vector<Vector> contactUnitVectors(const FEllipsoid& E,
                                       const std::vector<ContactPair>& pairs);

/// Fits nonnegative weights to the certificate equations by NNLS and prunes
/// the support while the residuals stay below 1e-6. Throws
/// CertificateNotFound when no weights fit at the tolerance.
JohnCertificate fitJohnWeights(const std::vector<ContactPair>& pairs,
                               const Subspace& F, Eigen::Index d,
                               bool require_symmetry = false,
                               double tol = 1e-6);

/// Per-equation residual recomputation.
struct CertificateCheck {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};
std::vector<CertificateCheck> verifyCertificate(const JohnCertificate& cert,
                                                const Subspace& F,
                                                Eigen::Index d,
                                                bool with_symmetry = false,
                                                double tol = 1e-6);

/// Identities satisfied by the projected contact unit vectors:
/// sum a P_F u (x) P_F u = Id_F, sum a P_F u = 0, sum a |P_F u|^2 = s and
/// sum a |P_perp u|^2 = d - s.
struct USpaceIdentities {
  double resid_projector = 0.0;
  double resid_zerosum = 0.0;
  double resid_mass_on_f = 0.0;
  double resid_mass_off_f = 0.0;
};
USpaceIdentities uSpaceIdentities(const std::vector<Vector>& us,
                                  const Vector& weights, const Subspace& F);

/// Translation to the good center z = P_F(sum a_i v_i) / (d + 1) together
/// with the transformed pairs (v - z, p / (1 - <z, p>)) and weights
/// c_i = a_i (1 - <z, p_i>).
struct GoodCenter {
  bool ok = false;
  std::string message;
  Vector z;
  std::vector<ContactPair> transformed;
  Vector c;
  double resid_zerosum_p = 0.0;    // |sum c_i p'_i|
  double resid_zerosum_pfv = 0.0;  // |sum c_i P_F v'_i|
};
GoodCenter goodCenter(const std::vector<ContactPair>& pairs,
                      const Vector& weights, const Subspace& F,
                      Eigen::Index d);

/// Inner and outer contact polytopes, with the reflected-dilate inclusion
/// of the section by F checked whenever weights satisfying the extended
/// system (including sum a_i P_F v_i = 0) exist and the section is bounded.
struct ContactPolytopes {
  VPolytope inner;
  HPolytope outer;
  bool inclusion_checked = false;
  double inclusion_margin = 0.0;  // min slack of section vertices in -d P_F K_in
  std::string message;
};
ContactPolytopes contactPolytopes(const std::vector<ContactPair>& pairs,
                                  const Subspace& F, Eigen::Index d);

/// Certificate for a body in Loewner position: contact pairs (u, u) at the
/// vertices lying on the unit sphere.
JohnCertificate lownerCertificate(const VPolytope& K, const Subspace& F,
                                  Eigen::Index d, double tol = 1e-7);

}  // namespace revolve
