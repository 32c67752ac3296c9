#pragma once

#include "revolve/solver.hpp"
#include "revolve/types.hpp"

#include <string>
#include <vector>

namespace revolve {

/// One quantitative check: pass iff margin = rhs - lhs >= -1e-8 (1 + |rhs|).
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin() const { return rhs - lhs; }
  bool pass() const { return margin() >= -1e-8 * (1.0 + std::abs(rhs)); }
};

/// Exact volumes of the reference bodies in dimension s.
double volumeUnitBall(Eigen::Index s);
double volumeSimplexCircumscribed(Eigen::Index s);  // regular, inradius 1
double volumeSimplexInscribed(Eigen::Index s);      // regular, circumradius 1
double volumeCube(Eigen::Index s);                  // [-1, 1]^s
double volumeCrossPolytope(Eigen::Index s);

/// Inradius of the section of K by the complement of the axis (through the
/// center of E) against d/(d-s) (or sqrt(d/(d-s)) for symmetric K) times
/// the complement radius mu of the extremal ellipsoid.
BoundReport checkInradiusBound(const HPolytope& K, const FEllipsoid& E,
                               bool symmetric);

/// Section volume ratio (vol K cap F / vol E cap F)^(1/s) against the
/// simplex-based constant (or sqrt(d/s) with the cube reference for
/// symmetric K). Exact section volumes, so dim F <= 3.
BoundReport checkVolumeBound(const HPolytope& K, const FEllipsoid& E,
                             bool symmetric);

/// Section inclusions E cap F inside K cap F inside lambda* (E cap F);
/// reports the smallest dilation lambda* against d (or sqrt(d)).
struct InclusionReport {
  BoundReport dilation;      // lambda* <= d or sqrt(d)
  bool inner_inclusion = false;  // E cap F inside K cap F
  double lambda_star = 0.0;
};
InclusionReport checkInclusion(const HPolytope& K, const FEllipsoid& E,
                               bool symmetric);

/// The Loewner-position properties of a body K normalized so that the unit
/// ball is its smallest enclosing F-ellipsoid: outer volume ratio of the
/// projection, projection inclusions, circumradius of the complement
/// projection, plus the symmetric variants when K = -K.
std::vector<BoundReport> checkLownerProperties(const VPolytope& K,
                                               const Subspace& F);

/// Inradius primitive: with weights beta summing to 1, sum beta v = 0 and
/// second moment theta in (0, 1], the polar of conv{v_i} has inradius at
/// most 1/theta.
BoundReport lemmaInradiusPrimitive(const Matrix& vs, const Vector& beta,
                                   double theta);

/// Circumradius primitive: under the same moment conditions the hull has
/// circumradius at least sqrt(theta).
BoundReport lemmaCircumradiusPrimitive(const Matrix& vs, const Vector& beta,
                                       double theta);

/// Axis-section containment for the largest inscribed cone position:
/// (K - z) cap line inside -d ((C0 - z) cap line) about the good center z,
/// reported as the smallest reflected dilation factor against d = 2.
BoundReport checkRightConeAxisContainment(const VPolytope& K,
                                          const Vector& axis_direction,
                                          const VPolytope& solution_triangle,
                                          const Vector& z);

/// The coaxial-ellipsoid counterexample: semi-axes lambda^1..lambda^d,
/// solved over all s-axes; the volume ratio never exceeds 1/lambda and no
/// translate of lambda times the projected solution covers the section of
/// the big ellipsoid by the complement of the found axis.
struct BadEllipsoidReport {
  BoundReport volume_ratio;        // ratio <= 1 / lambda
  BoundReport section_witness;     // lambda * mu' <= max semi-axis of section
  Matrix witness_points;           // two antipodal extreme points (columns)
  FEllipsoid solution;
  double ratio = 0.0;
};
BadEllipsoidReport badEllipsoidInstance(Eigen::Index d, Eigen::Index s,
                                        double lambda,
                                        const SolveConfig& cfg = {});

}  // namespace revolve
