#pragma once

#include "revolve/lp.hpp"
#include "revolve/types.hpp"

#include <optional>

namespace revolve {

/// Checks that P is bounded with nonempty interior (Chebyshev radius > tol).
void validateBody(const HPolytope& P, double tol = kTol.feas);

/// Largest inscribed ball of P, by the Chebyshev-center linear program.
ChebyshevBall inradiusChebyshev(const HPolytope& P);

/// Smallest enclosing ball of a point set (move-to-front Welzl with the
/// input order kept as given, so results are reproducible).
struct EnclosingBall {
  double radius = 0.0;
  Vector center;
};
EnclosingBall minimalEnclosingBall(const Matrix& points);

inline EnclosingBall circumradius(const VPolytope& P) {
  if (P.numVertices() == 0)
    throw std::invalid_argument("circumradius: empty vertex list");
  return minimalEnclosingBall(P.V);
}

/// Polar of conv(V): {x : <v_i, x> <= 1}. Requires the origin in the
/// interior of the hull; otherwise the polar is unbounded and rejected.
HPolytope polarVPolytope(const VPolytope& P);

/// Section of P by F through the origin, expressed in the orthonormal
/// coordinates of F. Throws if the section is empty.
HPolytope section(const HPolytope& P, const Subspace& F);

/// Vertices of an H-polytope, by enumerating d-subsets of facets and
/// filtering by feasibility. Columns of the result are vertices, sorted
/// lexicographically. Intended for small facet counts.
Matrix enumerateVertices(const HPolytope& P, double tol = kTol.feas);

/// Exact volume for dim <= 3 (vertex enumeration + facet decomposition).
double volume(const HPolytope& P);

/// Monte Carlo volume with standard error, for 4 <= dim <= 6 (also usable
/// in lower dimensions for cross-checks).
struct McVolume {
  double volume = 0.0;
  double std_error = 0.0;
};
McVolume volumeMonteCarlo(const HPolytope& P, long samples = 200000,
                          unsigned seed = 12345);

/// Dispatches to the exact method for dim <= 3 and Monte Carlo for 4..6.
double volumeAuto(const HPolytope& P);

/// H-form of conv(V) for dim <= 3 (via the polar of the centered hull).
HPolytope vpolyToHpoly(const VPolytope& P);

/// Volume of conv(V); 0 if the hull is lower-dimensional. dim <= 3.
double volumeV(const VPolytope& P);

/// Counterclockwise convex hull of 2D points (columns).
Matrix convexHull2D(const Matrix& points);

/// True if every column of `points` satisfies the half-space system.
bool containsAll(const HPolytope& P, const Matrix& points, double tol = kTol.feas);

/// Symmetric vertex-set distance: max over vertices of A of the distance to
/// the nearest vertex of B, and vice versa. A cheap stand-in for the
/// Hausdorff distance between hulls with matching vertex sets.
double vertexSetDistance(const Matrix& A, const Matrix& B);

}  // namespace revolve
