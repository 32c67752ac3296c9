#pragma once

#include "revolve/types.hpp"

namespace revolve {

/// The cube [-1,1]^d as half-spaces.
HPolytope cubeBody(Eigen::Index d);

/// Vertices {-1,1}^d of the cube.
VPolytope cubeVertices(Eigen::Index d);

/// Regular d-simplex circumscribed about the unit ball (inradius 1);
/// facets <q_i, x> <= 1 with the regular simplex directions q_i.
HPolytope simplexJohn(Eigen::Index d);

/// Regular d-simplex inscribed in the unit ball (vertices q_i).
VPolytope simplexLowner(Eigen::Index d);

/// Cross-polytope conv{+-e_i} as half-spaces (2^d facets).
HPolytope crossPolytopeBody(Eigen::Index d);
VPolytope crossPolytopeVertices(Eigen::Index d);

/// Axis-aligned box with given half-widths.
HPolytope boxBody(const Vector& half_widths);

/// Outer polyhedral approximation of the unit ball in the plane:
/// k tangent half-spaces at equally spaced directions.
HPolytope ballApprox2D(int k);

/// Outer polyhedral approximation of a centered ellipse with the given
/// semi-axes (tangent lines at k equally spaced parameter angles).
HPolytope ellipseApprox2D(double a, double b, int k);

/// Inner polyhedral approximation of the origin-centered ellipsoid with
/// semi-axes `semi` in R^3: tangent planes pulled in by the covering radius
/// of the direction grid, so the result is certified to lie inside.
HPolytope ellipsoidInnerApprox3D(const Vector& semi, int n_theta = 36,
                                 int n_phi = 72);

/// Seeded random polygon: k half-spaces with jittered directions and
/// offsets in [0.7, 1.5). Always bounded with the origin interior.
HPolytope randomPolygon2D(unsigned seed, int k);

/// Regular triangle with unit inradius, apex pointing along `axis_dir`
/// (the altitude through the apex is parallel to that direction).
VPolytope triangleWithAxis(const Vector& axis_dir);

}  // namespace revolve
