#pragma once

#include "revolve/types.hpp"

namespace revolve {

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  Vector x;
};

/// Solves  max c^T x  subject to  A x <= b  with x free, by a dense
/// two-phase simplex method (Bland's rule). Intended for the small,
/// well-scaled programs that arise in desk-scale polytope geometry.
LpResult solveLp(const Matrix& A, const Vector& b, const Vector& c);

/// Chebyshev center: the center and radius of a largest ball inside
/// {x : A x <= b}. Throws if the program is unbounded or infeasible.
struct ChebyshevBall {
  double radius = 0.0;
  Vector center;
};
ChebyshevBall chebyshevBall(const HPolytope& P);

/// True if {x : A x <= b} is nonempty.
bool isFeasible(const HPolytope& P);

/// True if {x : A x <= b} is bounded (checked by maximizing +-e_j).
bool isBounded(const HPolytope& P);

}  // namespace revolve
