#pragma once

#include "revolve/polytope.hpp"
#include "revolve/types.hpp"

namespace revolve {

class InfeasibleProblem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
struct SolveOutput {
  T value;
  SolveDiagnostics diagnostics;
};

/// Largest-volume ellipsoid of revolution with axis F inside L
/// (log det maximization under the support-function constraints
/// <p_i, z> + |A p_i| <= b_i).
SolveOutput<FEllipsoid> solveEllipsoidFixedAxis(const HPolytope& L,
                                                const Subspace& F,
                                                const SolveConfig& cfg = {});

/// Largest-volume positive F-position of K inside L (constraints are
/// linear in the operator entries: <p_j, A v_k + z> <= b_j).
SolveOutput<GeneralPosition> solveGeneralFixedAxis(const VPolytope& K,
                                                   const HPolytope& L,
                                                   const Subspace& F,
                                                   const SolveConfig& cfg = {});

/// Smallest-volume F-ellipsoid containing the points of K, solved as a
/// log det maximization in the inverse operator.
SolveOutput<FEllipsoid> solveLownerFixedAxis(const VPolytope& K,
                                             const Subspace& F,
                                             const SolveConfig& cfg = {});

/// Best s-dimensional axis over a dense sweep (d <= 3) with golden-section
/// refinement; ties are broken by the lexicographically smallest canonical
/// axis representative.
SolveOutput<FEllipsoid> solveEllipsoidAnyAxis(const HPolytope& L,
                                              Eigen::Index s,
                                              const SolveConfig& cfg = {});

/// Brute-force oracle for the 2D problems (axis dimension <= 1):
/// hierarchical grid refinement over (shape-on-F, shape-off-F, center).
struct OracleProblem {
  enum class Kind { EllipsoidFixed, GeneralFixed, LownerFixed };
  Kind kind = Kind::EllipsoidFixed;
  HPolytope L;  // ellipsoid/general
  VPolytope K;  // general/lowner
  Subspace F = Subspace::trivial(2);
};

struct OracleResult {
  double log_volume_factor = 0.0;  // log det of the optimal operator
  Matrix shape_on_f;               // s x s (diagonal scale for s = 1)
  double mu = 1.0;
  Vector center;
};

OracleResult oracleGridSearch(const OracleProblem& problem, int resolution = 200);

/// Samples random feasible perturbations of a solution at the given step
/// and reports the largest objective improvement found (Theorem-style
/// local-maximality check; a correct solution yields no improvement).
struct PerturbationReport {
  int trials = 0;
  int feasible_trials = 0;
  double max_improvement = 0.0;
};

PerturbationReport localPerturbationTest(const HPolytope& L, const Subspace& F,
                                         const FEllipsoid& sol, int n_trials,
                                         unsigned seed = 1234,
                                         double step = 1e-4);
PerturbationReport localPerturbationTest(const VPolytope& K, const HPolytope& L,
                                         const Subspace& F,
                                         const GeneralPosition& sol,
                                         int n_trials, unsigned seed = 1234,
                                         double step = 1e-4);

}  // namespace revolve
