#pragma once

#include "revolve/io.hpp"

namespace revolve {

class DimensionLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves one instance end to end: dispatch to the matching solver, extract
/// the optimality certificate, run the applicable bound reports, and
/// optionally cross-check against the brute-force oracle (2D only).
ResultFile runInstance(const InstanceFile& inst, const SolveConfig& cfg = {},
                       bool oracle_check = false);

/// Recomputes the applicable bound reports for a stored result.
std::vector<BoundReport> computeBounds(const ResultFile& res);

/// Command-line entry point (subcommands: solve, certify, check-bounds,
/// gen-instance, report). Exit codes: 0 success, 1 check failed, 2 solver
/// did not converge, 3 infeasible, 4 parse error, 5 dimension limit.
int cliMain(int argc, const char* const* argv);

}  // namespace revolve
