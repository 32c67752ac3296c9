#include "revolve/cli.hpp"

#include "revolve/bodies.hpp"
#include "revolve/svg.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>

namespace revolve {
namespace {

void attachEllipsoidBounds(ResultFile& res) {
  const InstanceFile& inst = res.instance;
  const FEllipsoid& E = *res.ellipsoid;
  const Eigen::Index d = inst.ambientDim(), s = E.axis.dim();
  const HPolytope& L = *inst.body_L;
  if (s < d) {
    res.bounds.push_back(checkInradiusBound(L, E, false));
    if (inst.symmetric) res.bounds.push_back(checkInradiusBound(L, E, true));
  }
  if (s >= 1 && s <= 3) {
    res.bounds.push_back(checkVolumeBound(L, E, false));
    res.bounds.push_back(checkInclusion(L, E, false).dilation);
    if (inst.symmetric) {
      res.bounds.push_back(checkVolumeBound(L, E, true));
      res.bounds.push_back(checkInclusion(L, E, true).dilation);
    }
  }
}

void attachLownerBounds(ResultFile& res) {
  const FEllipsoid& E = *res.ellipsoid;
  const VPolytope& K = *res.instance.body_K;
  // Normalize so that the unit ball is the solution for the moved body.
  const Matrix Ainv = E.fullOperator().inverse();
  VPolytope Kn{Ainv * (K.V.colwise() - E.center)};
  for (BoundReport& r : checkLownerProperties(Kn, E.axis))
    res.bounds.push_back(std::move(r));
}

void attachGeneralBounds(ResultFile& res) {
  const InstanceFile& inst = res.instance;
  const GeneralPosition& P = *res.position;
  if (!res.certificate) return;
  const Subspace F = P.axis;
  const Eigen::Index d = inst.ambientDim();
  const ContactPolytopes cp = contactPolytopes(res.certificate->pairs, F, d);
  if (cp.inclusion_checked)
    res.bounds.push_back({"contact_polytope_inclusion", -cp.inclusion_margin, 0.0});
  // Axis-section containment for the planar cone (isosceles triangle) case.
  if (d == 2 && F.dim() == 1 && inst.body_K && inst.body_K->numVertices() == 3) {
    const GoodCenter gc =
        goodCenter(res.certificate->pairs, res.certificate->weights, F, d);
    if (gc.ok) {
      const Matrix image =
          (P.fullOperator() * inst.body_K->V).colwise() + P.translation;
      const Matrix LV = enumerateVertices(*inst.body_L);
      const Vector origin = image.rowwise().mean();
      res.bounds.push_back(checkRightConeAxisContainment(
          VPolytope{LV}, F.basis().col(0), VPolytope{image}, origin + gc.z));
    }
  }
}

}  // namespace

std::vector<BoundReport> computeBounds(const ResultFile& res) {
  ResultFile scratch = res;
  scratch.bounds.clear();
  switch (res.instance.problem) {
    case ProblemKind::EllipsoidFixed:
    case ProblemKind::EllipsoidAny:
      if (scratch.ellipsoid) attachEllipsoidBounds(scratch);
      break;
    case ProblemKind::LownerFixed:
      if (scratch.ellipsoid) attachLownerBounds(scratch);
      break;
    case ProblemKind::GeneralFixed:
      if (scratch.position) attachGeneralBounds(scratch);
      break;
  }
  return scratch.bounds;
}

ResultFile runInstance(const InstanceFile& inst, const SolveConfig& cfg,
                       bool oracle_check) {
  const Eigen::Index d = inst.ambientDim();
  if (d > 6) throw DimensionLimit("ambient dimension > 6 is not supported");

  ResultFile res;
  res.instance = inst;
  switch (inst.problem) {
    case ProblemKind::EllipsoidFixed: {
      auto out = solveEllipsoidFixedAxis(*inst.body_L, inst.axis(), cfg);
      res.ellipsoid = out.value;
      res.diagnostics = out.diagnostics;
      break;
    }
    case ProblemKind::EllipsoidAny: {
      if (d > 3)
        throw DimensionLimit("ellipsoid-any requires dimension <= 3");
      auto out = solveEllipsoidAnyAxis(*inst.body_L, inst.axis_dim, cfg);
      res.ellipsoid = out.value;
      res.diagnostics = out.diagnostics;
      break;
    }
    case ProblemKind::GeneralFixed: {
      auto out = solveGeneralFixedAxis(*inst.body_K, *inst.body_L, inst.axis(), cfg);
      res.position = out.value;
      res.diagnostics = out.diagnostics;
      break;
    }
    case ProblemKind::LownerFixed: {
      auto out = solveLownerFixedAxis(*inst.body_K, inst.axis(), cfg);
      res.ellipsoid = out.value;
      res.diagnostics = out.diagnostics;
      break;
    }
  }

  try {
    if (inst.problem == ProblemKind::GeneralFixed) {
      const GeneralPosition& P = *res.position;
      const Matrix image =
          (P.fullOperator() * inst.body_K->V).colwise() + P.translation;
      const Vector origin = image.rowwise().mean();
      auto pairs = extractContactPairsPolytope(image, *inst.body_L, origin);
      res.certificate = fitJohnWeights(pairs, P.axis, d);
    } else if (inst.problem == ProblemKind::LownerFixed) {
      const FEllipsoid& E = *res.ellipsoid;
      const Matrix Ainv = E.fullOperator().inverse();
      VPolytope Kn{Ainv * (inst.body_K->V.colwise() - E.center)};
      res.certificate = lownerCertificate(Kn, E.axis, d);
    } else {
      const FEllipsoid& E = *res.ellipsoid;
      auto pairs = extractContactPairs(E, *inst.body_L);
      res.certificate = fitJohnWeights(
          pairs, E.axis, d, inst.problem == ProblemKind::EllipsoidAny);
    }
  } catch (const CertificateNotFound& e) {
    res.certificate_message = e.what();
  }

  res.bounds = computeBounds(res);

  if (oracle_check) {
    if (d != 2)
      throw DimensionLimit("--oracle-check is restricted to 2D instances");
    OracleProblem op;
    op.F = inst.problem == ProblemKind::EllipsoidAny
               ? res.ellipsoid->axis
               : inst.axis();
    if (inst.problem == ProblemKind::LownerFixed) {
      op.kind = OracleProblem::Kind::LownerFixed;
      op.K = *inst.body_K;
    } else if (inst.problem == ProblemKind::GeneralFixed) {
      op.kind = OracleProblem::Kind::GeneralFixed;
      op.K = *inst.body_K;
      op.L = *inst.body_L;
    } else {
      op.kind = OracleProblem::Kind::EllipsoidFixed;
      op.L = *inst.body_L;
    }
    const OracleResult oracle = oracleGridSearch(op);
    const double vs = res.ellipsoid ? res.ellipsoid->logVolumeFactor()
                                    : res.position->logVolumeFactor();
    res.oracle_gap =
        std::abs(std::exp(vs) - std::exp(oracle.log_volume_factor)) /
        std::exp(oracle.log_volume_factor);
  }
  return res;
}

namespace {

int exitCode(const ResultFile& res) {
  return res.diagnostics.status == SolveStatus::MaxIterations ? 2 : 0;
}

void printBoundTable(const std::vector<BoundReport>& bounds) {
  for (const BoundReport& b : bounds)
    std::printf("  %-34s lhs=%-14.8g rhs=%-14.8g margin=%-11.3g %s\n",
                b.name.c_str(), b.lhs, b.rhs, b.margin(),
                b.pass() ? "pass" : "FAIL");
}

int cmdSolve(const std::string& path, double tol, unsigned seed,
             bool oracle_check, const std::string& out_path) {
  InstanceFile inst = parseInstance(readFile(path));
  SolveConfig cfg;
  if (tol > 0) {
    cfg.tol_feas = tol;
    cfg.tol_opt = tol;
  }
  cfg.init_seed = seed;
  ResultFile res = runInstance(inst, cfg, oracle_check);
  const std::string text = serializeResult(res);
  if (!out_path.empty()) writeFile(out_path, text);
  else std::fputs(text.c_str(), stdout);
  if (res.oracle_gap)
    std::fprintf(stderr, "oracle gap: %.3e\n", *res.oracle_gap);
  return exitCode(res);
}

int cmdCertify(const std::string& path) {
  ResultFile res = parseResult(readFile(path));
  const InstanceFile& inst = res.instance;
  const Eigen::Index d = inst.ambientDim();
  JohnCertificate cert;
  Subspace F;
  bool symmetry = false;
  try {
    if (inst.problem == ProblemKind::GeneralFixed) {
      const GeneralPosition& P = *res.position;
      F = P.axis;
      const Matrix image =
          (P.fullOperator() * inst.body_K->V).colwise() + P.translation;
      const Vector origin = image.rowwise().mean();
      cert = fitJohnWeights(extractContactPairsPolytope(image, *inst.body_L, origin),
                            F, d);
    } else if (inst.problem == ProblemKind::LownerFixed) {
      const FEllipsoid& E = *res.ellipsoid;
      F = E.axis;
      const Matrix Ainv = E.fullOperator().inverse();
      cert = lownerCertificate(
          VPolytope{Ainv * (inst.body_K->V.colwise() - E.center)}, F, d);
    } else {
      const FEllipsoid& E = *res.ellipsoid;
      F = E.axis;
      symmetry = inst.problem == ProblemKind::EllipsoidAny;
      cert = fitJohnWeights(extractContactPairs(E, *inst.body_L), F, d, symmetry);
    }
  } catch (const CertificateNotFound& e) {
    std::fprintf(stderr, "certify: %s\n", e.what());
    return 1;
  }
  bool all = true;
  std::printf("contact pairs: %zu\n", cert.pairs.size());
  for (const CertificateCheck& c : verifyCertificate(cert, F, d, symmetry)) {
    std::printf("  %-20s residual=%-12.4e %s\n", c.name.c_str(), c.residual,
                c.pass ? "pass" : "FAIL");
    all = all && c.pass;
  }
  return all ? 0 : 1;
}

int cmdCheckBounds(const std::string& path, const std::string& which) {
  ResultFile res = parseResult(readFile(path));
  std::vector<BoundReport> bounds = computeBounds(res);
  if (!which.empty()) {
    std::vector<BoundReport> kept;
    for (BoundReport& b : bounds)
      if (b.name.find(which) != std::string::npos) kept.push_back(std::move(b));
    bounds = std::move(kept);
  }
  printBoundTable(bounds);
  for (const BoundReport& b : bounds)
    if (!b.pass()) return 1;
  return 0;
}

int cmdGenInstance(const std::string& family, const GenParams& p,
                   const std::string& out_path) {
  const InstanceFile inst = generateInstance(family, p);
  const std::string text = serializeInstance(inst);
  if (!out_path.empty()) writeFile(out_path, text);
  else std::fputs(text.c_str(), stdout);
  return 0;
}

int cmdReport(const std::string& path, const std::string& svg_path) {
  ResultFile res = parseResult(readFile(path));
  if (res.ellipsoid) {
    const FEllipsoid& E = *res.ellipsoid;
    std::printf("solution: F-ellipsoid, axis dim %ld, mu=%.12g\n",
                long(E.axis.dim()), E.mu);
    std::printf("  center: ");
    for (Eigen::Index i = 0; i < E.center.size(); ++i)
      std::printf("%.12g ", E.center[i]);
    std::printf("\n  log volume factor: %.12g\n", E.logVolumeFactor());
  } else if (res.position) {
    const GeneralPosition& P = *res.position;
    std::printf("solution: general position, axis dim %ld, mu=%.12g\n",
                long(P.axis.dim()), P.mu);
    std::printf("  log volume factor: %.12g\n", P.logVolumeFactor());
  }
  if (res.certificate) {
    std::printf("certificate: %zu pairs, residuals %.3e / %.3e / %.3e",
                res.certificate->pairs.size(),
                res.certificate->residual_decomposition,
                res.certificate->residual_zerosum,
                res.certificate->residual_trace);
    if (res.certificate->residual_symmetry)
      std::printf(" / %.3e", *res.certificate->residual_symmetry);
    std::printf("\n");
  } else if (!res.certificate_message.empty()) {
    std::printf("certificate: %s\n", res.certificate_message.c_str());
  }
  if (!res.bounds.empty()) {
    std::printf("bounds:\n");
    printBoundTable(res.bounds);
  }
  std::printf("diagnostics: %d newton iterations, gap %.2e, kkt %.2e, %.2f ms\n",
              res.diagnostics.newton_iterations, res.diagnostics.barrier_gap,
              res.diagnostics.kkt_residual, res.diagnostics.wall_time_ms);
  if (!svg_path.empty()) {
    if (res.instance.ambientDim() != 2) {
      std::fprintf(stderr, "report: SVG output is only available for 2D results\n");
      return 5;
    }
    writeFile(svg_path, renderResultSvg(res));
  }
  return 0;
}

}  // namespace

int cliMain(int argc, const char* const* argv) {
  CLI::App app{"John-type extremal ellipsoids of revolution in convex polytopes"};
  app.require_subcommand(1);

  std::string instance_path, result_path, out_path, svg_path, which, family;
  double tol = -1.0;
  unsigned seed = 0;
  bool oracle_check = false;
  GenParams gp;

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("instance", instance_path, "instance JSON path")->required();
  solve->add_option("--tol", tol, "feasibility/optimality tolerance");
  solve->add_option("--seed", seed, "solver initialization seed");
  solve->add_flag("--oracle-check", oracle_check,
                  "also run the 2D grid-search oracle and report the gap");
  solve->add_option("--out", out_path, "write the result file here");

  auto* certify = app.add_subcommand("certify", "re-derive the certificate");
  certify->add_option("result", result_path, "result JSON path")->required();

  auto* check = app.add_subcommand("check-bounds", "run the bound reports");
  check->add_option("result", result_path, "result JSON path")->required();
  check->add_option("--which", which, "substring filter on report names");

  auto* gen = app.add_subcommand("gen-instance", "generate a named instance");
  gen->add_option("family", family,
                  "cube | simplex-john | simplex-lowner | cross-polytope | "
                  "random-2d | appendix-a | lifted | bad-ellipsoid | isosceles")
      ->required();
  gen->add_option("--n", gp.n);
  gen->add_option("--d", gp.d);
  gen->add_option("--s", gp.s);
  gen->add_option("--m", gp.m);
  gen->add_option("--gamma", gp.gamma);
  gen->add_option("--t", gp.t);
  gen->add_option("--eps", gp.eps);
  gen->add_option("--lambda", gp.lambda);
  gen->add_option("--seed", gp.seed);
  gen->add_option("--k", gp.k);
  gen->add_option("--out", out_path, "write the instance file here");

  auto* report = app.add_subcommand("report", "human-readable result summary");
  report->add_option("result", result_path, "result JSON path")->required();
  report->add_option("--svg", svg_path, "write an SVG figure (2D only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (solve->parsed())
      return cmdSolve(instance_path, tol, seed, oracle_check, out_path);
    if (certify->parsed()) return cmdCertify(result_path);
    if (check->parsed()) return cmdCheckBounds(result_path, which);
    if (gen->parsed()) return cmdGenInstance(family, gp, out_path);
    if (report->parsed()) return cmdReport(result_path, svg_path);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const DimensionLimit& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  } catch (const InfeasibleProblem& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace revolve
