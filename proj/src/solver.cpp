#include "revolve/solver.hpp"

#include "revolve/linalg.hpp"
#include "revolve/parallel.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace revolve {
namespace {

// ---------------------------------------------------------------------------
// A concave program over positive definite F-operators in an axis-adapted
// orthonormal frame: parameters are (vech S, tau, y) where S is the s x s
// block on F, tau the multiplier on the complement, and y a free d-vector.
// The objective is J = log det S + (d - s) log tau; constraints g_i >= 0 are
// one of three families (support cone, linear, vertex-in-ball).
// ---------------------------------------------------------------------------

struct Constraint {
  // Soc:  g = (b - p.y)^2 - |S a|^2 - tau^2 c2
  // Lin:  g = b - a.(S eta) - tau beta - p.y
  // Ball: g = 1 - |S eta - y_F|^2 - |tau vperp - y_perp|^2
  enum class Kind { Soc, Lin, Ball } kind = Kind::Soc;
  Vector a;      // F-coordinates of the facet normal (Soc/Lin)
  Vector eta;    // F-coordinates of the vertex (Lin/Ball)
  Vector vperp;  // complement coordinates of the vertex (Ball)
  Vector p;      // full normal in the adapted frame (Soc/Lin)
  double b = 0.0;
  double c2 = 0.0;    // squared norm of the complement part of p (Soc)
  double beta = 0.0;  // inner product of the complement parts (Lin)
};

struct Params {
  Matrix S;  // s x s symmetric
  double tau = 1.0;
  Vector y;
};

class FOperatorProgram {
 public:
  Eigen::Index d = 0, s = 0;
  Matrix frame;  // d x d orthonormal, columns [basis(F) | basis(Fperp)]
  std::vector<Constraint> cons;

  SymPack pack() const { return SymPack{s}; }
  bool hasTau() const { return s < d; }
  Eigen::Index nS() const { return s * (s + 1) / 2; }
  Eigen::Index nParams() const { return nS() + (hasTau() ? 1 : 0) + d; }
  Eigen::Index tauIndex() const { return nS(); }
  Eigen::Index yIndex() const { return nS() + (hasTau() ? 1 : 0); }

  Vector packParams(const Params& p) const {
    Vector th(nParams());
    if (s > 0) th.head(nS()) = pack().pack(p.S);
    if (hasTau()) th[tauIndex()] = p.tau;
    th.tail(d) = p.y;
    return th;
  }

  Params unpackParams(const Vector& th) const {
    Params p;
    p.S = s > 0 ? pack().unpack(th.head(nS())) : Matrix(0, 0);
    p.tau = hasTau() ? th[tauIndex()] : 1.0;
    p.y = th.tail(d);
    return p;
  }

  bool shapePositive(const Params& p) const {
    if (hasTau() && p.tau <= 0) return false;
    if (s > 0) {
      Eigen::LLT<Matrix> llt(p.S);
      if (llt.info() != Eigen::Success) return false;
    }
    return true;
  }

  double constraintValue(const Constraint& c, const Params& p) const {
    switch (c.kind) {
      case Constraint::Kind::Soc: {
        const double w = c.b - c.p.dot(p.y);
        if (w <= 0) return -1.0;
        double q = p.tau * p.tau * c.c2;
        if (s > 0) q += (p.S * c.a).squaredNorm();
        return w * w - q;
      }
      case Constraint::Kind::Lin: {
        double v = c.b - c.p.dot(p.y) - p.tau * c.beta;
        if (s > 0) v -= c.a.dot(p.S * c.eta);
        return v;
      }
      case Constraint::Kind::Ball: {
        double q = (p.tau * c.vperp - p.y.tail(d - s)).squaredNorm();
        if (s > 0) q += (p.S * c.eta - p.y.head(s)).squaredNorm();
        return 1.0 - q;
      }
    }
    return -1.0;
  }

  /// Slack in length units, used for contact detection and active-set
  /// selection (the raw g of the Soc/Ball families is quadratic).
  double lengthSlack(const Constraint& c, const Params& p) const {
    switch (c.kind) {
      case Constraint::Kind::Soc: {
        double q = p.tau * p.tau * c.c2;
        if (s > 0) q += (p.S * c.a).squaredNorm();
        return c.b - c.p.dot(p.y) - std::sqrt(q);
      }
      case Constraint::Kind::Lin:
        return constraintValue(c, p);
      case Constraint::Kind::Ball: {
        double q = (p.tau * c.vperp - p.y.tail(d - s)).squaredNorm();
        if (s > 0) q += (p.S * c.eta - p.y.head(s)).squaredNorm();
        return 1.0 - std::sqrt(q);
      }
    }
    return -1.0;
  }

  bool feasible(const Params& p, double margin) const {
    if (!shapePositive(p)) return false;
    for (const Constraint& c : cons)
      if (constraintValue(c, p) < margin) return false;
    return true;
  }

  double objective(const Params& p) const {
    double J = 0.0;
    if (s > 0) {
      Eigen::LLT<Matrix> llt(p.S);
      if (llt.info() != Eigen::Success)
        return -std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < s; ++i)
        J += 2.0 * std::log(llt.matrixL()(i, i));
    }
    if (hasTau()) J += double(d - s) * std::log(p.tau);
    return J;
  }

  void objectiveDerivs(const Params& p, Vector& grad, Matrix& hess) const {
    grad.setZero(nParams());
    hess.setZero(nParams(), nParams());
    if (s > 0) {
      const Matrix Sinv = p.S.inverse();
      pack().addGradient(Sinv, 1.0, grad.head(nS()));
      // D^2 log det [E_a, E_b] = -tr(S^{-1} E_a S^{-1} E_b)
      std::vector<Matrix> SE(static_cast<size_t>(nS()));
      Eigen::Index k = 0;
      for (Eigen::Index j = 0; j < s; ++j)
        for (Eigen::Index i = 0; i <= j; ++i) {
          Matrix E = Matrix::Zero(s, s);
          E(i, j) = 1.0;
          E(j, i) = 1.0;
          SE[size_t(k)] = Sinv * E;
          ++k;
        }
      for (Eigen::Index aI = 0; aI < nS(); ++aI)
        for (Eigen::Index bI = aI; bI < nS(); ++bI) {
          const double v = -(SE[size_t(aI)] * SE[size_t(bI)]).trace();
          hess(aI, bI) = v;
          hess(bI, aI) = v;
        }
    }
    if (hasTau()) {
      grad[tauIndex()] = double(d - s) / p.tau;
      hess(tauIndex(), tauIndex()) = -double(d - s) / (p.tau * p.tau);
    }
  }

  // Gradient and Hessian of one constraint value g(theta).
  void constraintDerivs(const Constraint& c, const Params& p, Vector& grad,
                        Matrix& hess) const {
    grad.setZero(nParams());
    hess.setZero(nParams(), nParams());
    const Eigen::Index yi = yIndex();
    // Columns of the result are E_alpha * x over the packed symmetric basis.
    const auto symBasisTimes = [&](const Vector& x) {
      Matrix W(s, nS());
      Eigen::Index k = 0;
      for (Eigen::Index j = 0; j < s; ++j)
        for (Eigen::Index i = 0; i <= j; ++i) {
          Vector w = Vector::Zero(s);
          w[i] += x[j];
          if (i != j) w[j] += x[i];
          W.col(k++) = w;
        }
      return W;
    };
    switch (c.kind) {
      case Constraint::Kind::Soc: {
        const double w = c.b - c.p.dot(p.y);
        if (s > 0) {
          const Matrix W = symBasisTimes(c.a);
          const Vector Sa = p.S * c.a;
          grad.head(nS()) = -2.0 * (W.transpose() * Sa);
          hess.topLeftCorner(nS(), nS()) = -2.0 * (W.transpose() * W);
        }
        if (hasTau()) {
          grad[tauIndex()] = -2.0 * p.tau * c.c2;
          hess(tauIndex(), tauIndex()) = -2.0 * c.c2;
        }
        grad.segment(yi, d) = -2.0 * w * c.p;
        hess.block(yi, yi, d, d) = 2.0 * (c.p * c.p.transpose());
        break;
      }
      case Constraint::Kind::Lin: {
        if (s > 0) {
          const Matrix W = symBasisTimes(c.eta);
          grad.head(nS()) = -(W.transpose() * c.a);
        }
        if (hasTau()) grad[tauIndex()] = -c.beta;
        grad.segment(yi, d) = -c.p;
        break;
      }
      case Constraint::Kind::Ball: {
        const Eigen::Index k = d - s;
        const Vector rPerp = p.tau * c.vperp - p.y.tail(k);
        if (s > 0) {
          const Vector rF = p.S * c.eta - p.y.head(s);
          const Matrix W = symBasisTimes(c.eta);
          grad.head(nS()) = -2.0 * (W.transpose() * rF);
          hess.topLeftCorner(nS(), nS()) = -2.0 * (W.transpose() * W);
          grad.segment(yi, s) = 2.0 * rF;
          hess.block(0, yi, nS(), s) = 2.0 * W.transpose();
          hess.block(yi, 0, s, nS()) = 2.0 * W;
        }
        if (hasTau()) {
          grad[tauIndex()] = -2.0 * rPerp.dot(c.vperp);
          hess(tauIndex(), tauIndex()) = -2.0 * c.vperp.squaredNorm();
          grad.segment(yi + s, k) = 2.0 * rPerp;
          hess.block(tauIndex(), yi + s, 1, k) = 2.0 * c.vperp.transpose();
          hess.block(yi + s, tauIndex(), k, 1) = 2.0 * c.vperp;
        }
        hess.block(yi, yi, d, d).diagonal().array() += -2.0;
        break;
      }
    }
  }
};

struct BarrierOutcome {
  Params params;
  SolveDiagnostics diag;
};

// Damped Newton on  phi_t = -t J - sum log g_i  for one centering stage.
// Returns false if the iteration cap is hit before the decrement tolerance.
bool centerStage(const FOperatorProgram& prog, Params& p, double t,
                 int max_iter, int& iter_count) {
  const Eigen::Index n = prog.nParams();
  Vector grad(n), cgrad(n);
  Matrix hess(n, n), chess(n, n);
  for (int it = 0; it < max_iter; ++it) {
    ++iter_count;
    prog.objectiveDerivs(p, grad, hess);
    double phi = -t * prog.objective(p);
    grad *= -t;
    hess *= -t;
    for (const Constraint& c : prog.cons) {
      const double g = prog.constraintValue(c, p);
      prog.constraintDerivs(c, p, cgrad, chess);
      phi -= std::log(g);
      grad += (-1.0 / g) * cgrad;
      hess += (1.0 / (g * g)) * (cgrad * cgrad.transpose()) - (1.0 / g) * chess;
    }
    Vector step;
    double ridge = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
      Matrix H = hess;
      if (ridge > 0) H.diagonal().array() += ridge;
      Eigen::LDLT<Matrix> ldlt(H);
      step = ldlt.solve(-grad);
      if (ldlt.info() == Eigen::Success && grad.dot(step) < 0) break;
      ridge = ridge == 0 ? 1e-8 * (1.0 + hess.diagonal().cwiseAbs().maxCoeff())
                         : ridge * 100.0;
    }
    const double decrement = -grad.dot(step);
    if (!(decrement > 1e-11 * (1.0 + std::abs(phi)))) return true;

    const Vector th = prog.packParams(p);
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Params cand = prog.unpackParams(th + alpha * step);
      if (prog.feasible(cand, 0.0)) {
        double phiCand = -t * prog.objective(cand);
        bool ok = std::isfinite(phiCand);
        if (ok)
          for (const Constraint& c : prog.cons) {
            const double g = prog.constraintValue(c, cand);
            if (g <= 0) {
              ok = false;
              break;
            }
            phiCand -= std::log(g);
          }
        if (ok && phiCand <= phi - 1e-4 * alpha * decrement) {
          p = cand;
          moved = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!moved) return true;  // step length exhausted: accept current center
  }
  return false;
}

// Active-set refinement: Newton on the KKT system of
//   max J  subject to  g_i = 0 for the detected active set.
void polish(const FOperatorProgram& prog, Params& p, double t_final,
            SolveDiagnostics& diag, double tol_feas) {
  const Eigen::Index n = prog.nParams();
  const Params barrier_iterate = p;
  std::vector<size_t> active;
  for (size_t i = 0; i < prog.cons.size(); ++i) {
    const double slack = prog.lengthSlack(prog.cons[i], p);
    const double scale = 1.0 + std::abs(prog.cons[i].b);
    if (slack <= 1e-5 * scale) active.push_back(i);
  }
  if (active.empty()) return;

  const Eigen::Index m = Eigen::Index(active.size());
  Vector lambda(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double g = prog.constraintValue(prog.cons[active[size_t(k)]], p);
    lambda[k] = 1.0 / std::max(t_final * std::max(g, 1e-300), 1e-12);
  }

  Vector Jgrad(n), cgrad(n);
  Matrix Jhess(n, n), chess(n, n);
  double resid = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 60; ++it) {
    prog.objectiveDerivs(p, Jgrad, Jhess);
    Matrix G(n, m);
    Vector gval(m);
    Matrix Hl = Jhess;
    for (Eigen::Index k = 0; k < m; ++k) {
      const Constraint& c = prog.cons[active[size_t(k)]];
      prog.constraintDerivs(c, p, cgrad, chess);
      G.col(k) = cgrad;
      gval[k] = prog.constraintValue(c, p);
      Hl += lambda[k] * chess;
    }
    Vector F(n + m);
    F.head(n) = Jgrad + G * lambda;
    F.tail(m) = gval;
    resid = F.lpNorm<Eigen::Infinity>();
    if (resid < 1e-13 * (1.0 + Jgrad.lpNorm<Eigen::Infinity>())) break;

    Matrix K = Matrix::Zero(n + m, n + m);
    K.topLeftCorner(n, n) = Hl;
    K.topRightCorner(n, m) = G;
    K.bottomLeftCorner(m, n) = G.transpose();
    const Vector delta = Eigen::ColPivHouseholderQR<Matrix>(K).solve(-F);

    double alpha = 1.0;
    const Vector th = prog.packParams(p);
    for (int ls = 0; ls < 30; ++ls) {
      const Params cand = prog.unpackParams(th + alpha * delta.head(n));
      if (prog.shapePositive(cand)) {
        p = cand;
        lambda += alpha * delta.tail(m);
        break;
      }
      alpha *= 0.5;
    }
  }
  diag.kkt_residual = resid;

  // Keep the polish only if it stayed feasible and did not lose volume.
  bool ok = prog.feasible(p, -tol_feas);
  if (!ok || prog.objective(p) < prog.objective(barrier_iterate) - 1e-9)
    p = barrier_iterate;
}

BarrierOutcome maximize(const FOperatorProgram& prog, Params init,
                        const SolveConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  BarrierOutcome out;
  out.params = init;
  SolveDiagnostics& diag = out.diag;

  if (!prog.feasible(init, 0.0))
    throw InfeasibleProblem("solver: initial point infeasible");

  const double gap_target = std::clamp(cfg.tol_opt * 1e-2, 1e-12, 1e-10);
  double t = 1.0;
  int iters = 0;
  bool converged = true;
  while (true) {
    if (!centerStage(prog, out.params, t, cfg.max_iter, iters)) {
      converged = false;
      break;
    }
    if (double(prog.cons.size()) / t <= gap_target || t > 1e13) break;
    t *= cfg.barrier_mu;
  }
  diag.newton_iterations = iters;
  diag.barrier_gap = double(prog.cons.size()) / t;
  if (!converged) {
    diag.status = SolveStatus::MaxIterations;
    diag.message = "centering stage exhausted max_iter; best iterate returned";
  } else {
    polish(prog, out.params, t, diag, cfg.tol_feas);
    diag.status = SolveStatus::Optimal;
  }
  diag.wall_time_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return out;
}

Matrix adaptedFrame(const Subspace& F) {
  const Eigen::Index d = F.ambientDim();
  Matrix Q(d, d);
  if (F.dim() > 0) Q.leftCols(F.dim()) = F.basis();
  if (F.dim() < d) Q.rightCols(d - F.dim()) = F.complement().basis();
  return Q;
}

FOperatorProgram buildEllipsoidProgram(const HPolytope& L, const Subspace& F) {
  requireDim(F.ambientDim(), L.dim(), "solveEllipsoidFixedAxis");
  FOperatorProgram prog;
  prog.d = L.dim();
  prog.s = F.dim();
  prog.frame = adaptedFrame(F);
  prog.cons.reserve(size_t(L.numFacets()));
  for (Eigen::Index i = 0; i < L.numFacets(); ++i) {
    Constraint c;
    c.kind = Constraint::Kind::Soc;
    c.p = prog.frame.transpose() * L.A.row(i).transpose();
    c.a = c.p.head(prog.s);
    c.c2 = c.p.tail(prog.d - prog.s).squaredNorm();
    c.b = L.b[i];
    prog.cons.push_back(std::move(c));
  }
  return prog;
}

FOperatorProgram buildGeneralProgram(const VPolytope& K, const HPolytope& L,
                                     const Subspace& F) {
  requireDim(F.ambientDim(), L.dim(), "solveGeneralFixedAxis");
  requireDim(K.dim(), L.dim(), "solveGeneralFixedAxis bodies");
  FOperatorProgram prog;
  prog.d = L.dim();
  prog.s = F.dim();
  prog.frame = adaptedFrame(F);
  for (Eigen::Index j = 0; j < L.numFacets(); ++j) {
    const Vector p = prog.frame.transpose() * L.A.row(j).transpose();
    for (Eigen::Index k = 0; k < K.numVertices(); ++k) {
      const Vector v = prog.frame.transpose() * K.V.col(k);
      Constraint c;
      c.kind = Constraint::Kind::Lin;
      c.p = p;
      c.a = p.head(prog.s);
      c.eta = v.head(prog.s);
      c.beta = p.tail(prog.d - prog.s).dot(v.tail(prog.d - prog.s));
      c.b = L.b[j];
      prog.cons.push_back(std::move(c));
    }
  }
  return prog;
}

FOperatorProgram buildLownerProgram(const VPolytope& K, const Subspace& F) {
  requireDim(F.ambientDim(), K.dim(), "solveLownerFixedAxis");
  FOperatorProgram prog;
  prog.d = K.dim();
  prog.s = F.dim();
  prog.frame = adaptedFrame(F);
  for (Eigen::Index k = 0; k < K.numVertices(); ++k) {
    const Vector v = prog.frame.transpose() * K.V.col(k);
    Constraint c;
    c.kind = Constraint::Kind::Ball;
    c.eta = v.head(prog.s);
    c.vperp = v.tail(prog.d - prog.s);
    prog.cons.push_back(std::move(c));
  }
  return prog;
}

Params jitterInit(const FOperatorProgram& prog, Params p, unsigned seed) {
  if (seed == 0) return p;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const Vector th = prog.packParams(p);
  Vector dir(th.size());
  for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] = gauss(rng);
  dir *= 0.25 * th.norm() / dir.norm();
  for (int k = 0; k < 40; ++k) {
    const Params cand = prog.unpackParams(th + dir);
    if (prog.feasible(cand, 1e-12)) return cand;
    dir *= 0.5;
  }
  return p;
}

void requireFullDimensional(const VPolytope& K, const char* who) {
  Matrix C = K.V.colwise() - K.centroid();
  Eigen::ColPivHouseholderQR<Matrix> qr(C);
  qr.setThreshold(1e-10);
  if (qr.rank() < K.dim())
    throw InfeasibleProblem(std::string(who) + ": K is lower-dimensional");
}

// Bounded outer body with a usable interior; empty interior is an
// infeasibility, unboundedness a precondition violation.
ChebyshevBall validateOuterBody(const HPolytope& L, double tol, const char* who) {
  for (Eigen::Index i = 0; i < L.numFacets(); ++i)
    if (L.A.row(i).norm() <= tol)
      throw std::invalid_argument(std::string(who) + ": zero facet normal");
  if (!isBounded(L))
    throw std::invalid_argument(std::string(who) + ": L is unbounded");
  ChebyshevBall ball;
  try {
    ball = chebyshevBall(L);
  } catch (const std::invalid_argument&) {
    throw InfeasibleProblem(std::string(who) + ": L is empty");
  }
  if (ball.radius <= tol)
    throw InfeasibleProblem(std::string(who) + ": L has empty interior");
  return ball;
}

}  // namespace

SolveOutput<FEllipsoid> solveEllipsoidFixedAxis(const HPolytope& L,
                                                const Subspace& F,
                                                const SolveConfig& cfg) {
  const ChebyshevBall ball =
      validateOuterBody(L, cfg.tol_feas, "solveEllipsoidFixedAxis");
  FOperatorProgram prog = buildEllipsoidProgram(L, F);
  Params init;
  init.S = Matrix::Identity(prog.s, prog.s) * (0.5 * ball.radius);
  init.tau = 0.5 * ball.radius;
  init.y = prog.frame.transpose() * ball.center;
  init = jitterInit(prog, init, cfg.init_seed);

  BarrierOutcome res = maximize(prog, init, cfg);
  FEllipsoid E{F, prog.frame * res.params.y, res.params.S,
               prog.hasTau() ? res.params.tau : 1.0};
  return {E, res.diag};
}

SolveOutput<GeneralPosition> solveGeneralFixedAxis(const VPolytope& K,
                                                   const HPolytope& L,
                                                   const Subspace& F,
                                                   const SolveConfig& cfg) {
  const ChebyshevBall ball =
      validateOuterBody(L, cfg.tol_feas, "solveGeneralFixedAxis");
  requireFullDimensional(K, "solveGeneralFixedAxis");
  FOperatorProgram prog = buildGeneralProgram(K, L, F);
  const Vector cK = K.centroid();
  double reach = 1e-12;
  for (Eigen::Index k = 0; k < K.numVertices(); ++k)
    reach = std::max(reach, (K.V.col(k) - cK).norm());
  const double sigma = 0.5 * ball.radius / reach;
  Params init;
  init.S = Matrix::Identity(prog.s, prog.s) * sigma;
  init.tau = sigma;
  init.y = prog.frame.transpose() * (ball.center - sigma * cK);
  init = jitterInit(prog, init, cfg.init_seed);

  BarrierOutcome res = maximize(prog, init, cfg);
  GeneralPosition pos{F, res.params.S, prog.hasTau() ? res.params.tau : 1.0,
                      prog.frame * res.params.y};
  return {pos, res.diag};
}

SolveOutput<FEllipsoid> solveLownerFixedAxis(const VPolytope& K,
                                             const Subspace& F,
                                             const SolveConfig& cfg) {
  requireFullDimensional(K, "solveLownerFixedAxis");
  FOperatorProgram prog = buildLownerProgram(K, F);
  const Vector cK = K.centroid();
  double reach = 1e-12;
  for (Eigen::Index k = 0; k < K.numVertices(); ++k)
    reach = std::max(reach, (K.V.col(k) - cK).norm());
  const double sigma = 0.5 / reach;  // B = sigma Id keeps every point inside
  Params init;
  init.S = Matrix::Identity(prog.s, prog.s) * sigma;
  init.tau = sigma;
  init.y = sigma * (prog.frame.transpose() * cK);
  init = jitterInit(prog, init, cfg.init_seed);

  BarrierOutcome res = maximize(prog, init, cfg);
  // Variables are the inverse operator B and y = B z.
  const Eigen::Index s = prog.s, d = prog.d;
  Matrix M1(0, 0);
  if (s > 0) {
    M1 = res.params.S.inverse();
    M1 = 0.5 * (M1 + M1.transpose()).eval();
  }
  const double mu = prog.hasTau() ? 1.0 / res.params.tau : 1.0;
  Vector z_ad(d);
  if (s > 0) z_ad.head(s) = res.params.S.ldlt().solve(res.params.y.head(s));
  if (s < d) z_ad.tail(d - s) = res.params.y.tail(d - s) / res.params.tau;
  FEllipsoid E{F, prog.frame * z_ad, M1, mu};
  return {E, res.diag};
}

namespace {

Vector canonicalAxisRep(const Vector& u) {
  Vector v = u;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0) v = -v;
      break;
    }
  }
  return v;
}

bool lexLess(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - 1e-12) return true;
    if (a[i] > b[i] + 1e-12) return false;
  }
  return false;
}

Subspace axisFromDirection(const Vector& u, Eigen::Index s) {
  if (s == 1) return Subspace::span(u);
  return Subspace::span(u).complement();  // s = d - 1, via the normal line
}

Vector sphericalDir(double theta, double phi) {
  Vector u(3);
  u << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
      std::cos(theta);
  return u;
}

}  // namespace

SolveOutput<FEllipsoid> solveEllipsoidAnyAxis(const HPolytope& L,
                                              Eigen::Index s,
                                              const SolveConfig& cfg) {
  const Eigen::Index d = L.dim();
  if (d > 3)
    throw std::invalid_argument("solveEllipsoidAnyAxis: axis sweep needs d <= 3");
  if (s < 0 || s > d)
    throw std::invalid_argument("solveEllipsoidAnyAxis: invalid axis dimension");
  if (s == 0) return solveEllipsoidFixedAxis(L, Subspace::trivial(d), cfg);
  if (s == d) return solveEllipsoidFixedAxis(L, Subspace::full(d), cfg);

  const auto solveAt = [&](const Vector& u) {
    return solveEllipsoidFixedAxis(L, axisFromDirection(u, s), cfg);
  };
  const auto logvolAt = [&](const Vector& u) {
    return solveAt(u).value.logVolumeFactor();
  };

  std::vector<Vector> grid;
  if (d == 2) {
    const int n = std::max(4, int(std::lround(180.0 / cfg.sweep_coarse_deg_2d)));
    for (int i = 0; i < n; ++i) {
      const double th = M_PI * i / n;
      Vector u(2);
      u << std::cos(th), std::sin(th);
      grid.push_back(u);
    }
  } else {
    const double step = cfg.sweep_coarse_deg_3d * M_PI / 180.0;
    const int nth = std::max(2, int(std::lround(0.5 * M_PI / step)));
    grid.push_back(sphericalDir(0.0, 0.0));
    for (int i = 1; i <= nth; ++i) {
      const double th = 0.5 * M_PI * i / nth;
      const int nph =
          std::max(4, int(std::lround(2.0 * M_PI * std::sin(th) / step)));
      for (int j = 0; j < nph; ++j)
        grid.push_back(sphericalDir(th, 2.0 * M_PI * j / nph));
    }
  }

  std::vector<double> logvol(grid.size());
  parallelFor(Eigen::Index(grid.size()),
              [&](Eigen::Index i) { logvol[size_t(i)] = logvolAt(grid[size_t(i)]); });

  double best = -std::numeric_limits<double>::infinity();
  for (double v : logvol) best = std::max(best, v);
  Vector pickAxis;
  double pickVol = best;
  for (size_t i = 0; i < grid.size(); ++i) {
    if (logvol[i] >= best - 1e-9 * (1.0 + std::abs(best))) {
      const Vector rep = canonicalAxisRep(grid[i]);
      if (pickAxis.size() == 0 || lexLess(rep, canonicalAxisRep(pickAxis)))
        pickAxis = rep;
    }
  }

  // Golden-section refinement around the winning grid direction.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  if (d == 2) {
    const double th0 = std::atan2(pickAxis[1], pickAxis[0]);
    double lo = th0 - M_PI * cfg.sweep_coarse_deg_2d / 180.0;
    double hi = th0 + M_PI * cfg.sweep_coarse_deg_2d / 180.0;
    const auto val = [&](double th) {
      Vector u(2);
      u << std::cos(th), std::sin(th);
      return logvolAt(u);
    };
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = val(x1), f2 = val(x2);
    while (hi - lo > cfg.sweep_refine_rad_2d) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = val(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = val(x1);
      }
    }
    const double th = 0.5 * (lo + hi);
    Vector u(2);
    u << std::cos(th), std::sin(th);
    if (val(th) >= pickVol) pickAxis = u;
  } else {
    double th = std::acos(std::clamp(pickAxis[2], -1.0, 1.0));
    double ph = std::atan2(pickAxis[1], pickAxis[0]);
    double span = cfg.sweep_coarse_deg_3d * M_PI / 180.0;
    const auto val = [&](double a, double b) {
      return logvolAt(sphericalDir(a, b));
    };
    for (int round = 0; round < 24 && span > cfg.sweep_refine_rad_3d; ++round) {
      for (int coord = 0; coord < 2; ++coord) {
        double lo = (coord == 0 ? th : ph) - span;
        double hi = (coord == 0 ? th : ph) + span;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = coord == 0 ? val(x1, ph) : val(th, x1);
        double f2 = coord == 0 ? val(x2, ph) : val(th, x2);
        for (int it = 0; it < 40 && hi - lo > 0.2 * span; ++it) {
          if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = coord == 0 ? val(x2, ph) : val(th, x2);
          } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = coord == 0 ? val(x1, ph) : val(th, x1);
          }
        }
        if (coord == 0) th = 0.5 * (lo + hi);
        else ph = 0.5 * (lo + hi);
      }
      span *= 0.35;
    }
    const Vector u = sphericalDir(th, ph);
    if (logvolAt(u) >= pickVol) pickAxis = u;
  }

  return solveAt(pickAxis);
}

OracleResult oracleGridSearch(const OracleProblem& problem, int resolution) {
  const Eigen::Index d = problem.kind == OracleProblem::Kind::LownerFixed
                             ? problem.K.dim()
                             : problem.L.dim();
  requireDim(d, 2, "oracleGridSearch: 2D problems only");
  const Eigen::Index s = problem.F.dim();
  if (s > 1)
    throw std::invalid_argument("oracleGridSearch: axis dimension <= 1");

  const Matrix Q = adaptedFrame(problem.F);
  const bool lowner = problem.kind == OracleProblem::Kind::LownerFixed;
  const bool general = problem.kind == OracleProblem::Kind::GeneralFixed;

  // Parameter vector: (m1 [if s = 1], mu, y1, y2) in the adapted frame.
  const Eigen::Index np = s + 1 + 2;
  Vector lo(np), hi(np), seed(np);

  if (!lowner) {
    double scaleHi = 0.0;
    Vector boxLo(2), boxHi(2);
    for (Eigen::Index j = 0; j < 2; ++j) {
      Vector c = Vector::Zero(2);
      c[j] = 1.0;
      boxHi[j] = solveLp(problem.L.A, problem.L.b, c).objective;
      boxLo[j] = -solveLp(problem.L.A, problem.L.b, -c).objective;
      scaleHi = std::max(scaleHi, boxHi[j] - boxLo[j]);
    }
    const ChebyshevBall ball = chebyshevBall(problem.L);
    double unitReach = 1.0;
    if (general) {
      const Vector cK = problem.K.centroid();
      for (Eigen::Index k = 0; k < problem.K.numVertices(); ++k)
        unitReach = std::max(unitReach, (problem.K.V.col(k)).norm());
    }
    for (Eigen::Index i = 0; i < s + 1; ++i) {
      lo[i] = 1e-7 * scaleHi;
      hi[i] = 2.0 * scaleHi / (general ? 1.0 : 1.0);
      seed[i] = 0.25 * ball.radius / (general ? unitReach : 1.0);
    }
    const Vector yc = Q.transpose() * ball.center;
    const Vector b1 = Q.transpose() * boxLo, b2 = Q.transpose() * boxHi;
    for (Eigen::Index i = 0; i < 2; ++i) {
      lo[s + 1 + i] = std::min(b1[i], b2[i]) - 0.5 * scaleHi;
      hi[s + 1 + i] = std::max(b1[i], b2[i]) + 0.5 * scaleHi;
      seed[s + 1 + i] = yc[i];
    }
  } else {
    const Vector cK = problem.K.centroid();
    double reach = 1e-12;
    for (Eigen::Index k = 0; k < problem.K.numVertices(); ++k)
      reach = std::max(reach, (problem.K.V.col(k) - cK).norm());
    for (Eigen::Index i = 0; i < s + 1; ++i) {
      lo[i] = 1e-7 * reach;
      hi[i] = 4.0 * reach;
      seed[i] = 2.0 * reach;
    }
    const Vector yc = Q.transpose() * cK;
    for (Eigen::Index i = 0; i < 2; ++i) {
      lo[s + 1 + i] = yc[i] - 2.0 * reach;
      hi[s + 1 + i] = yc[i] + 2.0 * reach;
      seed[s + 1 + i] = yc[i];
    }
  }

  const auto evaluate = [&](const Vector& th, double& score) {
    const double m1 = s == 1 ? th[0] : 1.0;
    const double mu = th[s];
    if (m1 <= 0 || mu <= 0) return false;
    const Vector y = th.tail(2);
    const double logdet = (s == 1 ? std::log(m1) : 0.0) +
                          double(2 - s) * std::log(mu);
    if (!lowner) {
      for (Eigen::Index i = 0; i < problem.L.numFacets(); ++i) {
        const Vector p = Q.transpose() * problem.L.A.row(i).transpose();
        double support = p.dot(y);
        if (!general) {
          Vector Ap(2);
          Ap.head(s) = m1 * p.head(s);
          Ap.tail(2 - s) = mu * p.tail(2 - s);
          support += Ap.norm();
        } else {
          double bestv = -std::numeric_limits<double>::infinity();
          for (Eigen::Index k = 0; k < problem.K.numVertices(); ++k) {
            const Vector v = Q.transpose() * problem.K.V.col(k);
            Vector Av(2);
            Av.head(s) = m1 * v.head(s);
            Av.tail(2 - s) = mu * v.tail(2 - s);
            bestv = std::max(bestv, p.dot(Av));
          }
          support += bestv;
        }
        if (support > problem.L.b[i] + 1e-12 * (1.0 + std::abs(problem.L.b[i])))
          return false;
      }
      score = logdet;
      return true;
    }
    for (Eigen::Index k = 0; k < problem.K.numVertices(); ++k) {
      const Vector v = Q.transpose() * problem.K.V.col(k) - y;
      double q = v.tail(2 - s).squaredNorm() / (mu * mu);
      if (s == 1) q += v[0] * v[0] / (m1 * m1);
      if (q > 1.0 + 1e-12) return false;
    }
    score = -logdet;  // minimization: larger score = smaller volume
    return true;
  };

  Vector bestTh = seed;
  double bestScore = -std::numeric_limits<double>::infinity();
  {
    double v;
    if (evaluate(seed, v)) bestScore = v;
  }

  const int pts = 13;
  Vector curLo = lo, curHi = hi;
  const int passes =
      std::max(6, int(std::ceil(std::log(double(std::max(resolution, 2))) /
                                std::log(2.5)))) +
      4;
  for (int pass = 0; pass < passes; ++pass) {
    std::vector<int> idx(size_t(np), 0);
    Vector th(np);
    while (true) {
      for (Eigen::Index i = 0; i < np; ++i)
        th[i] = curLo[i] +
                (curHi[i] - curLo[i]) * double(idx[size_t(i)]) / double(pts - 1);
      double v;
      if (evaluate(th, v) && v > bestScore) {
        bestScore = v;
        bestTh = th;
      }
      Eigen::Index i = 0;
      while (i < np && ++idx[size_t(i)] == pts) {
        idx[size_t(i)] = 0;
        ++i;
      }
      if (i == np) break;
    }
    for (Eigen::Index i = 0; i < np; ++i) {
      const double half = 0.2 * (curHi[i] - curLo[i]);
      curLo[i] = std::max(lo[i], bestTh[i] - half);
      curHi[i] = std::min(hi[i], bestTh[i] + half);
    }
  }
  if (!std::isfinite(bestScore))
    throw InfeasibleProblem("oracleGridSearch: no feasible point found");

  OracleResult res;
  res.shape_on_f = s == 1 ? Matrix::Constant(1, 1, bestTh[0]) : Matrix(0, 0);
  res.mu = bestTh[s];
  res.center = Q * bestTh.tail(2);
  res.log_volume_factor =
      (s == 1 ? std::log(bestTh[0]) : 0.0) + double(2 - s) * std::log(res.mu);
  return res;
}

namespace {

PerturbationReport perturb(const FOperatorProgram& prog, const Params& sol,
                           int n_trials, unsigned seed, double step) {
  PerturbationReport rep;
  rep.trials = n_trials;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const Vector th = prog.packParams(sol);
  const double J0 = prog.objective(sol);
  Vector dir(th.size());
  for (int t = 0; t < n_trials; ++t) {
    for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] = gauss(rng);
    dir *= step / dir.norm();
    const Params cand = prog.unpackParams(th + dir);
    if (!prog.feasible(cand, 0.0)) continue;
    ++rep.feasible_trials;
    rep.max_improvement =
        std::max(rep.max_improvement, prog.objective(cand) - J0);
  }
  return rep;
}

}  // namespace

PerturbationReport localPerturbationTest(const HPolytope& L, const Subspace& F,
                                         const FEllipsoid& sol, int n_trials,
                                         unsigned seed, double step) {
  FOperatorProgram prog = buildEllipsoidProgram(L, F);
  Params p{sol.shape_on_f, sol.mu, prog.frame.transpose() * sol.center};
  return perturb(prog, p, n_trials, seed, step);
}

PerturbationReport localPerturbationTest(const VPolytope& K, const HPolytope& L,
                                         const Subspace& F,
                                         const GeneralPosition& sol,
                                         int n_trials, unsigned seed,
                                         double step) {
  FOperatorProgram prog = buildGeneralProgram(K, L, F);
  Params p{sol.linear_on_f, sol.mu, prog.frame.transpose() * sol.translation};
  return perturb(prog, p, n_trials, seed, step);
}

}  // namespace revolve
