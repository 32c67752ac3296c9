#include "revolve/constructions.hpp"

#include "revolve/linalg.hpp"
#include "revolve/lp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace revolve {

DilatedSimplex buildDilatedSimplex(Eigen::Index n, double gamma, double t) {
  if (n < 2) throw std::invalid_argument("buildDilatedSimplex: n >= 2");
  if (!(n * gamma < 1.0))
    throw std::invalid_argument("buildDilatedSimplex: needs n gamma < 1");
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("buildDilatedSimplex: needs t in (0,1)");
  const double ng = double(n) * gamma;
  const double root = std::sqrt(1.0 - t * t);

  DilatedSimplex out;
  out.last_vertex_inside = ng / (1.0 - ng) * root < 1.0;
  out.n = n;
  out.gamma = gamma;
  out.t = t;
  out.a = Vector::Ones(n) / std::sqrt(double(n));

  // p_i has (n-1)/n at slot i and -1/n elsewhere; q_i = p_i / |p_i|.
  out.q.resize(n, n);
  const double pnorm = std::sqrt(double(n - 1) / double(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector p = Vector::Constant(n, -1.0 / double(n));
    p[i] = double(n - 1) / double(n);
    out.q.col(i) = p / pnorm;
  }

  out.v.resize(n, n + 1);
  for (Eigen::Index i = 0; i < n; ++i)
    out.v.col(i) = t * out.q.col(i) + root * out.a;
  out.v.col(n) = -(ng / (1.0 - ng)) * root * out.a;

  out.weights = Vector::Constant(n + 1, gamma);
  out.weights[n] = 1.0 - ng;

  out.sigma = 0.0;
  for (Eigen::Index i = 0; i <= n; ++i)
    out.sigma += out.weights[i] * out.v.col(i).squaredNorm();
  return out;
}

PolarSimplexVertices polarSimplexVertices(const DilatedSimplex& inst) {
  const double ng = double(inst.n) * inst.gamma;
  const double root = std::sqrt(1.0 - inst.t * inst.t);
  PolarSimplexVertices out;
  out.x.resize(inst.n, inst.n + 1);
  for (Eigen::Index i = 0; i < inst.n; ++i)
    out.x.col(i) = -(1.0 / ng) * (double(inst.n - 1) / inst.t) * inst.q.col(i) -
                   ((1.0 - ng) / ng) * (1.0 / root) * inst.a;
  out.x.col(inst.n) = inst.a / root;
  out.y = (1.0 / ng) * (inst.q.col(0) / inst.t) -
          ((1.0 - ng) / ng) * (inst.a / root);
  return out;
}

double polarInradiusClosedForm(const DilatedSimplex& inst) {
  return (1.0 / (double(inst.n) * inst.gamma)) /
         (1.0 + std::sqrt(1.0 - inst.t * inst.t));
}

double sigmaClosedForm(Eigen::Index n, double gamma, double t) {
  const double ng = double(n) * gamma;
  return ng * (1.0 + ng / (1.0 - ng) * (1.0 - t * t));
}

LiftedConfiguration liftedConfiguration(Eigen::Index d, Eigen::Index s,
                                        Eigen::Index m, double eps) {
  const Eigen::Index n = d - s;
  if (n < 2) throw std::invalid_argument("liftedConfiguration: needs d - s >= 2");
  if (m <= n) throw std::invalid_argument("liftedConfiguration: needs m > d - s");
  if (!(eps > 0)) throw std::invalid_argument("liftedConfiguration: eps > 0");
  const double gamma = 1.0 / double(d);
  const double theta = double(n) / double(d);
  const double target = (1.0 - eps) * double(d) / double(n);

  double t = 1.0 - 1e-3;
  LiftedConfiguration out;
  for (int iter = 0; iter < 40; ++iter) {
    const DilatedSimplex inst = buildDilatedSimplex(n, gamma, t);
    if (!inst.last_vertex_inside) {
      t = 1.0 - 0.5 * (1.0 - t);
      continue;
    }
    const double scale = std::sqrt(theta / inst.sigma);
    Matrix b(n, m);
    Vector beta(m);
    for (Eigen::Index i = 0; i < n; ++i) {
      b.col(i) = scale * inst.v.col(i);
      beta[i] = gamma;
    }
    for (Eigen::Index i = n; i < m; ++i) {
      b.col(i) = scale * inst.v.col(n);
      beta[i] = (1.0 - double(n) * gamma) / double(m - n);
    }
    const HPolytope polar{b.transpose(), Vector::Ones(m)};
    const double inr = chebyshevBall(polar).radius;
    if (inr >= target) {
      out.b = b;
      out.beta = beta;
      out.theta = theta;
      out.t = t;
      out.polar_inradius = inr;
      return out;
    }
    t = 1.0 - 0.5 * (1.0 - t);
  }
  throw std::runtime_error("liftedConfiguration: dilation search did not finish");
}

double majorizationValue(const MajorizationPoint& pt, double tol) {
  const Eigen::Index m = pt.x.size();
  requireDim(pt.delta.size(), m, "majorizationValue");
  const double lo = 1.0 / double(pt.d + 1);
  double sx = 0.0, sdelta = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (pt.x[i] < lo - 1e-12 || pt.x[i] > 1.0 + 1e-12)
      throw std::invalid_argument("majorizationValue: x out of range");
    if (pt.delta[i] < -1e-12 || pt.delta[i] > 1.0 + 1e-12)
      throw std::invalid_argument("majorizationValue: delta out of range");
    sx += pt.delta[i] * pt.x[i];
    sdelta += pt.delta[i];
  }
  if (std::abs(sx - double(pt.s + 1)) > tol ||
      std::abs(sdelta - double(pt.d + 1)) > tol)
    throw std::invalid_argument("majorizationValue: constraint violation");
  double lnW = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    lnW += 0.5 * pt.delta[i] * pt.x[i] * std::log(pt.x[i]);
  return std::exp(lnW);
}

double majorizationBound(Eigen::Index d, Eigen::Index s) {
  const double L = double(s + 1) / (2.0 * double(d + 1));
  return std::pow(double(s + 1), L) / std::sqrt(double(d + 1));
}

MajorizationPoint majorizationMaximizer(Eigen::Index d, Eigen::Index s,
                                        Eigen::Index m) {
  if (m < d + 1)
    throw std::invalid_argument("majorizationMaximizer: needs m >= d + 1");
  MajorizationPoint pt;
  pt.d = d;
  pt.s = s;
  pt.x = Vector::Constant(m, 1.0 / double(d + 1));
  pt.delta = Vector::Zero(m);
  for (Eigen::Index i = 0; i < s; ++i) pt.x[i] = 1.0;
  pt.x[s] = double(s + 1) / double(d + 1);
  for (Eigen::Index i = 0; i <= s; ++i) pt.delta[i] = 1.0;
  for (Eigen::Index i = s + 1; i <= d; ++i) pt.delta[i] = 1.0;
  return pt;
}

MajorizationSearch majorizationBruteForce(Eigen::Index d, Eigen::Index s,
                                          Eigen::Index m, int lambda_grid) {
  if (m < d + 2)
    throw std::invalid_argument("majorizationBruteForce: needs m >= d + 2");
  MajorizationSearch best;
  best.max_value = -1.0;
  double best_lambda = 0.75;
  const double lo = 1.0 / double(d + 1);

  // Weight patterns are (1 x d, lambda, 1 - lambda, 0 x (m - d - 2)); the
  // x-extremes put every coordinate at a box end except one. Coordinates are
  // grouped by their weight value, so only counts matter.
  const auto consider = [&](const Vector& x, const Vector& delta) {
    MajorizationPoint pt{x, delta, d, s};
    double sx = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) sx += delta[i] * x[i];
    if (std::abs(sx - double(s + 1)) > 1e-9) return;
    double lnW = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
      lnW += 0.5 * delta[i] * x[i] * std::log(x[i]);
    const double W = std::exp(lnW);
    if (W > best.max_value) {
      best.max_value = W;
      best.argmax = pt;
    }
  };

  const auto sweepLambda = [&](double lambda) {
    // Groups: d ones, one lambda, one (1 - lambda), m - d - 2 zeros.
    // Choose how many of the "one" coordinates sit at x = 1 (k1), whether
    // the lambda / (1 - lambda) coordinates sit at 1 or lo (2 x 2), and
    // which group hosts the single interior coordinate.
    for (Eigen::Index k1 = 0; k1 <= d; ++k1)
      for (int xl = 0; xl < 2; ++xl)
        for (int xr = 0; xr < 2; ++xr)
          for (int host = 0; host < 3; ++host) {
            // host: 0 = a "one" coordinate, 1 = lambda, 2 = 1 - lambda
            Vector x = Vector::Constant(m, lo);
            Vector delta = Vector::Zero(m);
            for (Eigen::Index i = 0; i < d; ++i) delta[i] = 1.0;
            delta[d] = lambda;
            delta[d + 1] = 1.0 - lambda;
            for (Eigen::Index i = 0; i < k1; ++i) x[i] = 1.0;
            x[d] = xl ? 1.0 : lo;
            x[d + 1] = xr ? 1.0 : lo;
            double dHost;
            Eigen::Index hostIdx;
            if (host == 0) {
              if (k1 >= d) continue;  // interior coordinate must be free
              hostIdx = k1;           // the first "one" coordinate still at lo
              dHost = 1.0;
            } else if (host == 1) {
              hostIdx = d;
              dHost = lambda;
            } else {
              hostIdx = d + 1;
              dHost = 1.0 - lambda;
            }
            if (dHost < 1e-12) continue;
            double sx = 0.0;
            for (Eigen::Index i = 0; i < m; ++i)
              if (i != hostIdx) sx += delta[i] * x[i];
            const double xi = (double(s + 1) - sx) / dHost;
            if (xi < lo - 1e-12 || xi > 1.0 + 1e-12) continue;
            x[hostIdx] = std::clamp(xi, lo, 1.0);
            const double before = best.max_value;
            consider(x, delta);
            if (best.max_value > before) best_lambda = lambda;
          }
  };

  for (int g = 0; g <= lambda_grid; ++g)
    sweepLambda(0.5 + 0.5 * double(g) / double(lambda_grid));
  // Refine around the incumbent: the value is smooth in lambda for a fixed
  // pattern, so a shrinking local sweep pins the maximizing lambda exactly.
  double span = 0.5 / double(lambda_grid);
  for (int round = 0; round < 8; ++round) {
    const double center = best_lambda;
    for (int g = -100; g <= 100; ++g) {
      const double lambda = std::clamp(center + span * double(g) / 100.0, 0.5, 1.0);
      sweepLambda(lambda);
    }
    span /= 50.0;
  }

  // The closed-form maximizer is itself a candidate.
  const MajorizationPoint tilde = majorizationMaximizer(d, s, m);
  consider(tilde.x, tilde.delta);
  return best;
}

std::vector<MajorizationPoint> sampleMajorizationPoints(Eigen::Index d,
                                                        Eigen::Index s,
                                                        Eigen::Index m,
                                                        int count,
                                                        unsigned seed) {
  if (m < d + 2)
    throw std::invalid_argument("sampleMajorizationPoints: needs m >= d + 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const double lo = 1.0 / double(d + 1);
  std::vector<MajorizationPoint> out;
  out.reserve(size_t(count));
  while (Eigen::Index(out.size()) < count) {
    // delta: 1 - (uniform point of the standard simplex), so that the sum
    // is m - 1 = d + 1 and every entry stays in [0, 1].
    Vector eta(m);
    double tot = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      eta[i] = expo(rng);
      tot += eta[i];
    }
    Vector delta = Vector::Ones(m) - eta / tot * (double(m) - double(d + 1));
    if ((delta.array() < 0).any()) continue;
    if (s == d) {
      // The first-moment cap binds: every weighted coordinate sits at 1.
      MajorizationPoint pt{Vector::Ones(m), delta, d, s};
      out.push_back(std::move(pt));
      continue;
    }
    Vector x(m);
    for (Eigen::Index i = 0; i < m; ++i) x[i] = lo + (1.0 - lo) * unif(rng);
    double sx = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) sx += delta[i] * x[i];
    // Slide x along a segment toward an extreme so the first moment matches.
    const double target = double(s + 1);
    if (sx < target) {
      const double cap = delta.sum();  // value at x = all ones
      if (cap <= target) continue;
      const double tmix = (target - sx) / (cap - sx);
      x = x + tmix * (Vector::Ones(m) - x);
    } else {
      const double floor_val = delta.sum() * lo;
      if (floor_val >= target) continue;
      const double tmix = (sx - target) / (sx - floor_val);
      x = x + tmix * (Vector::Constant(m, lo) - x);
    }
    MajorizationPoint pt{x, delta, d, s};
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace revolve
