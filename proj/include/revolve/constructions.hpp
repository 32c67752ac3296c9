#pragma once

#include "revolve/types.hpp"

#include <vector>

namespace revolve {

/// Directionally dilated regular simplex in R^n along a = (1,...,1)/sqrt(n):
/// vertices v_i = t q_i + sqrt(1 - t^2) a for i <= n and
/// v_{n+1} = -(n g / (1 - n g)) sqrt(1 - t^2) a, with weights (g, ..., g,
/// 1 - n g) balancing the vertex sum.
struct DilatedSimplex {
  Eigen::Index n = 2;
  double gamma = 0.0;
  double t = 0.0;
  Vector a;       // unit diagonal direction
  Matrix q;       // n columns: unit vectors orthogonal to a
  Matrix v;       // n + 1 columns: the vertices
  Vector weights; // (gamma, ..., gamma, 1 - n gamma)
  double sigma = 0.0;  // weighted second moment of the vertices
  // Whether |v_{n+1}| < 1. The closed-form polar vertices and inradius hold
  // either way; the unit-ball moment configurations require it (it always
  // holds with t close to 1).
  bool last_vertex_inside = false;
};

DilatedSimplex buildDilatedSimplex(Eigen::Index n, double gamma, double t);

/// Closed-form vertices of the polar simplex and the third vertex of its
/// section by span{x_1, x_n1}.
struct PolarSimplexVertices {
  Matrix x;   // n + 1 columns: x_1..x_n, x_{n+1}
  Vector y;   // third vertex of the 2D section triangle
};
PolarSimplexVertices polarSimplexVertices(const DilatedSimplex& inst);

/// Closed-form inradius of the polar simplex:
/// R(t) = (1 / (n gamma)) / (1 + sqrt(1 - t^2)).
double polarInradiusClosedForm(const DilatedSimplex& inst);

/// Weighted second moment sigma(t) in closed form.
double sigmaClosedForm(Eigen::Index n, double gamma, double t);

/// Scaled configuration with m >= n + 1 points in R^(d-s) whose weighted
/// moments are (1, 0, (d-s)/d) and whose polar hull has inradius at least
/// (1 - eps) d / (d - s). The dilation parameter is found by increasing t
/// toward 1 against the linear-programming inradius.
struct LiftedConfiguration {
  Matrix b;       // m columns in R^(d-s)
  Vector beta;    // m positive weights
  double theta = 0.0;
  double t = 0.0;
  double polar_inradius = 0.0;
};
LiftedConfiguration liftedConfiguration(Eigen::Index d, Eigen::Index s,
                                        Eigen::Index m, double eps);

/// Majorization functional W(x, delta) = prod x_i^(delta_i x_i / 2) under
/// sum delta_i x_i = s + 1, sum delta_i = d + 1, x_i in [1/(d+1), 1],
/// delta_i in [0, 1].
struct MajorizationPoint {
  Vector x;
  Vector delta;
  Eigen::Index d = 0, s = 0;
};

double majorizationValue(const MajorizationPoint& pt, double tol = 1e-10);

/// The proven upper bound (s+1)^((s+1)/(2(d+1))) / (d+1)^(1/2).
double majorizationBound(Eigen::Index d, Eigen::Index s);

/// The majorizer point: x = (1 x s, (s+1)/(d+1), 1/(d+1) x (m-s-1)) with a
/// 0/1 weight pattern; attains the bound.
MajorizationPoint majorizationMaximizer(Eigen::Index d, Eigen::Index s,
                                        Eigen::Index m);

/// Enumerates the extreme-point candidates (0/1 weight patterns with one
/// fractional lambda pair, box-extreme x with one interior coordinate) over
/// a lambda grid, plus the closed-form maximizer.
struct MajorizationSearch {
  double max_value = 0.0;
  MajorizationPoint argmax;
};
MajorizationSearch majorizationBruteForce(Eigen::Index d, Eigen::Index s,
                                          Eigen::Index m,
                                          int lambda_grid = 10000);

/// Random feasible points of the constraint set (seeded), for sampling
/// checks of the bound.
std::vector<MajorizationPoint> sampleMajorizationPoints(Eigen::Index d,
                                                        Eigen::Index s,
                                                        Eigen::Index m,
                                                        int count,
                                                        unsigned seed);

}  // namespace revolve
