#include "revolve/svg.hpp"

#include "revolve/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace revolve {
namespace {

std::string pathFromHull(const Matrix& hull) {
  std::ostringstream ss;
  for (Eigen::Index i = 0; i < hull.cols(); ++i)
    ss << (i == 0 ? "M" : "L") << hull(0, i) << " " << -hull(1, i) << " ";
  ss << "Z";
  return ss.str();
}

}  // namespace

std::string renderResultSvg(const ResultFile& res) {
  if (res.instance.ambientDim() != 2)
    throw std::invalid_argument("renderResultSvg: only 2D results");
  if (!res.instance.body_L && !res.instance.body_K)
    throw std::invalid_argument("renderResultSvg: no body to draw");

  std::ostringstream body;
  double lo = -1, hi = 1;
  Matrix hullL;
  if (res.instance.body_L) {
    hullL = convexHull2D(enumerateVertices(*res.instance.body_L));
    lo = hullL.minCoeff();
    hi = hullL.maxCoeff();
    body << "<path d=\"" << pathFromHull(hullL)
         << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"0.02\"/>\n";
  }

  Vector center = Vector::Zero(2);
  if (res.ellipsoid) {
    const FEllipsoid& E = *res.ellipsoid;
    center = E.center;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(E.fullOperator());
    const double r1 = eig.eigenvalues()[0], r2 = eig.eigenvalues()[1];
    const Vector v2 = eig.eigenvectors().col(1);
    const double angle = std::atan2(v2[1], v2[0]) * 180.0 / M_PI;
    body << "<ellipse cx=\"0\" cy=\"0\" rx=\"" << r2 << "\" ry=\"" << r1
         << "\" transform=\"translate(" << E.center[0] << " " << -E.center[1]
         << ") rotate(" << -angle
         << ")\" fill=\"#4a90d9\" fill-opacity=\"0.25\" stroke=\"#1a50a0\" "
            "stroke-width=\"0.02\"/>\n";
  } else if (res.position && res.instance.body_K) {
    const GeneralPosition& P = *res.position;
    center = P.translation;
    const Matrix A = P.fullOperator();
    Matrix img = (A * res.instance.body_K->V).colwise() + P.translation;
    body << "<path d=\"" << pathFromHull(convexHull2D(img))
         << "\" fill=\"#4a90d9\" fill-opacity=\"0.25\" stroke=\"#1a50a0\" "
            "stroke-width=\"0.02\"/>\n";
  }

  // Axis line through the solution center.
  const Subspace F = res.instance.axis();
  if (F.dim() == 1) {
    const Vector u = F.basis().col(0);
    const double reach = 2.0 * std::max(std::abs(lo), std::abs(hi));
    body << "<line x1=\"" << center[0] - reach * u[0] << "\" y1=\""
         << -(center[1] - reach * u[1]) << "\" x2=\"" << center[0] + reach * u[0]
         << "\" y2=\"" << -(center[1] + reach * u[1])
         << "\" stroke=\"#888\" stroke-width=\"0.01\" stroke-dasharray=\"0.06 "
            "0.04\"/>\n";
  }

  if (res.certificate) {
    for (const ContactPair& cp : res.certificate->pairs) {
      const Vector x = center + cp.v;
      body << "<circle cx=\"" << x[0] << "\" cy=\"" << -x[1]
           << "\" r=\"0.035\" fill=\"#c0392b\"/>\n";
    }
  }

  const double pad = 0.15 * (hi - lo) + 0.1;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << lo - pad
      << " " << lo - pad << " " << (hi - lo) + 2 * pad << " "
      << (hi - lo) + 2 * pad << "\">\n"
      << body.str() << "</svg>\n";
  return out.str();
}

}  // namespace revolve
