#include "revolve/io.hpp"

#include "revolve/bodies.hpp"
#include "revolve/constructions.hpp"
#include "revolve/linalg.hpp"
#include "revolve/polytope.hpp"

#include <fstream>
#include <sstream>

namespace revolve {

using nlohmann::json;

namespace {

json vectorToJson(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector vectorFromJson(const json& a, const char* what) {
  if (!a.is_array()) throw ParseError(std::string(what) + ": expected an array");
  Vector v(Eigen::Index(a.size()));
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw ParseError(std::string(what) + ": expected numbers");
    v[Eigen::Index(i)] = a[i].get<double>();
  }
  return v;
}

json rowsToJson(const Matrix& M) {
  json a = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    a.push_back(vectorToJson(M.row(i).transpose()));
  return a;
}

Matrix rowsFromJson(const json& a, const char* what) {
  if (!a.is_array()) throw ParseError(std::string(what) + ": expected an array");
  if (a.empty()) return Matrix(0, 0);
  const Vector first = vectorFromJson(a[0], what);
  Matrix M(Eigen::Index(a.size()), first.size());
  M.row(0) = first.transpose();
  for (size_t i = 1; i < a.size(); ++i) {
    const Vector r = vectorFromJson(a[i], what);
    if (r.size() != M.cols())
      throw ParseError(std::string(what) + ": ragged rows");
    M.row(Eigen::Index(i)) = r.transpose();
  }
  return M;
}

json hpolyToJson(const HPolytope& P) {
  json hs = json::array();
  for (Eigen::Index i = 0; i < P.numFacets(); ++i)
    hs.push_back({{"normal", vectorToJson(P.A.row(i).transpose())},
                  {"offset", P.b[i]}});
  return {{"halfspaces", hs}};
}

HPolytope hpolyFromJson(const json& j) {
  if (!j.contains("halfspaces"))
    throw ParseError("body: missing field 'halfspaces'");
  const json& hs = j.at("halfspaces");
  if (!hs.is_array() || hs.empty())
    throw ParseError("body: 'halfspaces' must be a nonempty array");
  HPolytope P;
  const Vector n0 = vectorFromJson(hs[0].at("normal"), "halfspace normal");
  P.A.resize(Eigen::Index(hs.size()), n0.size());
  P.b.resize(Eigen::Index(hs.size()));
  for (size_t i = 0; i < hs.size(); ++i) {
    const Vector n = vectorFromJson(hs[i].at("normal"), "halfspace normal");
    if (n.size() != P.A.cols()) throw ParseError("halfspaces: mixed dimensions");
    if (!hs[i].contains("offset") || !hs[i].at("offset").is_number())
      throw ParseError("halfspace: missing numeric 'offset'");
    P.A.row(Eigen::Index(i)) = n.transpose();
    P.b[Eigen::Index(i)] = hs[i].at("offset").get<double>();
  }
  return P;
}

json vpolyToJson(const VPolytope& P) {
  return {{"vertices", rowsToJson(P.V.transpose())}};
}

VPolytope vpolyFromJson(const json& j) {
  if (!j.contains("vertices")) throw ParseError("body: missing field 'vertices'");
  const Matrix rows = rowsFromJson(j.at("vertices"), "vertices");
  if (rows.rows() == 0) throw ParseError("body: empty vertex list");
  return VPolytope{rows.transpose()};
}

}  // namespace

std::string problemKindName(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::EllipsoidFixed: return "ellipsoid-fixed";
    case ProblemKind::EllipsoidAny: return "ellipsoid-any";
    case ProblemKind::GeneralFixed: return "general-fixed";
    case ProblemKind::LownerFixed: return "lowner-fixed";
  }
  return "?";
}

ProblemKind problemKindFromName(const std::string& name) {
  if (name == "ellipsoid-fixed") return ProblemKind::EllipsoidFixed;
  if (name == "ellipsoid-any") return ProblemKind::EllipsoidAny;
  if (name == "general-fixed") return ProblemKind::GeneralFixed;
  if (name == "lowner-fixed") return ProblemKind::LownerFixed;
  throw ParseError("unknown problem kind '" + name + "'");
}

InstanceFile parseInstance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance: invalid JSON: ") + e.what());
  }
  InstanceFile inst;
  if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer())
    throw ParseError("instance: missing integer 'schema_version'");
  inst.schema_version = j.at("schema_version").get<int>();
  if (inst.schema_version != 1)
    throw ParseError("instance: unsupported schema_version");
  if (!j.contains("problem") || !j.at("problem").is_string())
    throw ParseError("instance: missing string 'problem'");
  inst.problem = problemKindFromName(j.at("problem").get<std::string>());
  inst.symmetric = j.value("symmetric", false);
  if (j.contains("body_L")) inst.body_L = hpolyFromJson(j.at("body_L"));
  if (j.contains("body_K")) inst.body_K = vpolyFromJson(j.at("body_K"));
  if (j.contains("axis")) {
    const json& ax = j.at("axis");
    if (ax.contains("basis_rows"))
      inst.axis_rows = rowsFromJson(ax.at("basis_rows"), "axis basis_rows");
    if (ax.contains("dim")) inst.axis_dim = ax.at("dim").get<Eigen::Index>();
  }
  if (j.contains("meta")) inst.meta = j.at("meta");

  const bool needL = inst.problem != ProblemKind::LownerFixed;
  if (needL && !inst.body_L)
    throw ParseError("instance: this problem kind requires 'body_L'");
  if (inst.problem == ProblemKind::LownerFixed && !inst.body_K)
    throw ParseError("instance: lowner-fixed requires 'body_K'");
  if (inst.problem == ProblemKind::GeneralFixed && !inst.body_K)
    throw ParseError("instance: general-fixed requires 'body_K'");
  if (inst.problem == ProblemKind::EllipsoidAny && inst.axis_dim < 0)
    throw ParseError("instance: ellipsoid-any requires axis.dim");
  return inst;
}

std::string serializeInstance(const InstanceFile& inst) {
  json j;
  j["schema_version"] = inst.schema_version;
  j["problem"] = problemKindName(inst.problem);
  j["symmetric"] = inst.symmetric;
  if (inst.body_L) j["body_L"] = hpolyToJson(*inst.body_L);
  if (inst.body_K) j["body_K"] = vpolyToJson(*inst.body_K);
  json ax;
  if (inst.axis_rows.size() > 0) ax["basis_rows"] = rowsToJson(inst.axis_rows);
  if (inst.axis_dim >= 0) ax["dim"] = inst.axis_dim;
  if (!ax.is_null()) j["axis"] = ax;
  if (!inst.meta.is_null()) j["meta"] = inst.meta;
  return j.dump(2) + "\n";
}

namespace {

json subspaceToJson(const Subspace& F) {
  return {{"basis_rows", rowsToJson(F.basis().transpose())},
          {"ambient_dim", F.ambientDim()}};
}

Subspace subspaceFromJson(const json& j) {
  const Eigen::Index d = j.at("ambient_dim").get<Eigen::Index>();
  return Subspace::fromSpanningRows(d, rowsFromJson(j.at("basis_rows"), "basis"));
}

json certificateToJson(const JohnCertificate& cert) {
  json pairs = json::array();
  for (const ContactPair& cp : cert.pairs)
    pairs.push_back({{"v", vectorToJson(cp.v)}, {"p", vectorToJson(cp.p)}});
  json residuals = {{"decomposition", cert.residual_decomposition},
                    {"zerosum", cert.residual_zerosum},
                    {"trace", cert.residual_trace}};
  if (cert.residual_symmetry) residuals["symmetry"] = *cert.residual_symmetry;
  return {{"pairs", pairs},
          {"weights", vectorToJson(cert.weights)},
          {"residuals", residuals}};
}

JohnCertificate certificateFromJson(const json& j) {
  JohnCertificate cert;
  for (const json& p : j.at("pairs"))
    cert.pairs.push_back(
        {vectorFromJson(p.at("v"), "pair v"), vectorFromJson(p.at("p"), "pair p")});
  cert.weights = vectorFromJson(j.at("weights"), "weights");
  const json& r = j.at("residuals");
  cert.residual_decomposition = r.at("decomposition").get<double>();
  cert.residual_zerosum = r.at("zerosum").get<double>();
  cert.residual_trace = r.at("trace").get<double>();
  if (r.contains("symmetry")) cert.residual_symmetry = r.at("symmetry").get<double>();
  return cert;
}

const char* statusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

SolveStatus statusFromName(const std::string& s) {
  if (s == "optimal") return SolveStatus::Optimal;
  if (s == "max_iterations") return SolveStatus::MaxIterations;
  if (s == "infeasible") return SolveStatus::Infeasible;
  throw ParseError("unknown solver status '" + s + "'");
}

}  // namespace

ResultFile parseResult(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("result: invalid JSON: ") + e.what());
  }
  ResultFile res;
  res.schema_version = j.at("schema_version").get<int>();
  if (res.schema_version != 1)
    throw ParseError("result: unsupported schema_version");
  res.instance = parseInstance(j.at("instance").dump());
  if (j.contains("solution")) {
    const json& s = j.at("solution");
    const std::string kind = s.at("kind").get<std::string>();
    if (kind == "f_ellipsoid") {
      FEllipsoid E;
      E.axis = subspaceFromJson(s.at("axis"));
      E.center = vectorFromJson(s.at("center"), "center");
      E.shape_on_f = rowsFromJson(s.at("shape_on_f"), "shape_on_f");
      E.mu = s.at("mu").get<double>();
      res.ellipsoid = E;
    } else if (kind == "general_position") {
      GeneralPosition P;
      P.axis = subspaceFromJson(s.at("axis"));
      P.linear_on_f = rowsFromJson(s.at("linear_on_f"), "linear_on_f");
      P.mu = s.at("mu").get<double>();
      P.translation = vectorFromJson(s.at("translation"), "translation");
      res.position = P;
    } else {
      throw ParseError("result: unknown solution kind '" + kind + "'");
    }
  }
  if (j.contains("certificate"))
    res.certificate = certificateFromJson(j.at("certificate"));
  res.certificate_message = j.value("certificate_message", std::string());
  if (j.contains("bounds"))
    for (const json& b : j.at("bounds"))
      res.bounds.push_back({b.at("name").get<std::string>(),
                            b.at("lhs").get<double>(), b.at("rhs").get<double>()});
  if (j.contains("diagnostics")) {
    const json& dgn = j.at("diagnostics");
    res.diagnostics.status = statusFromName(dgn.at("status").get<std::string>());
    res.diagnostics.newton_iterations = dgn.value("newton_iterations", 0);
    res.diagnostics.barrier_gap = dgn.value("barrier_gap", 0.0);
    res.diagnostics.kkt_residual = dgn.value("kkt_residual", 0.0);
    res.diagnostics.wall_time_ms = dgn.value("wall_time_ms", 0.0);
    res.diagnostics.message = dgn.value("message", std::string());
  }
  if (j.contains("oracle_gap")) res.oracle_gap = j.at("oracle_gap").get<double>();
  return res;
}

std::string serializeResult(const ResultFile& res) {
  json j;
  j["schema_version"] = res.schema_version;
  j["instance"] = json::parse(serializeInstance(res.instance));
  if (res.ellipsoid) {
    const FEllipsoid& E = *res.ellipsoid;
    j["solution"] = {{"kind", "f_ellipsoid"},
                     {"axis", subspaceToJson(E.axis)},
                     {"center", vectorToJson(E.center)},
                     {"shape_on_f", rowsToJson(E.shape_on_f)},
                     {"mu", E.mu}};
  } else if (res.position) {
    const GeneralPosition& P = *res.position;
    j["solution"] = {{"kind", "general_position"},
                     {"axis", subspaceToJson(P.axis)},
                     {"linear_on_f", rowsToJson(P.linear_on_f)},
                     {"mu", P.mu},
                     {"translation", vectorToJson(P.translation)}};
  }
  if (res.certificate) j["certificate"] = certificateToJson(*res.certificate);
  if (!res.certificate_message.empty())
    j["certificate_message"] = res.certificate_message;
  if (!res.bounds.empty()) {
    json bs = json::array();
    for (const BoundReport& b : res.bounds)
      bs.push_back({{"name", b.name},
                    {"lhs", b.lhs},
                    {"rhs", b.rhs},
                    {"margin", b.margin()},
                    {"pass", b.pass()}});
    j["bounds"] = bs;
  }
  j["diagnostics"] = {{"status", statusName(res.diagnostics.status)},
                      {"newton_iterations", res.diagnostics.newton_iterations},
                      {"barrier_gap", res.diagnostics.barrier_gap},
                      {"kkt_residual", res.diagnostics.kkt_residual},
                      {"wall_time_ms", res.diagnostics.wall_time_ms},
                      {"message", res.diagnostics.message}};
  if (res.oracle_gap) j["oracle_gap"] = *res.oracle_gap;
  return j.dump(2) + "\n";
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file '" + path + "'");
  out << content;
}

InstanceFile generateInstance(const std::string& family, const GenParams& p) {
  InstanceFile inst;
  if (family == "cube") {
    inst.problem = ProblemKind::EllipsoidFixed;
    inst.symmetric = true;
    inst.body_L = cubeBody(p.d);
    inst.axis_rows = Matrix::Zero(1, p.d);
    inst.axis_rows(0, 0) = 1.0;
    inst.meta = {{"family", "cube"}, {"d", p.d}};
  } else if (family == "simplex-john") {
    inst.problem = ProblemKind::EllipsoidFixed;
    inst.body_L = simplexJohn(p.d);
    const Matrix q = regularSimplexDirections(p.d);
    inst.axis_rows = q.col(0).transpose();  // a vertex axis
    inst.meta = {{"family", "simplex-john"}, {"d", p.d}};
  } else if (family == "simplex-lowner") {
    inst.problem = ProblemKind::LownerFixed;
    inst.body_K = simplexLowner(p.d);
    inst.axis_rows = Matrix::Identity(p.d, p.d);
    inst.meta = {{"family", "simplex-lowner"}, {"d", p.d}};
  } else if (family == "cross-polytope") {
    inst.problem = ProblemKind::EllipsoidFixed;
    inst.symmetric = true;
    inst.body_L = crossPolytopeBody(p.d);
    inst.axis_rows = Matrix::Zero(1, p.d);
    inst.axis_rows(0, 0) = 1.0;
    inst.meta = {{"family", "cross-polytope"}, {"d", p.d}};
  } else if (family == "random-2d") {
    inst.problem = ProblemKind::EllipsoidFixed;
    inst.body_L = randomPolygon2D(p.seed, p.k);
    inst.axis_rows = Matrix::Zero(1, 2);
    inst.axis_rows(0, 0) = 1.0;
    inst.meta = {{"family", "random-2d"}, {"seed", p.seed}, {"k", p.k}};
  } else if (family == "appendix-a") {
    const DilatedSimplex ds = buildDilatedSimplex(p.n, p.gamma, p.t);
    inst.problem = ProblemKind::EllipsoidFixed;
    inst.body_L = HPolytope{ds.v.transpose(), Vector::Ones(p.n + 1)};
    inst.body_K = VPolytope{ds.v};
    inst.axis_rows = Matrix(0, 0);  // trivial axis: largest ball = inradius
    inst.meta = {{"family", "appendix-a"},
                 {"n", p.n},
                 {"gamma", p.gamma},
                 {"t", p.t},
                 {"sigma", ds.sigma},
                 {"inradius_closed_form", polarInradiusClosedForm(ds)}};
  } else if (family == "lifted") {
    const LiftedConfiguration lc = liftedConfiguration(p.d, p.s, p.m, p.eps);
    inst.problem = ProblemKind::EllipsoidFixed;
    inst.body_L = HPolytope{lc.b.transpose(), Vector::Ones(p.m)};
    inst.axis_rows = Matrix(0, 0);
    inst.meta = {{"family", "lifted"},
                 {"d", p.d},
                 {"s", p.s},
                 {"m", p.m},
                 {"eps", p.eps},
                 {"t", lc.t},
                 {"theta", lc.theta},
                 {"beta", std::vector<double>(lc.beta.data(),
                                              lc.beta.data() + lc.beta.size())},
                 {"target_inradius",
                  (1.0 - p.eps) * double(p.d) / double(p.d - p.s)}};
  } else if (family == "bad-ellipsoid") {
    inst.problem = ProblemKind::EllipsoidAny;
    inst.symmetric = true;
    inst.axis_dim = p.s;
    Vector semi(p.d);
    for (Eigen::Index i = 0; i < p.d; ++i)
      semi[i] = std::pow(p.lambda, double(i + 1));
    if (p.d == 3) {
      inst.body_L = ellipsoidInnerApprox3D(semi, 14, 28);
    } else if (p.d == 2) {
      HPolytope L = ellipseApprox2D(semi[0], semi[1], 256);
      L.b *= std::cos(M_PI / 256);
      inst.body_L = L;
    } else {
      throw std::invalid_argument("bad-ellipsoid: d must be 2 or 3");
    }
    inst.meta = {{"family", "bad-ellipsoid"},
                 {"d", p.d},
                 {"s", p.s},
                 {"lambda", p.lambda},
                 {"semi_axes",
                  std::vector<double>(semi.data(), semi.data() + semi.size())}};
  } else if (family == "isosceles") {
    inst.problem = ProblemKind::GeneralFixed;
    Vector u(2);
    u << 1, 1;
    inst.body_K = triangleWithAxis(u);
    inst.body_L = cubeBody(2);
    inst.axis_rows = u.normalized().transpose();
    inst.meta = {{"family", "isosceles"}};
  } else {
    throw ParseError("unknown instance family '" + family + "'");
  }
  return inst;
}

}  // namespace revolve
