#pragma once

#include "revolve/bounds.hpp"
#include "revolve/certificates.hpp"
#include "revolve/types.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace revolve {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProblemKind { EllipsoidFixed, EllipsoidAny, GeneralFixed, LownerFixed };

std::string problemKindName(ProblemKind kind);
ProblemKind problemKindFromName(const std::string& name);

/// On-disk description of one problem instance (UTF-8 JSON, schema 1).
struct InstanceFile {
  int schema_version = 1;
  ProblemKind problem = ProblemKind::EllipsoidFixed;
  bool symmetric = false;
  std::optional<HPolytope> body_L;
  std::optional<VPolytope> body_K;
  Matrix axis_rows;          // raw spanning rows (orthonormalized on use)
  Eigen::Index axis_dim = -1;  // dimension-only axis (any-axis mode)
  nlohmann::json meta;       // generator parameters and derived values

  Eigen::Index ambientDim() const {
    if (body_L) return body_L->dim();
    if (body_K) return body_K->dim();
    return 0;
  }
  Subspace axis() const {
    return Subspace::fromSpanningRows(ambientDim(), axis_rows);
  }
};

InstanceFile parseInstance(const std::string& text);
std::string serializeInstance(const InstanceFile& inst);

/// Solution + certificate + bound reports + solver diagnostics, with the
/// instance embedded so downstream commands are self-contained.
struct ResultFile {
  int schema_version = 1;
  InstanceFile instance;
  std::optional<FEllipsoid> ellipsoid;
  std::optional<GeneralPosition> position;
  std::optional<JohnCertificate> certificate;
  std::string certificate_message;
  std::vector<BoundReport> bounds;
  SolveDiagnostics diagnostics;
  std::optional<double> oracle_gap;
};

ResultFile parseResult(const std::string& text);
std::string serializeResult(const ResultFile& res);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, const std::string& content);

/// Deterministic instance generators for the named families.
struct GenParams {
  Eigen::Index n = 2, d = 3, s = 1, m = 4;
  double gamma = 0.25, t = 0.8, eps = 0.05, lambda = 4.0;
  unsigned seed = 7;
  int k = 8;
};
InstanceFile generateInstance(const std::string& family, const GenParams& p);

}  // namespace revolve
