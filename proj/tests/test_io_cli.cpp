#include "doctest.h"

#include "revolve/cli.hpp"
#include "revolve/svg.hpp"

#include <cstdio>
#include <filesystem>

using namespace revolve;

namespace {

std::string tmpPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

int run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"revolve-john"};
  argv.insert(argv.end(), args);
  return cliMain(int(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("instance files round-trip byte-identically") {
  for (const char* family :
       {"cube", "simplex-john", "simplex-lowner", "cross-polytope", "random-2d",
        "appendix-a", "bad-ellipsoid", "isosceles"}) {
    GenParams p;
    p.d = std::string(family) == "bad-ellipsoid" ? 3 : 2;
    if (std::string(family) == "bad-ellipsoid") p.s = 1;
    const InstanceFile inst = generateInstance(family, p);
    const std::string once = serializeInstance(inst);
    const std::string twice = serializeInstance(parseInstance(once));
    CHECK(once == twice);
  }
}

TEST_CASE("generators are deterministic") {
  GenParams p;
  p.seed = 7;
  p.k = 8;
  const std::string a = serializeInstance(generateInstance("random-2d", p));
  const std::string b = serializeInstance(generateInstance("random-2d", p));
  CHECK(a == b);
}

TEST_CASE("appendix-a instance carries the derived quantities") {
  GenParams p;
  p.n = 2;
  p.gamma = 0.25;
  p.t = 0.8;
  const InstanceFile inst = generateInstance("appendix-a", p);
  CHECK(inst.meta.at("sigma").get<double>() == doctest::Approx(0.68));
  CHECK(inst.meta.at("inradius_closed_form").get<double>() == doctest::Approx(1.25));
  // Solving it with the trivial axis recovers the inradius.
  const ResultFile res = runInstance(inst);
  CHECK(res.ellipsoid->mu == doctest::Approx(1.25).epsilon(1e-9));
}

TEST_CASE("result files round-trip byte-identically") {
  const InstanceFile inst = generateInstance("cube", GenParams{});
  const ResultFile res = runInstance(inst);
  const std::string once = serializeResult(res);
  const std::string twice = serializeResult(parseResult(once));
  CHECK(once == twice);
}

TEST_CASE("parse errors carry diagnostics") {
  CHECK_THROWS_AS(parseInstance("{not json"), ParseError);
  CHECK_THROWS_AS(parseInstance("{\"schema_version\": 2, \"problem\": \"ellipsoid-fixed\"}"),
                  ParseError);
  CHECK_THROWS_AS(parseInstance("{\"schema_version\": 1, \"problem\": \"bogus\"}"),
                  ParseError);
  CHECK_THROWS_AS(
      parseInstance("{\"schema_version\": 1, \"problem\": \"ellipsoid-fixed\"}"),
      ParseError);
}

TEST_CASE("cli: solve, certify, check-bounds, report, gen-instance") {
  const std::string inst = tmpPath("revolve_cube.json");
  const std::string result = tmpPath("revolve_cube_result.json");
  const std::string svg = tmpPath("revolve_cube.svg");

  CHECK(run({"gen-instance", "cube", "--d", "2", "--out", inst.c_str()}) == 0);
  CHECK(run({"solve", inst.c_str(), "--out", result.c_str()}) == 0);
  CHECK(run({"certify", result.c_str()}) == 0);
  CHECK(run({"check-bounds", result.c_str()}) == 0);
  CHECK(run({"check-bounds", result.c_str(), "--which", "inclusion"}) == 0);
  CHECK(run({"report", result.c_str(), "--svg", svg.c_str()}) == 0);
  CHECK(std::filesystem::file_size(svg) > 100);

  // A 3D result cannot be drawn.
  const std::string inst3 = tmpPath("revolve_cube3.json");
  const std::string result3 = tmpPath("revolve_cube3_result.json");
  CHECK(run({"gen-instance", "cube", "--d", "3", "--out", inst3.c_str()}) == 0);
  CHECK(run({"solve", inst3.c_str(), "--out", result3.c_str()}) == 0);
  CHECK(run({"report", result3.c_str(), "--svg", svg.c_str()}) == 5);
}

TEST_CASE("cli: degraded inputs map to the documented exit codes") {
  const std::string bad = tmpPath("revolve_bad.json");
  writeFile(bad, "{\"schema_version\": 1,\n  broken\n");
  CHECK(run({"solve", bad.c_str()}) == 4);

  // Empty interior: a slab squeezed to a segment.
  const std::string slab = tmpPath("revolve_slab.json");
  writeFile(slab, R"({
  "schema_version": 1,
  "problem": "ellipsoid-fixed",
  "body_L": {"halfspaces": [
    {"normal": [1.0, 0.0], "offset": 0.0},
    {"normal": [-1.0, 0.0], "offset": 0.0},
    {"normal": [0.0, 1.0], "offset": 1.0},
    {"normal": [0.0, -1.0], "offset": 1.0}]},
  "axis": {"basis_rows": [[1.0, 0.0]]}
})");
  CHECK(run({"solve", slab.c_str()}) == 3);

  // Dimension limit: a 7-dimensional box.
  const std::string big = tmpPath("revolve_big.json");
  {
    InstanceFile inst;
    inst.problem = ProblemKind::EllipsoidFixed;
    Matrix A(14, 7);
    A.setZero();
    for (int i = 0; i < 7; ++i) {
      A(2 * i, i) = 1;
      A(2 * i + 1, i) = -1;
    }
    inst.body_L = HPolytope{A, Vector::Ones(14)};
    inst.axis_rows = Matrix::Zero(1, 7);
    inst.axis_rows(0, 0) = 1;
    writeFile(big, serializeInstance(inst));
  }
  CHECK(run({"solve", big.c_str()}) == 5);
}

TEST_CASE("cli: a shrunken solution has no certificate at tolerance") {
  const std::string inst = tmpPath("revolve_cube_s.json");
  const std::string result = tmpPath("revolve_cube_s_result.json");
  REQUIRE(run({"gen-instance", "cube", "--d", "2", "--out", inst.c_str()}) == 0);
  REQUIRE(run({"solve", inst.c_str(), "--out", result.c_str()}) == 0);
  ResultFile res = parseResult(readFile(result));
  res.ellipsoid->shape_on_f *= 0.9;
  res.ellipsoid->mu *= 0.9;
  writeFile(result, serializeResult(res));
  CHECK(run({"certify", result.c_str()}) == 1);
}

TEST_CASE("oracle check through the cli path") {
  GenParams p;
  p.seed = 3;
  p.k = 6;
  const InstanceFile inst = generateInstance("random-2d", p);
  const ResultFile res = runInstance(inst, SolveConfig{}, true);
  REQUIRE(res.oracle_gap.has_value());
  CHECK(*res.oracle_gap <= 1e-3);
}

TEST_CASE("svg rendering for the isosceles instance") {
  const InstanceFile inst = generateInstance("isosceles", GenParams{});
  const ResultFile res = runInstance(inst);
  const std::string svg = renderResultSvg(res);
  CHECK(svg.find("<ellipse") == std::string::npos);
  CHECK(svg.find("<path") != std::string::npos);   // body and triangle
  CHECK(svg.find("<line") != std::string::npos);   // the axis
  CHECK(svg.find("<circle") != std::string::npos); // contact dots
}
