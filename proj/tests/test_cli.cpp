#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fgap/cli.hpp"
#include "fgap/spec_io.hpp"
#include "json.hpp"

using namespace fgap;

namespace {

struct Run {
  int rc;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fgap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "fgap_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = (dir / name).string();
  std::ofstream(path) << text;
  return path;
}

const char* kNode = R"({
  "alpha": [1, 0], "beta": [1, 0],
  "classes": [{"points": [{"lambda": [1, 0], "multiplicity": 1},
                          {"lambda": [-1, 0], "multiplicity": 1}]},
              {"points": [{"lambda": [0, 1.5], "multiplicity": 2}]}],
  "poles": [{"lambda": [2.5, 0.3], "multiplicity": 1},
            {"lambda": [-0.4, 2.1], "multiplicity": 1}],
  "grid": {"x_min": -0.2, "x_max": 0.2, "y_min": -0.2, "y_max": 0.2, "nx": 3, "ny": 3},
  "seed": 5
})";

}  // namespace

TEST_CASE("genus prints delta invariants and p_a") {
  const auto path = write_temp("node.json", kNode);
  const auto r = run({"genus", path});
  CHECK(r.rc == kExitOk);
  CHECK(r.out == "delta: 1, 1; p_a = 2\n");
  CHECK(r.err.empty());
  const auto empty = write_temp("empty.json", R"({"alpha": [1, 0], "beta": [1, 0]})");
  CHECK(run({"genus", empty}).out == "delta: none; p_a = 0\n");
}

TEST_CASE("validate exit codes") {
  const auto path = write_temp("node.json", kNode);
  CHECK(run({"validate", path}).rc == kExitOk);
  // Schroedinger needs deg D = p_a = 2; Dirac needs 3.
  CHECK(run({"validate", path, "--operator", "dirac"}).rc == kExitCheckFailed);
}

TEST_CASE("parse errors are field-addressed and exit 2") {
  const auto bad_mult = write_temp("bad_mult.json", R"({
    "alpha": [1, 0], "beta": [1, 0],
    "classes": [{"points": [{"lambda": [1, 0], "multiplicity": 1},
                            {"lambda": [2, 0], "multiplicity": "two"}]}]})");
  auto r = run({"genus", bad_mult});
  CHECK(r.rc == kExitBadInput);
  CHECK(r.err.find("classes[0].points[1].multiplicity") != std::string::npos);

  const auto syntax = write_temp("syntax.json", "{\n  \"alpha\": [1, 0],\n  oops\n}");
  r = run({"genus", syntax});
  CHECK(r.rc == kExitBadInput);
  CHECK(r.err.find("line 3") != std::string::npos);

  const auto unknown = write_temp("unknown.json", R"({"alpha": [1, 0], "betta": [1, 0]})");
  r = run({"genus", unknown});
  CHECK(r.rc == kExitBadInput);
  CHECK(r.err.find("betta") != std::string::npos);

  CHECK(run({"genus", "/nonexistent/spec.json"}).rc == kExitBadInput);
  CHECK(run({"no-such-command"}).rc == kExitBadInput);
}

TEST_CASE("sigma obstruction exits 3") {
  const auto path = write_temp("sig.json", R"({
    "alpha": [1, 0], "beta": [1, 0], "sigma": true,
    "classes": [{"points": [{"lambda": [1, 0], "multiplicity": 1},
                            {"lambda": [-1, 0], "multiplicity": 1}]}],
    "poles": [{"lambda": [2, 0.5], "multiplicity": 1}]})");
  const auto r = run({"certify", path, "--kind", "schrodinger-sigma"});
  CHECK(r.rc == kExitInfeasible);
  CHECK(r.out.find("infeasible") != std::string::npos);
}

TEST_CASE("certify without the declared involution is a bad request") {
  const auto path = write_temp("node.json", kNode);
  CHECK(run({"certify", path, "--kind", "dirac-tau"}).rc == kExitBadInput);
}

TEST_CASE("field output is deterministic and round-trips") {
  const auto path = write_temp("node.json", kNode);
  const auto a = run({"schrodinger", path});
  const auto b = run({"schrodinger", path});
  REQUIRE(a.rc == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.err.empty());
  CHECK(a.out.find("# field: u") != std::string::npos);
  CHECK(a.out.find("# spec_hash: fnv1a64:") != std::string::npos);
  // 17 significant digits: every printed value parses back to itself.
  std::istringstream in(a.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      const double v = std::stod(cell);
      std::ostringstream re;
      re.precision(17);
      re << v;
      CHECK(std::stod(re.str()) == v);
    }
    ++rows;
  }
  CHECK(rows == 4 * 9);  // u, A, xi, c on a 3x3 grid

  const auto j = run({"--format", "json", "schrodinger", path});
  REQUIRE(j.rc == kExitOk);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["fields"]["u"].size() == 9);
  CHECK(doc["scalars"].contains("max_operator_residual"));
  CHECK(doc["scalars"]["max_operator_residual"].get<double>() <= 1e-8);
}

TEST_CASE("dirac and rr commands") {
  auto node = nlohmann::json::parse(kNode);
  node["poles"].push_back({{"lambda", {0.7, -1.9}}, {"multiplicity", 1}});
  const auto path = write_temp("node_dirac.json", node.dump());
  const auto d = run({"dirac", path});
  CHECK(d.rc == kExitOk);
  CHECK(d.out.find("# field: U") != std::string::npos);
  const auto r = run({"rr", path});
  CHECK(r.rc == kExitOk);
  CHECK(r.out.find("residual") != std::string::npos);
  const auto inf = run({"rr", path, "--divisor", R"([{"lambda": "inf", "multiplicity": 3}])"});
  CHECK(inf.rc == kExitOk);
}

TEST_CASE("oned and example-constant") {
  const auto o = run({"oned", "pair", "--p", "0.3", "--q", "1", "--n", "5"});
  CHECK(o.rc == kExitOk);
  CHECK(run({"oned", "pair", "--p", "1", "--q", "1"}).rc == kExitBadInput);
  CHECK(run({"oned", "double", "--p", "1,x"}).rc == kExitBadInput);
  const auto c = run({"example-constant", "--c", "0.5"});
  CHECK(c.rc == kExitOk);
  CHECK(c.out.find("FAIL") == std::string::npos);
  CHECK(run({"example-constant", "--c", "0"}).rc == kExitBadInput);
}

TEST_CASE("version") {
  const auto r = run({"--version"});
  CHECK(r.rc == kExitOk);
  CHECK(r.out.find(kVersion) != std::string::npos);
}

TEST_CASE("spec hash ignores formatting") {
  const auto a = parse_spec_document(kNode);
  const auto b = parse_spec_document(nlohmann::json::parse(kNode).dump());
  CHECK(a.hash == b.hash);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
}
