#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "branegauge/cli.hpp"
#include "branegauge/complexes.hpp"
#include "branegauge/io.hpp"

using namespace branegauge;

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "branegauge_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_doc(const std::string& name, const std::string& body) {
  fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << body;
  return p;
}

fs::path write_brane(const std::string& name, const BraneComplex& c) {
  return write_doc(name, serialize_brane(c));
}

BraneComplex cone_of_identity(int n, int k) {
  ChainMap id;
  id.source = line_bundle(n, k);
  id.target = line_bundle(n, k);
  PolyMatrix one = PolyMatrix::zero(1, 1);
  one.set(0, 0, HomogeneousPoly::constant(n, make_rational(1, 1)));
  id.blocks[0] = one;
  return cone(id);
}

}  // namespace

TEST_CASE("document serialization round-trips byte for byte") {
  BraneComplex c = cone_of_identity(2, -1);
  c.label = "cone test";
  std::string once = serialize_brane(c);
  std::string twice = serialize_brane(parse_brane(once));
  CHECK(once == twice);

  BraneComplex simple = line_bundle(1, -2, 3);
  CHECK(serialize_brane(parse_brane(serialize_brane(simple))) ==
        serialize_brane(simple));
}

TEST_CASE("document parser rejects malformed input") {
  CHECK_THROWS_AS(parse_brane("{\"n\": 2}"), Error);
  CHECK_THROWS_AS(parse_brane("not json at all"), Error);
  CHECK_THROWS_AS(parse_brane("{\"n\": 0, \"terms\": {\"0\": [0]}}"), Error);
  // Differential of the wrong shape.
  CHECK_THROWS_AS(
      parse_brane("{\"n\": 1, \"terms\": {\"0\": [0], \"1\": [0]}, "
                  "\"diffs\": {\"0\": [[\"x0\", \"x1\"]]}}"),
      Error);
}

TEST_CASE("input digest is the 64-bit FNV-1a hex") {
  CHECK(input_digest("") == "cbf29ce484222325");
  CHECK(input_digest("a") == "af63dc4c8601ec8c");
  CHECK(input_digest("branegauge").size() == 16);
}

TEST_CASE("cli: validate prints the three-part summary") {
  auto zero = write_brane("validate_zero.json", line_bundle(2, 0));
  auto res = run_cli({"validate", zero.string()});
  CHECK(res.code == 0);
  CHECK(res.out == "valid, in-range, all twists 0\n");

  auto neg = write_brane("validate_neg.json", line_bundle(2, -1));
  res = run_cli({"validate", neg.string()});
  CHECK(res.code == 0);
  CHECK(res.out == "valid, in-range\n");

  auto pos = write_brane("validate_pos.json", line_bundle(2, 1));
  res = run_cli({"validate", pos.string()});
  CHECK(res.code == 0);
  CHECK(res.out == "valid\n");
}

TEST_CASE("cli: cohom reports dimensions and the cutoff") {
  auto doc = write_brane("cohom_o.json", line_bundle(2, 0));
  auto res = run_cli({"cohom", doc.string()});
  CHECK(res.code == 0);
  CHECK(res.out.find("H^0: 1\n") != std::string::npos);
  CHECK(res.out.find("truncation: 4\n") != std::string::npos);
}

TEST_CASE("cli: ext with a single degree prints just the dimension") {
  auto a = write_brane("ext_a.json", line_bundle(2, 0));
  auto b = write_brane("ext_b.json", line_bundle(2, -3));
  auto res = run_cli({"ext", a.string(), b.string(), "--i", "2"});
  CHECK(res.code == 0);
  CHECK(res.out == "dim: 1\n");

  auto full = run_cli({"ext", a.string(), b.string()});
  CHECK(full.code == 0);
  CHECK(full.out.find("ext^2: 1\n") != std::string::npos);
  CHECK(full.out.find("truncation: ") != std::string::npos);
}

TEST_CASE("cli: mismatched spaces are an input error") {
  auto a = write_brane("ext_p1.json", line_bundle(1, 0));
  auto b = write_brane("ext_p2.json", line_bundle(2, 0));
  auto res = run_cli({"ext", a.string(), b.string()});
  CHECK(res.code == 1);
  CHECK(res.err.find("different projective spaces") != std::string::npos);
}

TEST_CASE("cli: omega lists every cohomological degree") {
  auto res = run_cli({"omega", "--p", "1", "--k", "0", "--n", "2"});
  CHECK(res.code == 0);
  CHECK(res.out.find("H^0(Omega^1(0)): 0\n") != std::string::npos);
  CHECK(res.out.find("H^1(Omega^1(0)): 1\n") != std::string::npos);
  CHECK(res.out.find("H^2(Omega^1(0)): 0\n") != std::string::npos);
}

TEST_CASE("cli: gauge decision lines") {
  auto neg = write_brane("gauge_neg.json", line_bundle(2, -1));
  auto res = run_cli({"gauge", neg.string()});
  CHECK(res.code == 0);
  CHECK(res.out == "exists: false\nspace_dim: 0\n");

  auto zero = write_brane("gauge_zero.json", line_bundle(2, 0));
  res = run_cli({"gauge", zero.string()});
  CHECK(res.code == 0);
  CHECK(res.out == "exists: true\nspace_dim: 0\n");
}

TEST_CASE("cli: gauge writes a witness file when asked") {
  auto cid = write_brane("gauge_cone.json", cone_of_identity(1, -1));
  fs::path wpath = scratch_dir() / "witness_out.json";
  fs::remove(wpath);
  auto res = run_cli({"gauge", cid.string(), "--witness", wpath.string()});
  CHECK(res.code == 0);
  CHECK(res.out.find("exists: true\n") != std::string::npos);
  CHECK(res.out.find("witness: ") != std::string::npos);
  REQUIRE(fs::exists(wpath));
  std::ifstream in(wpath);
  std::stringstream buf;
  buf << in.rdbuf();
  Json wj = Json::parse(buf.str());
  CHECK(wj.at("exists").get<bool>());
  REQUIRE(wj.at("correction").is_array());
  CHECK_FALSE(wj.at("correction").empty());
}

TEST_CASE("cli: gauge json report shape") {
  auto neg = write_brane("gauge_neg_json.json", line_bundle(2, -1));
  auto res = run_cli({"gauge", neg.string(), "--json"});
  CHECK(res.code == 0);
  Json report = Json::parse(res.out);
  CHECK(report.at("command") == "gauge");
  CHECK(report.at("input_digest").get<std::string>().size() == 16);
  CHECK_FALSE(report.at("decision").at("exists").get<bool>());
  CHECK(report.at("truncation_used").is_number_integer());
}

TEST_CASE("cli: classify lines") {
  auto neg = write_brane("classify_neg.json", line_bundle(2, -1));
  auto res = run_cli({"classify", neg.string()});
  CHECK(res.code == 0);
  CHECK(res.out ==
        "predicted: not-exists\nengine: not-exists\nagree: yes\nchern[0]: -1\n");

  auto out_of_range = write_brane("classify_pos.json", line_bundle(2, 1));
  res = run_cli({"classify", out_of_range.string()});
  CHECK(res.code == 0);
  CHECK(res.out.find("predicted: not-covered\n") != std::string::npos);
  CHECK(res.out.find("agree: n/a\n") != std::string::npos);
}

TEST_CASE("cli: audit lines") {
  auto doc = write_brane("audit_o.json", line_bundle(2, 0));
  auto res = run_cli({"audit", doc.string()});
  CHECK(res.code == 0);
  CHECK(res.out.find("naive_hom0: 0\n") != std::string::npos);
  CHECK(res.out.find("discrepancy: no\n") != std::string::npos);
  CHECK(res.out.find("twist 0: pairs=1 sections=0\n") != std::string::npos);
}

TEST_CASE("cli: generate is byte-deterministic per seed") {
  auto a = run_cli({"generate", "--depth", "1", "--seed", "7", "--n", "2"});
  auto b = run_cli({"generate", "--depth", "1", "--seed", "7", "--n", "2"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  BraneComplex parsed = parse_brane(a.out);
  CHECK(parsed.n == 2);
  CHECK(serialize_brane(parsed) == a.out);

  auto rj = run_cli({"generate", "--depth", "1", "--seed", "7", "--n", "2",
                     "--json"});
  CHECK(rj.code == 0);
  Json report = Json::parse(rj.out);
  CHECK(report.at("command") == "generate");
  CHECK(report.at("seed") == 7);
  CHECK(report.at("digest").get<std::string>().size() == 16);
  CHECK(serialize_brane(brane_from_json(report.at("document"))) == a.out);
}

TEST_CASE("cli: bott prints the closed-form dimension") {
  auto res = run_cli({"bott", "--p", "1", "--k", "2", "--q", "0", "--n", "2"});
  CHECK(res.code == 0);
  CHECK(res.out == "dim: 3\n");
}

TEST_CASE("cli: exit codes distinguish input problems") {
  auto missing = run_cli({"validate", (scratch_dir() / "no_such.json").string()});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  auto bad = write_doc("bad_doc.json", "{\"n\": 2}");
  auto invalid = run_cli({"cohom", bad.string()});
  CHECK(invalid.code == 1);

  auto doc = write_brane("low_cutoff.json", line_bundle(2, 0));
  auto low = run_cli({"cohom", doc.string(), "--truncation", "3"});
  CHECK(low.code == 1);
  CHECK(low.err.find("truncation") != std::string::npos);
}

TEST_CASE("cli: help succeeds and bare invocation fails") {
  auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("validate") != std::string::npos);

  auto bare = run_cli({});
  CHECK(bare.code == 1);
}
