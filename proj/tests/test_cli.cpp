#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qgt/report.hpp"

using namespace qgt;

namespace {

std::string fixture(const std::string& name) {
  return std::string(QGT_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct RunResult {
  int status;
  std::string out;
};

RunResult run_cli(const std::string& args, bool raw_command = false) {
  std::string cmd = raw_command ? args + " 2>&1"
                                : std::string(QGT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("path expression syntax round trip") {
  Field Q = Field::rationals();
  for (const char* text : {"a.b.c", "2 * a.b - 3/7 * c.d", "e(3)", "-x.y + z.w",
                           "1/2 * e(1) + x.x"}) {
    PathExpr e = parse_path_expr(text, Q);
    CHECK(parse_path_expr(e.str(), Q) == e);
  }
  CHECK_THROWS_AS(parse_path_expr("a..b", Q), QgtError);
  CHECK_THROWS_AS(parse_path_expr("2 *", Q), QgtError);
}

TEST_CASE("spec files parse into the right modes") {
  SpecFile tri = parse_spec_file(fixture("triangle_tq.spec"));
  CHECK(tri.mode == SpecFile::Mode::Triangulation);
  CHECK(tri.quiver.arrows.size() == 6);
  WSASpec w = tri.to_wsa();
  CHECK(w.data.mn("rho") == 3);
  CHECK(w.data.mn("alpha") == 4);

  SpecFile hat = parse_spec_file(fixture("hat_qsprime.spec"));
  CHECK(hat.mode == SpecFile::Mode::Base);
  HatSpec h = hat.to_hat();
  CHECK(h.v2_weights == std::vector<int>{2});
  CHECK(h.v1_weights.empty());

  SpecFile raw = parse_spec_file(fixture("loop_cube.spec"));
  CHECK(raw.mode == SpecFile::Mode::Raw);
  CHECK(raw.raw_relations.size() == 1);

  SpecFile blocks = parse_spec_file(fixture("triangle_blocks.spec"));
  CHECK(blocks.mode == SpecFile::Mode::Triangulation);
  CHECK(blocks.quiver.vertices.size() == 3);
  // the assembled presentation agrees with the explicit one
  FDAlgebra a = build_wsa(blocks.to_wsa());
  CHECK(a.dim() == 22);
}

TEST_CASE("spec file diagnostics carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_spec("field Q\nvertex 1\nbogus x\n"),
                       doctest::Contains("line 3"), QgtError);
  CHECK_THROWS_WITH_AS(parse_spec("field Q\nvertex 1\narrow a 1 2\n"),
                       doctest::Contains("line 3"), QgtError);
  CHECK_THROWS_WITH_AS(
      parse_spec("field Q\nvertex 1\narrow a 1 1\narrow a 1 1\n"),
      doctest::Contains("duplicate"), QgtError);
  CHECK_THROWS_WITH_AS(parse_spec("field Q\nvertex 1\narrow a 1 1\nparam a 0\n"),
                       doctest::Contains("nonzero"), QgtError);
  // weight on an arrow outside every declared orbit
  std::string text = slurp(fixture("triangle_tq.spec")) + "weight missing 2\n";
  CHECK_THROWS_AS(parse_spec(text), QgtError);
}

TEST_CASE("spec print parses back to the same content") {
  for (const char* name : {"triangle_tq.spec", "hat_qsprime.spec", "loop_cube.spec"}) {
    SpecFile s = parse_spec_file(fixture(name));
    SpecFile back = parse_spec(print_spec(s));
    CHECK(back.mode == s.mode);
    CHECK(back.quiver.same_as(s.quiver));
    CHECK(back.f == s.f);
    CHECK(back.g == s.g);
    CHECK(back.weights == s.weights);
    CHECK(back.params == s.params);
    CHECK(back.hat_weights == s.hat_weights);
    CHECK(back.raw_relations == s.raw_relations);
    CHECK(back.cap == s.cap);
  }
}

TEST_CASE("reports are deterministic") {
  SpecFile s = parse_spec_file(fixture("triangle_tq.spec"));
  Report a = run_suite(s, Suite::Wsa, true);
  Report b = run_suite(parse_spec_file(fixture("triangle_tq.spec")), Suite::Wsa, true);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.all_pass());
}

TEST_CASE("report content for the triangle instance") {
  SpecFile s = parse_spec_file(fixture("triangle_tq.spec"));
  Report rep = run_suite(s, Suite::Wsa, false);
  Json j = Json::parse(rep.to_json());
  CHECK(j["algebra"]["dims"]["1"] == 7);
  CHECK(j["algebra"]["dims"]["2"] == 8);
  CHECK(j["algebra"]["dims"]["3"] == 7);
  CHECK(j["algebra"]["total_dim"] == 22);
  CHECK(j["weakly_symmetric"] == true);
  CHECK(j["all_pass"] == true);
}

TEST_CASE("analyze suite reports shape data") {
  SpecFile s = parse_spec_file(fixture("spherical_np1.spec"));
  Report rep = run_suite(s, Suite::Analyze);
  Json j = Json::parse(rep.to_json());
  CHECK(j["classification"] == "Other");  // the full 12-arrow shape
  CHECK(j["regularity"]["is_2regular"] == true);

  auto tag_of = [&](const char* name) {
    Report r = run_suite(parse_spec_file(fixture(name)), Suite::Analyze);
    return Json::parse(r.to_json())["classification"].get<std::string>();
  };
  CHECK(tag_of("qt.spec") == "Triangle");
  CHECK(tag_of("qtprime.spec") == "AlmostTriangle");
  CHECK(tag_of("qs.spec") == "Spherical");
  CHECK(tag_of("qsprime.spec") == "AlmostSpherical");

  // block data of the 8-arrow shape
  Report rqs = run_suite(parse_spec_file(fixture("qs.spec")), Suite::Analyze);
  Json jqs = Json::parse(rqs.to_json());
  REQUIRE(jqs["one_vertex_blocks"].size() == 2);
  CHECK(jqs["one_vertex_blocks"][0]["vertices"] == Json::array({1, 2, 3, 5}));

  // the folded-back shape is recognized
  Report rsc = run_suite(parse_spec_file(fixture("supcritical.spec")), Suite::Analyze);
  Json jsc = Json::parse(rsc.to_json());
  bool any = false;
  for (const auto& h : jsc["sup_critical"])
    if (h["sup_critical"] == true) any = true;
  CHECK(any);
}

TEST_CASE("cli subcommands") {
  RunResult b = run_cli("build " + fixture("triangle_tq.spec") + " --json -");
  CHECK(b.status == 0);
  Json j = Json::parse(b.out);
  CHECK(j["algebra"]["total_dim"] == 22);

  RunResult per = run_cli("period " + fixture("loop_cube.spec") + " --json -");
  CHECK(per.status == 0);
  Json pj = Json::parse(per.out);
  CHECK(pj["periods"]["1"] == 2);

  RunResult bas = run_cli("basis " + fixture("triangle_tq.spec") + " --vertex 2 --json -");
  CHECK(bas.status == 0);
  Json bj = Json::parse(bas.out);
  CHECK(bj["dim"] == 8);

  RunResult an = run_cli("analyze " + fixture("tetrahedral.spec") + " --json -");
  CHECK(an.status == 0);
  CHECK(Json::parse(an.out)["classification"] == "Tetrahedral");

  RunResult hat = run_cli("hat " + fixture("hat_qtprime.spec") + " --json -");
  CHECK(hat.status == 0);
  Json hj = Json::parse(hat.out);
  CHECK(hj["algebra"]["total_dim"] == 22);
  CHECK(hj["all_pass"] == true);

  // overriding a block weight on the command line
  RunResult hw = run_cli("hat " + fixture("hat_qsprime.spec") + " --weights m1=3 --json -");
  CHECK(hw.status == 0);
  CHECK(Json::parse(hw.out)["algebra"]["total_dim"] == 52);

  RunResult missing = run_cli("build /nonexistent.spec");
  CHECK(missing.status == 2);

  // byte-identical output across runs
  RunResult again = run_cli("build " + fixture("triangle_tq.spec") + " --json -");
  CHECK(again.out == b.out);
}

TEST_CASE("singular flag lands in the report") {
  SpecFile s = parse_spec_file(fixture("spherical_singular.spec"));
  Report rep = run_suite(s, Suite::Wsa);
  Json j = Json::parse(rep.to_json());
  CHECK(j["singular"]["status"] == "singular");
  CHECK(j["singular"]["spherical_singular"] == true);

  SpecFile ok = parse_spec_file(fixture("spherical_np1.spec"));
  Json jok = Json::parse(run_suite(ok, Suite::Wsa).to_json());
  CHECK(jok["singular"]["status"] == "not_singular");
}

TEST_CASE("relation audit listing") {
  RunResult r = run_cli("build " + fixture("triangle_tq.spec") +
                        " --emit-relations --json -");
  CHECK(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j["relations"].size() == 18);
}

TEST_CASE("degenerate subcommand") {
  RunResult r = run_cli("degenerate " + fixture("hat_qtprime.spec") + " --t 1/2 --json -");
  CHECK(r.status == 0);
  Json j = Json::parse(r.out);
  CHECK(j["family"]["dim_t0"] == j["family"]["dim_t1"]);
  CHECK(j["special_biserial_t0"] == true);
  CHECK(j["special_biserial_t1"] == false);
  CHECK(j["all_pass"] == true);
}

TEST_CASE("truncation cap from the environment") {
  // a cap below the relation degree is rejected up front
  std::string no_cap = "field Q\nvertex 1\narrow x 1 1\nrelation x.x.x\n";
  char tmpl[] = "/tmp/qgt_cap_XXXXXX";
  int fd = mkstemp(tmpl);
  REQUIRE(fd >= 0);
  {
    std::ofstream out(tmpl);
    out << no_cap;
  }
  RunResult ok = run_cli(std::string("build ") + tmpl + " --json -");
  CHECK(ok.status == 0);
  RunResult small = run_cli(std::string("QGT_CAP=2 ") + QGT_CLI_PATH + " build " + tmpl,
                            true);
  CHECK(small.status == 2);
  std::remove(tmpl);
}

TEST_CASE("full suites pass on the main fixtures") {
  for (const char* name : {"triangle_tq.spec", "hat_qtprime.spec"}) {
    RunResult r = run_cli("check " + fixture(name) + " --suite all --json -");
    CHECK(r.status == 0);
    Json j = Json::parse(r.out);
    CHECK(j["all_pass"] == true);
  }
}

TEST_CASE("cli exit status reflects failed checks") {
  // corrupt fixture: spherical singular still builds but flags are informative;
  // instead make a base whose trivial-weight identification fails by lying
  // about a parameter
  std::string broken = slurp(fixture("triangle_tq.spec"));
  // weight 1 on the loop orbit makes m*n = 1, an invalid presentation
  broken += "weight rho 1\n";
  char tmpl[] = "/tmp/qgt_broken_XXXXXX";
  int fd = mkstemp(tmpl);
  REQUIRE(fd >= 0);
  {
    std::ofstream out(tmpl);
    out << broken;
  }
  RunResult r = run_cli(std::string("build ") + tmpl);
  CHECK(r.status == 2);
  std::remove(tmpl);
}
