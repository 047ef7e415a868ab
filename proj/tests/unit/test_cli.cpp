#include "bbs/cli.hpp"

#include "doctest.h"

using namespace bbs;
using namespace bbs::cli;

namespace {

Report run_cmd(const std::string& cmd, std::optional<std::string> ideal) {
  JobSpec spec;
  spec.command = cmd;
  spec.ideal = std::move(ideal);
  return run(spec);
}

json without_timing(json d) {
  d.erase("timing");
  return d;
}

}  // namespace

TEST_CASE("ideal shorthands") {
  CHECK(parse_ideal("box 2 2").terms() == make_box({2, 2}).terms());
  CHECK(parse_ideal("simplicial 2 2").terms() == make_simplicial(2, 2).terms());
  CHECK(parse_ideal("lshape").terms().size() == 5);
  CHECK(parse_ideal(R"({"n":2,"terms":[[0,0],[1,0]]})").terms().size() == 2);
  for (auto bad : {"box", "box x", "simplicial 2", "{\"n\":2}", "{oops", "/no/such/file"}) {
    try {
      parse_ideal(bad);
      FAIL("accepted " << bad);
    } catch (const CliError& e) {
      CHECK(e.code == Usage);
      CHECK(e.reason == "malformed_input");
    }
  }
}

TEST_CASE("polynomial serialization") {
  BBScheme S(make_box({2, 1}));
  auto f = parse_polynomial("c11 + 1/2*c12*c13 - 3*c21^2", S.vars());
  auto j = poly_json(f, S.vars());
  REQUIRE(j["terms"].size() == 3);
  CHECK(j["terms"][0]["coef"] == "1/2");
  CHECK(j["terms"][0]["term"]["c13"] == 1);
  CHECK(j["terms"][1]["coef"] == "-3/1");
  CHECK(j["terms"][1]["term"]["c21"] == 2);
  CHECK(j["terms"][2]["coef"] == "1/1");
  CHECK(cli::rational_str(Rational(-4) / 6) == "-2/3");
}

TEST_CASE("border report") {
  auto r = run_cmd("border", "box 2 2");
  CHECK(r.exit_code == Ok);
  auto& d = r.doc;
  CHECK(d["schema"] == 1);
  CHECK(d["command"] == "border");
  CHECK(d["input"]["t"] == json::parse("[[0,0],[0,1],[1,0],[1,1]]"));
  CHECK(d["input"]["b"] == json::parse("[[0,2],[2,0],[1,2],[2,1]]"));
  CHECK(d["result"]["interior"] == json::parse("[[0,0]]"));
  CHECK(d.contains("timing"));
  CHECK(d["budget"]["exhausted"] == false);
  CHECK(json::parse(format(r, "json")) == d);
  CHECK(format(r, "text").find("border") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
  for (auto cmd : {"generators", "exposure", "weights", "best"}) {
    auto a = run_cmd(cmd, "box 2 1"), b = run_cmd(cmd, "box 2 1");
    CHECK(a.exit_code == Ok);
    CHECK(without_timing(a.doc) == without_timing(b.doc));
  }
}

TEST_CASE("exit codes") {
  CHECK(run_cmd("nonsense", "box 2 1").exit_code == Usage);
  CHECK(run_cmd("nonsense", "box 2 1").doc["error"]["reason"] == "unknown_command");
  CHECK(run_cmd("border", std::nullopt).exit_code == Usage);
  CHECK(run_cmd("survey", "box 2 1").exit_code == Usage);

  auto bad = run_cmd("border", R"({"n":2,"terms":[[0,0],[1,1]]})");
  CHECK(bad.exit_code == Rejected);
  CHECK(bad.doc["error"]["reason"] == "invalid_order_ideal");
  CHECK(bad.doc["error"]["witness"] == json::parse("[0,1]"));

  JobSpec spec;
  spec.command = "eliminate";
  spec.ideal = "box 2 1";
  spec.eliminate = "c99";
  auto unk = run(spec);
  CHECK(unk.exit_code == Usage);
  CHECK(unk.doc["error"]["reason"] == "unknown_variable");

  spec.command = "best";
  spec.ideal = "lshape";
  spec.eliminate.reset();
  spec.search_budget = 1;
  auto tight = run(spec);
  CHECK(tight.exit_code == Budget);
  CHECK(tight.doc["error"]["reason"] == "budget_exhausted");
  CHECK(tight.doc["budget"]["exhausted"] == true);
}

TEST_CASE("gb-elim agrees with substitution") {
  JobSpec spec;
  spec.command = "gb-elim";
  spec.ideal = "box 2 2";
  spec.seed = 3;
  auto r = run(spec);
  CHECK(r.exit_code == Ok);
  CHECK(r.doc["result"]["equal"] == true);
  CHECK(without_timing(r.doc) == without_timing(run(spec).doc));
}
