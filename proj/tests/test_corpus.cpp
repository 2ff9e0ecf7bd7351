#include "doctest.h"
#include "evaluate.hpp"

#include <fstream>
#include <sstream>

using namespace laurentia;

TEST_CASE("every corpus expectation is reproduced") {
  for (const auto& name : example_names()) {
    CorpusEntry e = load_example(name);
    testing::Evaluator ev(e.problem);
    for (const auto& x : e.expected) {
      INFO(name << " " << x.key);
      CHECK(!x.provenance.empty());
      CHECK(ev(x.key) == x.value);
    }
  }
}

TEST_CASE("unknown examples") { CHECK_THROWS_AS(load_example("a3_path"), UnknownExample); }

TEST_CASE("corpus entries round-trip through the input format") {
  std::vector<CorpusEntry> all;
  for (const auto& name : example_names()) all.push_back(load_example(name));
  all.push_back(skew_c2_badorder());
  for (const auto& e : all) {
    INFO(e.name);
    std::string text = to_toml(e.problem);
    Problem back = parse_problem(text, e.name);
    CHECK(to_toml(back) == text);
  }
}

TEST_CASE("shipped corpus files match the built-in entries") {
  std::vector<CorpusEntry> all;
  for (const auto& name : example_names()) all.push_back(load_example(name));
  all.push_back(skew_c2_badorder());
  for (const auto& e : all) {
    INFO(e.name);
    std::ifstream in(std::string(LAURENTIA_CORPUS_DIR) + "/" + e.name + ".toml");
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(to_toml(parse_problem(ss.str(), e.name)) == to_toml(e.problem));
  }
}

TEST_CASE("dual numbers pass class any but not polynomial") {
  testing::Evaluator ev(load_example("dual_numbers").problem);
  CHECK(ev("class:polynomial") == "fail");
  CHECK(ev("class:any") == "pass");
  CHECK(ev.report("any").pass);
  CHECK_FALSE(ev.report("polynomial").pass);
}

TEST_CASE("input errors carry positions") {
  const std::string mixed = R"([algebra]
mode = "quiver"
vertices = ["o"]
arrows = [ { name = "x", src = "o", dst = "o", degree = 1 }, { name = "y", src = "o", dst = "o", degree = 2 } ]
relations = ["x*x - y*x"]
)";
  try {
    parse_problem(mixed);
    FAIL("accepted a relation of mixed degree");
  } catch (const InputError& e) {
    CHECK(e.line == 5);
    CHECK(std::string(e.what()).find("mixes degrees") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_problem("[algebra]\nmode = \"quiver\"\nvertices = []\n"), InputError);
  CHECK_THROWS_AS(parse_problem("[algebra\n"), InputError);
  try {
    parse_problem("[algebra]\nvertices = [\"a\"]\narrows = [ { name = \"x\", src = \"a\", dst = \"b\" } ]\n");
    FAIL("accepted an unknown vertex");
  } catch (const InputError& e) {
    CHECK(e.line == 3);
    CHECK(e.column > 1);
  }
  CHECK_THROWS_AS(parse_problem("[algebra]\nvertices = [\"a\", \"b\"]\n[order]\ncovers = [[\"a\", \"b\"], [\"b\", \"a\"]]\n"),
                  InputError);
  CHECK_THROWS_AS(parse_problem("[algebra]\nvertices = [\"a\"]\n[field]\ncharacteristic = 4\n"), InputError);
  CHECK_THROWS_AS(parse_problem("[algebra]\nvertices = [\"a\"]\n[class]\nname = \"cyclic\"\n"), InputError);
}

TEST_CASE("table input with a smaller window") {
  Problem p = load_example("nilhecke2").problem;
  p.window = 6;
  Built b = build(p);
  CHECK(b.algebra->complete_to() == 6);
  Stratification s(b.algebra, b.order);
  CHECK(s.at(0).B.dim_q() == parse_laurent("1 + q^2 + 2*q^4 + 2*q^6 + O(q^7)"));
}
