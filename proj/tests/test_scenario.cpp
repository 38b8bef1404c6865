#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "anticanon/report.hpp"
#include "anticanon/threefold.hpp"

using namespace acl;

TEST_CASE("type I scenario file") {
  auto sc = load_scenario(data_dir() + "/scenarios/typeI.acs");
  CHECK(sc.type == 1);
  CHECK(canonical_string(sc.config()) == canonical_string(parse_string("(-3,-1,-3,-1)")));
}

TEST_CASE("empty event list gives the base cycle") {
  auto sc = parse_scenario("base quadric-cycle\n");
  CHECK(sc.events.empty());
  CHECK(sc.config().string() == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("diagnostics carry line and token") {
  try {
    parse_scenario("base quadric-cycle\npair smooth 9\n");
    FAIL("index accepted");
  } catch (const ScenarioError& e) {
    CHECK(e.line == 2);
    CHECK(e.token == "9");
  }
  CHECK_THROWS_AS(parse_scenario("pair node 1\nbase quadric-cycle\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("base cubic\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("frobnicate\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("pair smooth 1 t=1/0\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("pair smooth 1\npair smooth 1\npair smooth 1\npair smooth 1\npair smooth 1\n"),
                  ScenarioError);
  CHECK_THROWS_AS(parse_scenario("catalog N = f1\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("type VI\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("params b=2\n"), ScenarioError);
}

TEST_CASE("round trip against the normal form") {
  for (auto& f : std::filesystem::directory_iterator(data_dir() + "/scenarios")) {
    std::ifstream in(f.path());
    std::stringstream ss;
    ss << in.rdbuf();
    CAPTURE(f.path().string());
    auto sc = parse_scenario(ss.str());
    CHECK(serialize_scenario(sc) == normalize_scenario_text(ss.str()));
    CHECK(serialize_scenario(parse_scenario(serialize_scenario(sc))) == serialize_scenario(sc));
  }
  std::string text = "# comment\nname x\nbase   quadric-cycle\n\npair smooth 2 t=6/4\ncatalog N = f1-e1-ce1\n"
                     "params a=4/2\n";
  CHECK(serialize_scenario(parse_scenario(text)) == normalize_scenario_text(text));
}

TEST_CASE("named catalog") {
  auto sc = parse_scenario("base quadric-cycle\npair smooth 1\ncatalog E = e1\ncatalog cE = ce1\n");
  CHECK(sc.catalog_names() == std::vector<std::string>{"E", "cE"});
  CHECK(sc.catalog_classes().size() == 2);
}

TEST_CASE("paper check") {
  auto r = paper_check("", 0);
  CHECK(r.entries.size() >= 60);
  std::set<std::string> ids;
  for (auto& e : r.entries) {
    CHECK(ids.insert(e.id).second);
    CHECK(!e.anchor.empty());
  }
  auto t = paper_check("threefold", 0);
  CHECK(!t.entries.empty());
  for (auto& e : t.entries) CHECK(e.id.rfind("threefold/", 0) == 0);
  auto none = paper_check("nonexistent", 0);
  CHECK(none.entries.empty());
  CHECK(none.warnings.size() == 1);
  CHECK(report_json(paper_check("moduli", 0)) == report_json(paper_check("moduli", 0)));
}
