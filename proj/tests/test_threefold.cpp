#include <doctest.h>

#include <random>

#include "anticanon/threefold.hpp"

using namespace acl;

namespace {
GlobalClass random_class(const std::vector<std::string>& gens, std::mt19937_64& g) {
  std::uniform_int_distribution<long> d(-3, 3);
  GlobalClass c;
  for (auto& n : gens) {
    long v = d(g);
    if (v) c[n] = v;
  }
  return c;
}
std::vector<std::string> names(const std::vector<Curve>& cs) {
  std::vector<std::string> v;
  for (auto& c : cs) v.push_back(c.name());
  std::sort(v.begin(), v.end());
  return v;
}
} // namespace

TEST_CASE("products on the string (-3,-1)x4 model") {
  auto m = string8_model();
  GlobalClass F = gen("F");
  GlobalClass E = gen("E1") + gen("E3") + gen("cE1") + gen("cE3");
  GlobalClass L = 2 * F - E;
  CHECK(m.triple(F, F, F) == 0);
  for (auto e : {"E1", "E3", "cE1", "cE3"}) CHECK(m.triple(L, L, gen(e)) == 0);
  for (long k = 1; k <= 4; ++k) CHECK(m.triple(L, L, k * F) == 4 * k);
  CHECK(m.path_check().empty());
}

TEST_CASE("rewriting the pullback generator leaves products unchanged") {
  auto m = build_double_solid(2).model;
  auto rel = m.relation("F");
  REQUIRE(rel);
  auto gens = m.evaluable_generators();
  std::mt19937_64 g(8);
  for (int t = 0; t < 50; ++t) {
    GlobalClass a = random_class(gens, g), b = random_class(gens, g);
    CHECK(m.triple(gen("F"), a, b) == m.triple(*rel, a, b));
  }
}

TEST_CASE("triple products are symmetric, trilinear and path independent") {
  std::mt19937_64 g(12);
  for (int t = 1; t <= 4; ++t) {
    CAPTURE(t);
    auto ds = build_double_solid(t);
    auto gens = ds.model.evaluable_generators();
    CHECK(gens.size() >= ds.model.sheets().size());
    for (int i = 0; i < 100; ++i) {
      GlobalClass a = random_class(gens, g), b = random_class(gens, g), c = random_class(gens, g),
                  d = random_class(gens, g);
      std::vector<PathMismatch> mm;
      long v = ds.model.triple(a, b, c, &mm);
      CHECK(mm.empty());
      CHECK(v == ds.model.triple(c, a, b));
      CHECK(v == ds.model.triple(b, a, c));
      CHECK(ds.model.triple(a + d, b, c) == v + ds.model.triple(d, b, c));
      CHECK(ds.model.triple(3 * a, b, c) == 3 * v);
    }
    CHECK(ds.model.path_check().empty());
  }
}

TEST_CASE("missing entries are reported") {
  ThreefoldModel m;
  m.add_generator("X", GenKind::Half);
  CHECK_THROWS_AS(m.triple(gen("X"), gen("X"), gen("X")), ThreefoldError);
  CHECK_THROWS_AS(m.kind("nope"), std::exception);
}

TEST_CASE("type I is free at the first stage") {
  auto r = eliminate(1);
  CHECK(r.stage1.base.empty());
  CHECK(r.stage1.free);
  CHECK(r.final_free);
  CHECK(r.stage1.restrictions.at("E1") == "(1,1) - Delta1 - cDelta2");
  CHECK(r.stage1.restrictions.at("E2") == "0");
}

TEST_CASE("type II base curves and freeness") {
  auto r = eliminate(2);
  CHECK(names(r.stage1.base) == std::vector<std::string>{"S3+∩cE1", "S3-∩E1"});
  for (auto& c : r.stage1.base) CHECK(c.degree == -1);
  REQUIRE(r.stage2);
  CHECK(r.stage2->free);
  CHECK(elimination_text(r).find("base curves: S3-∩E1, S3+∩cE1") != std::string::npos);
}

TEST_CASE("type III has four base curves") {
  auto r = eliminate(3);
  CHECK(r.stage1.base.size() == 4);
  CHECK(r.final_free);
}

TEST_CASE("type IV restriction and final freeness") {
  auto r = eliminate(4);
  CHECK(r.stage1.restrictions.at("E4") == "(1,1) - Delta4");
  CHECK(r.final_free);
}

TEST_CASE("transcribed tables agree with the computation") {
  for (int t = 1; t <= 4; ++t) {
    CAPTURE(t);
    auto tb = load_type_table(t);
    auto r = eliminate(t, &tb);
    CHECK(!r.checks.empty());
    for (auto& c : r.checks) {
      CAPTURE(c.id);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("a tampered table is caught") {
  auto tb = load_type_table(1);
  for (auto& [stage, sheet, cls] : tb.restrictions)
    if (sheet == "E1") cls = "(1,1) - Delta1";
  auto r = eliminate(1, &tb);
  bool failed = std::any_of(r.checks.begin(), r.checks.end(), [](auto& c) { return !c.pass; });
  CHECK(failed);
}

TEST_CASE("type names") {
  for (int t = 1; t <= 4; ++t) CHECK(parse_type(type_name(t)) == t);
  CHECK_THROWS_AS(parse_type("V"), ThreefoldError);
}
