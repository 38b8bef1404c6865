#include <doctest.h>

#include <random>
#include <set>

#include "anticanon/cycles.hpp"
#include "anticanon/threefold.hpp"

using namespace acl;

namespace {
BlowupEvent node(int i) { BlowupEvent e; e.kind = BlowupEvent::Node; e.index = i; return e; }
BlowupEvent smooth(int i) { BlowupEvent e; e.kind = BlowupEvent::Smooth; e.index = i; return e; }

void check_cycle(const CycleConfig& c) {
  const auto& L = c.lattice();
  CHECK(c.total() == -L.K());
  int m = c.m();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int d = (j - i) % m;
      long want = (d == 1 || d == m - 1) ? 1 : 0;
      CHECK(pair(c.component(i), c.component(j), L) == want);
    }
  auto s = c.string();
  for (int i = 0; i < m; ++i) CHECK(s[i] == pair(c.component(i), c.component(i), L));
  for (int i = 0; i < c.k(); ++i) CHECK(conjugate(c.component(i), L) == c.component(i + c.k()));
}

std::vector<int> rotate(std::vector<int> s, int r, bool rev) {
  if (rev) std::reverse(s.begin(), s.end());
  std::rotate(s.begin(), s.begin() + r, s.end());
  return s;
}
} // namespace

TEST_CASE("base cycle") {
  CycleConfig c;
  CHECK(c.m() == 4);
  CHECK(c.string() == std::vector<int>{0, 0, 0, 0});
  check_cycle(c);
  CHECK(degree_profile(-c.lattice().K(), c).degrees == std::vector<long>{2, 2, 2, 2});
}

TEST_CASE("type I configuration") {
  auto c = apply_events({smooth(1), smooth(1), smooth(1), smooth(2)});
  check_cycle(c);
  CHECK(canonical_string(c) == canonical_string(parse_string("(-3,-1,-3,-1)")));
  auto al = *c.aligned(parse_string("(-3,-1,-3,-1)"));
  CHECK(degree_profile(-al.lattice().K(), al).degrees == std::vector<long>{-1, 1, -1, 1});
}

TEST_CASE("event effects") {
  CycleConfig c;
  auto n = c.apply(node(1));
  CHECK(n.m() == 6);
  CHECK(n.string() != c.string());
  int drops = 0;
  auto s0 = c.string(), s1 = n.string();
  long sum0 = 0, sum1 = 0;
  for (int v : s0) sum0 += v;
  for (int v : s1) sum1 += v;
  // two new -1 curves and four neighbour entries lowered by one
  for (int v : s1) drops += v == -1;
  CHECK(drops == 6);
  CHECK(sum1 == sum0 - 4 - 2);
  auto sm = c.apply(smooth(2));
  CHECK(sm.m() == 4);
  CHECK(sm.string() == std::vector<int>{0, -1, 0, -1});
  CHECK_THROWS_AS(c.apply(smooth(9)), CycleError);
  CHECK_THROWS_AS(c.apply(node(0)), CycleError);
  auto full = apply_events({smooth(1), smooth(1), smooth(1), smooth(2)});
  CHECK_THROWS_AS(full.apply(smooth(1)), CycleError);
}

TEST_CASE("random event sequences keep the cycle anticanonical") {
  std::mt19937_64 g(9);
  for (int t = 0; t < 60; ++t) {
    CycleConfig c;
    for (int p = 0; p < 4; ++p) {
      std::uniform_int_distribution<int> kind(0, 1), idx(1, c.m());
      c = c.apply(kind(g) ? node(idx(g)) : smooth(idx(g)));
      check_cycle(c);
    }
    CHECK(pair(c.lattice().K(), c.lattice().K(), c.lattice()) == 0);
    CHECK(c.m() % 2 == 0);
    CHECK(c.m() >= 4);
    CHECK(c.m() <= 12);
  }
}

TEST_CASE("canonical string is a symmetry invariant") {
  std::mt19937_64 g(4);
  for (auto s : {"(-3,-1,-3,-2,-1,-3,-1,-3,-2,-1)", "(-2,-3,-2,-1,-2,-3,-2,-1)", "(-3,-1,-3,-1)"}) {
    auto v = parse_string(s);
    for (int t = 0; t < 20; ++t) {
      std::uniform_int_distribution<int> r(0, static_cast<int>(v.size()) - 1), b(0, 1);
      CHECK(canonical_string(rotate(v, r(g), b(g))) == canonical_string(v));
    }
  }
  CHECK(canonical_string(parse_string("(-3,-1,-3,-1)")) == parse_string("(-3,-1,-3,-1)"));
}

TEST_CASE("intermediate toric surface with k=5") {
  auto c = apply_events({node(1), node(1), node(1)});
  CHECK(canonical_string(c) == canonical_string(parse_string("(-3,-1,-2,-2,-1,-3,-1,-2,-2,-1)")));
}

TEST_CASE("moishezon obstruction on the all (-2) cycle") {
  auto c = apply_events({node(1), node(1), smooth(2), smooth(4)});
  auto canon = canonical_string(c);
  bool all_m2 = std::all_of(canon.begin(), canon.end(), [](int v) { return v == -2; });
  CHECK(all_m2);
  auto d = degree_profile(-c.lattice().K(), c);
  CHECK(d.topologically_trivial);
}

TEST_CASE("enumeration") {
  auto all = enumerate_scenarios();
  std::set<std::vector<int>> seen, k6;
  for (auto& e : all) {
    CHECK(seen.insert(canonical_string(e.string)).second);
    CHECK(e.string.size() % 2 == 0);
    CHECK(e.string.size() >= 4);
    CHECK(e.string.size() <= 12);
    CHECK(canonical_string(apply_events(e.events)) == canonical_string(e.string));
    if (e.string.size() == 12) k6.insert(canonical_string(e.string));
  }
  std::set<std::vector<int>> want = {
      canonical_string(parse_string("(-4,-1,-2,-2,-2,-1,-4,-1,-2,-2,-2,-1)")),
      canonical_string(parse_string("(-3,-2,-1,-3,-2,-1,-3,-2,-1,-3,-2,-1)")),
      canonical_string(parse_string("(-3,-1,-3,-1,-3,-1,-3,-1,-3,-1,-3,-1)"))};
  CHECK(k6 == want);
  auto s11 = canonical_string(parse_string("(-4,-1,-2,-2,-2,-1,-4,-1,-2,-2,-2,-1)"));
  for (auto& e : all) {
    if (canonical_string(e.string) == s11) CHECK(e.h0_anticanonical == 3);
    else if (e.string.size() == 12) CHECK(e.h0_anticanonical == 1);
  }
  for (int t = 1; t <= 4; ++t) {
    auto s = canonical_string(double_solid_string(t));
    CHECK(seen.count(s) == 1);
  }
}
