#include <doctest.h>

#include <set>

#include "anticanon/branch.hpp"
#include "anticanon/report.hpp"

using namespace acl;

namespace {
Poly P(const std::string& s) { return parse_poly(s); }
Poly z(int i) { return Poly::var(i); }

Poly product(const std::vector<Poly>& fs) {
  Poly p(1);
  for (auto& f : fs) p *= f;
  return p;
}

Poly random_quadric(Sampler& s) {
  Poly q;
  for (int i = 0; i < NZ; ++i)
    for (int j = i; j < NZ; ++j) q += z(i) * z(j) * s.rational();
  return q;
}
} // namespace

TEST_CASE("placements lie on the conic") {
  const std::size_t sizes[] = {2, 3, 4, 5};
  for (int t = 1; t <= 4; ++t) {
    auto ps = lambda_placements(t);
    CHECK(ps.size() == sizes[t - 1]);
    for (auto& p : ps) CHECK(p.on_conic());
  }
  auto iii = lambda_placements(3);
  CHECK(iii[2].lambda[0] == z(PA));
  CHECK(iii[2].lambda[2] == z(PA) * z(PA));
}

TEST_CASE("ridge ideal is the projection ideal") {
  auto I = ridge_ideal();
  CHECK(I.gens.size() == 3);
  for (int v : {Z0, Z1, Z2}) CHECK(reduce(z(v), I).is_zero());
  CHECK_FALSE(reduce(z(Z3), I).is_zero());
}

TEST_CASE("factor product vanishes on every plane, symbolically") {
  for (int t = 1; t <= 4; ++t) {
    Poly prod = product(quartic_factors(t, P("z1 + z2 + z3 + 2*z4")));
    for (auto& p : lambda_placements(t)) {
      CAPTURE(p.str());
      CHECK(reduce(prod, p.plane).is_zero());
    }
  }
}

TEST_CASE("restriction to the ridge is a negative square for every type") {
  Sampler s(21);
  for (int t = 1; t <= 4; ++t) {
    for (int i = 0; i < 5; ++i) {
      Poly Q = random_quadric(s);
      Poly F = product(quartic_factors(t, P("z1 - z3 + z4"))) - Q * Q;
      CHECK(is_neg_square(F, Q, ridge_ideal()));
    }
  }
}

TEST_CASE("zero profile on the conic") {
  Sampler s(2);
  CHECK(conic_zero_profile(1, {}) == std::vector<int>{1, 1});
  CHECK(conic_zero_profile(2, {}) == std::vector<int>{1, 1, 2});
  CHECK(conic_zero_profile(3, s.parameters()) == std::vector<int>{1, 1, 1, 3});
  CHECK(conic_zero_profile(4, s.parameters()) == std::vector<int>{1, 1, 1, 1, 4});
}

TEST_CASE("incidence totals") {
  const int totals[] = {26, 18, 10, 2};
  for (int t = 1; t <= 4; ++t) {
    auto it = incidence_table(t);
    CHECK(it.total == totals[t - 1]);
    CHECK(it.curves.size() == 5);
    int nc = 0, nq = 0, sum = 0;
    for (auto& c : it.curves) (c.kind == DoubleCurve::Quartic ? nq : nc)++;
    CHECK(it.total == incidence_closed_form(nc, nq));
    for (std::size_t i = 0; i < it.count.size(); ++i)
      for (std::size_t j = 0; j < it.count.size(); ++j) {
        CHECK(it.count[i][j] == it.count[j][i]);
        if (i < j) sum += it.count[i][j];
        if (i == j) continue;
        bool qi = it.curves[i].kind == DoubleCurve::Quartic, qj = it.curves[j].kind == DoubleCurve::Quartic;
        CHECK(it.count[i][j] == (qi && qj ? 4 : 2));
      }
    // conic pairs share {q, cq}, so the total counts distinct points
    CHECK(sum >= it.total);
  }
}

TEST_CASE("shipped fixtures pass every check") {
  for (int t = 1; t <= 4; ++t) {
    auto fx = load_quartic_fixture(t);
    auto m = assemble_quartic(t, fx.Q, fx.f, fx.params);
    CHECK(m.ok());
    int planes = 0, hyper = 0;
    bool rank = false;
    for (auto& c : m.checks) {
      planes += c.id.rfind("a:", 0) == 0;
      hyper += c.id.rfind("d:", 0) == 0;
      rank = rank || c.id == "c:splitting-rank";
    }
    CHECK(planes == static_cast<int>(lambda_placements(t).size()));
    CHECK(rank == (t >= 2));
    CHECK(hyper == (t == 4 ? 0 : 4 - t));
    CHECK(reduce(m.F + m.Q * m.Q, ridge_ideal()).is_zero());
    CHECK_FALSE(reduce(m.Q, ridge_ideal()).is_zero());
    CHECK(parse_quartic_fixture(quartic_fixture_text(fx)).Q == fx.Q);
    auto js = quartic_json(m);
    CHECK(js.find("necessary conditions only") != std::string::npos);
  }
}

TEST_CASE("bad quartics are rejected with the failing check") {
  try {
    assemble_quartic(1, P("z0*z3 + z1*z4 + z2^2"), P("z1 + z2 + z3 + z4"), {});
    FAIL("accepted a quadric inside the ridge ideal");
  } catch (const QuarticCheckFailed& e) {
    CHECK(e.check.rfind("b:", 0) == 0);
  }
  // real roots on the ridge
  CHECK_THROWS_AS(assemble_quartic(2, P("z3^2 - z4^2 + z0*z1"), Poly(), {}), QuarticCheckFailed);
  // rank three on the splitting conic
  auto fx = load_quartic_fixture(2);
  auto m = validate_quartic(2, fx.Q + P("z2*z4"), Poly(), {});
  bool rank_failed = false;
  for (auto& c : m.checks) rank_failed = rank_failed || (c.id == "c:splitting-rank" && !c.pass);
  CHECK(rank_failed);
  CHECK_THROWS_AS(validate_parameters(3, {{PA, 1}}), BranchError);
  CHECK_THROWS_AS(validate_parameters(4, {{PA1, 2}, {PA2, 2}}), BranchError);
  CHECK_THROWS_AS(validate_parameters(4, {{PA1, 2}}), BranchError);
  CHECK_THROWS_AS(assemble_quartic(1, P("z0^3"), P("z1"), {}), BranchError);
}

TEST_CASE("quadric conditions") {
  QuadricCondition pt;
  pt.kind = QuadricCondition::Point;
  pt.point = {1, 0, 0, 0, 0};
  CHECK(quadric_constraint_dim({pt}) == 13);
  CHECK(quadric_monomials().size() == 15);
  std::vector<QuadricCondition> pts;
  for (int i = 0; i < 5; ++i) {
    QuadricCondition c;
    c.kind = QuadricCondition::Point;
    c.point.assign(5, 0);
    c.point[i] = 1;
    pts.push_back(c);
  }
  CHECK(quadric_constraint_dim(pts) == 9);
  for (auto& q : quadric_solutions(pts))
    for (auto& [e, c] : q.terms()) {
      int nz = 0;
      for (int v = 0; v < NZ; ++v) nz += e[v] > 0;
      CHECK(nz == 2);
    }
}

TEST_CASE("quadric dimension counts on synthesized instances") {
  for (int t = 1; t <= 4; ++t) {
    CAPTURE(t);
    Sampler s(100 + t);
    auto r = constraint_report(t, s, 2);
    CHECK_FALSE(r.degenerate);
    CHECK(r.certified);
    CHECK(contains_double_curves(synthesize_instance(t, s).quartic, scroll_quadric()));
    if (t == 1) {
      CHECK(r.stages[0].dim == 6);
      CHECK(r.stages[1].dim >= 2);
    }
    if (t == 2 || t == 3) CHECK(r.final_dim() >= 2);
    if (t >= 3) CHECK(r.tangent_span == 3);
  }
}

TEST_CASE("half sums") {
  auto x = parse_half_sum("S1+ + S2+ + S3- + S6-");
  CHECK(half_sum_str(x) == "S1+ + S2+ + S3- + S6-");
  CHECK(conjugate(conjugate(x)) == x);
  CHECK(coverage(parse_half_sum("S2+ + S2-"), 6) == std::vector<int>(12, 1));
  int total = 0;
  for (int c : coverage(x, 6)) total += c;
  CHECK(total == 2 * 12);
  CHECK_THROWS(parse_half_sum("S0+"));
}

TEST_CASE("uniform search is conjugation closed") {
  const std::size_t counts[] = {3, 6, 10, 15, 21};
  for (int k = 2; k <= 6; ++k) {
    auto xs = half_cycle_search(k);
    CHECK(xs.size() == counts[k - 2]);
    CHECK(conjugation_closed(xs));
    for (auto& x : xs) CHECK(coverage(x, k) == std::vector<int>(2 * k, 2));
  }
}

TEST_CASE("lattice search recovers exactly the selections and their conjugates") {
  struct Case {
    std::string name;
    std::vector<std::string> xs;
  };
  const std::vector<Case> cases = {
      {"k6-a", {"S1+ + S2+ + S3- + S6-", "S3+ + S4+ + S5+ + S6-"}},
      {"k6-b", {"S2+ + S3+ + S5+ + S6-", "S1- + S3- + S4+ + S6+", "S1+ + S2- + S4- + S5-"}},
      {"k4-cb", {"S1+ + S2+ + S3+ + S4-"}},
  };
  for (auto& c : cases) {
    CAPTURE(c.name);
    const ReferenceSurface* p = nullptr;
    for (auto& q : reference_surfaces())
      if (q.name == c.name) p = &q;
    REQUIRE(p);
    auto cfg = surface_config(*p);
    auto xs = half_cycle_search(cfg);
    CHECK(conjugation_closed(xs));
    std::set<HalfSum> want, mixed;
    for (auto& x : c.xs) {
      want.insert(parse_half_sum(x));
      want.insert(conjugate(parse_half_sum(x)));
    }
    for (auto& x : xs) {
      // the sum of all component classes is the cycle class C twice
      DivisorClass sum = cfg.lattice().zero();
      for (auto& h : x)
        for (int comp : half_components(h, cfg.k())) sum += cfg.component(comp);
      CHECK(sum == 2 * cfg.total());
      bool split = std::all_of(x.begin(), x.end(),
                               [&](auto& h) { return std::count(x.begin(), x.end(), conjugate(h)) > 0; });
      if (!split) mixed.insert(x);
    }
    CHECK(mixed == want);
  }
}

TEST_CASE("relations among the three sums") {
  auto X1 = parse_half_sum("S2+ + S3+ + S5+ + S6-");
  auto X2 = parse_half_sum("S1- + S3- + S4+ + S6+");
  auto X3 = parse_half_sum("S1+ + S2- + S4- + S5-");
  auto pm = [](int i) { return parse_half_sum("S" + std::to_string(i) + "+ + S" + std::to_string(i) + "-"); };
  CHECK(X1 + X2 == conjugate(X3) + pm(3) + pm(6));
  CHECK(X2 + X3 == conjugate(X1) + pm(1) + pm(4));
  CHECK(X3 + X1 == conjugate(X2) + pm(2) + pm(5));
}
