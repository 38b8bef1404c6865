#include <doctest.h>

#include "anticanon/linsys.hpp"
#include "anticanon/report.hpp"
#include "anticanon/threefold.hpp"

using namespace acl;

namespace {
const ReferenceSurface& surface(const std::string& name) {
  for (auto& p : reference_surfaces())
    if (p.name == name) return p;
  throw std::runtime_error("no surface " + name);
}
DivisorClass sum(const CycleConfig& c, std::initializer_list<std::pair<int, long>> terms) {
  DivisorClass d = c.lattice().zero();
  for (auto [i, m] : terms) d += m * c.component(i);
  return d;
}
} // namespace

TEST_CASE("strip examples") {
  auto c = surface_config(surface("k4-b"));
  const auto& L = c.lattice();
  auto st = strip(2 * (-L.K()), c.default_catalog());
  CHECK(st.fixed == sum(c, {{0, 1}, {2, 1}, {4, 1}, {6, 1}}));
  CHECK(st.fixed + st.movable == 2 * (-L.K()));
  CHECK(pair(st.movable, st.movable, L) == 4);
  CHECK(genus(st.movable, L) == 1);

  auto p = surface_config(surface("k4-cb"));
  auto sp = strip(2 * (-p.lattice().K()), p.default_catalog());
  CHECK(sp.fixed == sum(p, {{0, 1}, {1, 2}, {2, 1}, {4, 1}, {5, 2}, {6, 1}}));

  auto f = strip(L.f1(), c.default_catalog());
  CHECK(f.fixed.is_zero());
  CHECK(f.movable == L.f1());
}

TEST_CASE("divergent stripping is reported") {
  SurfaceLattice L(1);
  std::vector<DivisorClass> bad = {-1 * L.f1()};
  CHECK_THROWS_AS(strip(L.f2(), bad), LinSysError);
}

TEST_CASE("h0 of twice the anticanonical class on every surface") {
  Sampler s(0);
  for (auto& p : reference_surfaces()) {
    CAPTURE(p.name);
    auto c = surface_config(p);
    auto r = analyze(c, 2 * (-c.lattice().K()), s);
    CHECK(r.h0 == p.h0_2K);
    CHECK(r.B + r.M == r.D);
    for (auto& N : c.default_catalog()) CHECK(pair(r.M, N, c.lattice()) >= 0);
    REQUIRE(r.oracle.values.size() == 3);
    for (int v : r.oracle.values) CHECK(v == r.h0);
    if (is_toric(c)) {
      REQUIRE(r.toric);
      CHECK(*r.toric == r.h0);
    }
  }
}

TEST_CASE("oracle examples") {
  CHECK(oracle_h0(2, 2, {}, {}) == 9);
  Sampler s(1);
  auto c = apply_events(double_solid_events(1));
  CHECK(oracle_h0_generic(c, -c.lattice().K(), s) == 1);
  CHECK(oracle_h0_generic(c, 2 * (-c.lattice().K()), s) == 3);
  CHECK_THROWS_AS(oracle_h0(2, 2, {}, {1}), LinSysError);
}

TEST_CASE("toric counts") {
  // quadric surface as the square fan
  std::vector<std::array<long, 2>> sq = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  CHECK(toric_h0(sq, {1, 1, 1, 1}) == 9);
  CHECK(toric_h0(sq, {0, 0, 0, 0}) == 1);
  CHECK_THROWS_AS(fan_from_string({-1, -1, -1, -1, -1}), LinSysError);
  auto rays = fan_from_string(parse_string("(-3,-1,-3,-1,-3,-1,-3,-1,-3,-1,-3,-1)"));
  CHECK(rays.size() == 12);
}

TEST_CASE("map classification") {
  Sampler s(2);
  auto pencil = surface_config(surface("k4-cb"));
  CHECK(analyze(pencil, 2 * (-pencil.lattice().K()), s).map == MapKind::ComposedWithPencil);
  auto bir = surface_config(surface("k4-b"));
  auto rb = analyze(bir, 2 * (-bir.lattice().K()), s);
  CHECK(rb.map == MapKind::Birational);
  CHECK(rb.target_dim == 4);
  auto two = surface_config(surface("typeI"));
  CHECK(analyze(two, 2 * (-two.lattice().K()), s).map == MapKind::DegreeTwoOntoPlane);
}

TEST_CASE("special classes") {
  Sampler s(3);
  std::vector<std::pair<int, int>> cases = {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {3, 1}};
  for (auto [t, i] : cases) {
    auto c = *apply_events(double_solid_events(t)).aligned(double_solid_string(t));
    for (int sign : {-1, 1}) CHECK(special_class_h0(c, i, sign, true, s).h0 == 1);
  }
  auto c2 = *apply_events(double_solid_events(2)).aligned(double_solid_string(2));
  const auto& L2 = c2.lattice();
  DivisorClass D = -L2.K() - (L2.basis(SurfaceLattice::e(1)) - L2.basis(SurfaceLattice::ce(1)));
  CHECK(pair(D, c2.component(0), L2) == -2);
  CHECK_THROWS_AS(special_class_h0(c2, 7, 1, false, s), LinSysError);
}

TEST_CASE("h0 is monotone under adding catalog curves") {
  Sampler s(4);
  for (auto& name : {"k4-b", "typeII", "k6-a"}) {
    auto c = surface_config(surface(name));
    DivisorClass D = 2 * (-c.lattice().K());
    int base = analyze(c, D, s).h0;
    for (auto& N : c.default_catalog()) CHECK(base <= oracle_h0_generic(c, D + N, s));
  }
}
