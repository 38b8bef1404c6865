#include <doctest.h>

#include "anticanon/moduli.hpp"
#include "anticanon/threefold.hpp"

using namespace acl;

TEST_CASE("euler characteristics") {
  CHECK(chi_theta_Z(4) == -13);
  CHECK(chi_theta_Z(3) == -6);
  CHECK(chi_theta_S(0) == -10);
  CHECK(chi_theta_S(8) == 6);
  CHECK(chi_theta_S(9) == 8);
}

TEST_CASE("diagram dimensions") {
  auto d = diagram_dims();
  CHECK(d.h1_theta_Z == 13);
  CHECK(d.h1_theta_ZS == 14);
  CHECK(d.h1_theta_Z_minus_S == 4);
  CHECK(diagram_dims(13, 2, 1, 10).h1_theta_ZS == 14);
}

TEST_CASE("double solid rows") {
  auto c1 = moduli_case("I", ModuliKind::DoubleSolid, apply_events(double_solid_events(1)));
  CHECK(c1.p == 4);
  CHECK(c1.directions.size() == 2);
  CHECK(dim_V(c1) == 6);
  CHECK(moduli_dim(c1) == 9);
  auto c3 = moduli_case("III", ModuliKind::DoubleSolid, apply_events(double_solid_events(3)));
  CHECK(dim_V(c3) == 2);
  CHECK(moduli_dim(c3) == 5);
}

TEST_CASE("campana kreussler row") {
  ModuliCase ck;
  ck.label = "CK";
  ck.k = 4;
  ck.kind = ModuliKind::CampanaKreussler;
  ck.h0K = 2;
  ck.pinned_V = 7;
  CHECK(moduli_dim(ck) == 9);
  ck.pinned_V.reset();
  CHECK_THROWS_AS(moduli_dim(ck), ModuliError);
}

TEST_CASE("full table") {
  auto rows = moduli_table();
  std::multiset<int> got;
  for (auto& r : rows) {
    CAPTURE(r.c.label);
    CHECK(r.computed == r.expected);
    if (r.c.kind != ModuliKind::CampanaKreussler) got.insert(r.computed);
  }
  CHECK(got == std::multiset<int>{3, 4, 4, 5, 5, 6, 7, 9});
  auto md = moduli_table_md(rows);
  CHECK(md.find("| 9") != std::string::npos);
}

TEST_CASE("monotonicity over the valid domain") {
  for (int p = 0; p <= 4; ++p)
    for (int nd = 0; nd <= std::min(p, 2); ++nd) {
      ModuliCase c;
      c.k = 2;
      c.kind = ModuliKind::DoubleSolid;
      c.p = p;
      if (nd >= 1) c.directions.insert("ruling-1");
      if (nd >= 2) c.directions.insert("ruling-2");
      int v = moduli_dim(c);
      if (p < 4) {
        ModuliCase d = c;
        d.p = p + 1;
        CHECK(moduli_dim(d) >= v);
      }
      if (nd < std::min(p, 2)) {
        ModuliCase d = c;
        d.directions.insert(nd == 0 ? "ruling-1" : "ruling-2");
        CHECK(moduli_dim(d) <= v);
      }
    }
}

TEST_CASE("invalid cases") {
  ModuliCase c;
  c.k = 6;
  c.kind = ModuliKind::DoubleSolid;
  CHECK_THROWS_AS(moduli_dim(c), ModuliError);
  c.kind = ModuliKind::Birational;
  c.p = 5;
  CHECK_THROWS_AS(moduli_dim(c), ModuliError);
}
