#include <doctest.h>

#include <random>

#include "anticanon/picard.hpp"

using namespace acl;

namespace {
DivisorClass random_class(const SurfaceLattice& L, std::mt19937_64& g) {
  std::uniform_int_distribution<long> d(-5, 5);
  DivisorClass x = L.zero();
  for (auto& c : x.c) c = d(g);
  return x;
}
} // namespace

TEST_CASE("pairing rules") {
  SurfaceLattice L(4);
  auto e1 = L.basis(SurfaceLattice::e(1));
  CHECK(pair(e1, e1, L) == -1);
  CHECK(pair(L.f1(), L.f1(), L) == 0);
  CHECK(pair(L.f1(), L.f2(), L) == 1);
  CHECK(pair(e1, L.f1(), L) == 0);
  CHECK(pair(e1, L.basis(SurfaceLattice::ce(1)), L) == 0);
  CHECK_THROWS_AS(pair(e1, SurfaceLattice(3).f1()), LatticeError);
}

TEST_CASE("canonical class") {
  for (int p = 0; p <= 4; ++p) {
    SurfaceLattice L(p);
    CHECK(pair(L.K(), L.K(), L) == 8 - 2 * p);
    CHECK(genus(-L.K(), L) == 1);
    CHECK(conjugate(L.K(), L) == L.K());
  }
}

TEST_CASE("chi and genus examples") {
  SurfaceLattice L(4);
  CHECK(chi(L.zero(), L) == 1);
  CHECK(chi(-L.K(), L) == 1);
  CHECK(genus(L.f1(), L) == 0);
  CHECK(chi(L.bidegree(2, 2), L) == 9);
}

TEST_CASE("conjugation") {
  SurfaceLattice L(4);
  auto C1 = parse_class("f1-e1-e2-e3", L);
  CHECK(conjugate(C1, L) == parse_class("f1-ce1-ce2-ce3", L));
  CHECK(conjugate(L.basis(SurfaceLattice::e(1)), L) == L.basis(SurfaceLattice::ce(1)));
}

TEST_CASE("lattice properties on random classes") {
  std::mt19937_64 g(1);
  SurfaceLattice L(4);
  for (int t = 0; t < 200; ++t) {
    auto a = random_class(L, g), b = random_class(L, g), c = random_class(L, g);
    CHECK(pair(a, b, L) == pair(b, a, L));
    CHECK(pair(2 * a + c, b, L) == 2 * pair(a, b, L) + pair(c, b, L));
    CHECK(conjugate(conjugate(a, L), L) == a);
    CHECK(pair(conjugate(a, L), conjugate(b, L), L) == pair(a, b, L));
    CHECK(chi(a, L) + chi(L.K() - a, L) == pair(a, a - L.K(), L) + 2);
  }
}

TEST_CASE("class grammar round trip") {
  SurfaceLattice L(4);
  std::mt19937_64 g(2);
  for (int t = 0; t < 50; ++t) {
    auto a = random_class(L, g);
    CHECK(parse_class(class_str(a, L), L) == a);
  }
  CHECK(parse_class("-2K", L) == -2 * L.K());
  CHECK(class_str(parse_class("2f1+2f2-e1-e2", L), L) == "2f1+2f2-e1-e2");
  CHECK_THROWS_AS(parse_class("2f1+e9", L), LatticeError);
}
