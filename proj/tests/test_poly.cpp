#include <doctest.h>

#include "anticanon/poly.hpp"

using namespace acl;

namespace {
Poly P(const std::string& s) { return parse_poly(s); }
Poly z(int i) { return Poly::var(i); }
LinearIdeal ideal(std::initializer_list<const char*> gens, bool scroll = false) {
  LinearIdeal I;
  for (auto g : gens) I.gens.push_back(P(g));
  I.include_scroll = scroll;
  return I;
}
Poly random_quadric(Sampler& s) {
  Poly q;
  for (int i = 0; i < NZ; ++i)
    for (int j = i; j < NZ; ++j) q += z(i) * z(j) * s.rational();
  return q;
}
} // namespace

TEST_CASE("scalars are reduced with positive denominator") {
  Scalar q(6, -4);
  q.canonicalize();
  CHECK(q.get_den() > 0);
  CHECK(scalar_str(q) == "-3/2");
}

TEST_CASE("parse and print round trip") {
  for (const char* s : {"z0^2 - z1*z2", "3/2*z0*z3 + a*z1^2", "(z0 - z1)*(z0 - a1*z1)", "-z4^4", "0"}) {
    Poly p = P(s);
    CHECK(P(p.str()) == p);
  }
  CHECK(P("(z0+z1)^2") == P("z0^2 + 2*z0*z1 + z1^2"));
  CHECK(P("z0/2 + z0/2") == z(Z0));
  CHECK_THROWS_AS(P("z0 +"), PolyError);
  CHECK_THROWS_AS(P("z9"), PolyError);
}

TEST_CASE("reduce examples") {
  CHECK(reduce(P("z0*z3*z4*(z0 + z2 + z3)"), ideal({"z0", "z2"})).is_zero());
  LinearIdeal scroll;
  scroll.include_scroll = true;
  CHECK(reduce(scroll_quadric(), scroll).is_zero());
  CHECK_THROWS_AS(reduce(P("z0 + z1^2"), ideal({"z0"})), PolyError);
}

TEST_CASE("reduce against independent substitution") {
  Sampler s(11);
  Poly Q = random_quadric(s);
  auto I = ideal({"z0 - z1", "z2 - z0"});
  Poly p = P("z0*(z0 - z1)*z3*z4") - Q * Q;
  // on the plane z0 = z1 = z2 the product term vanishes
  Poly Qr = Q.substitute(Z0, z(Z2)).substitute(Z1, z(Z2));
  CHECK(reduce(p, I) == reduce(-(Qr * Qr), I));
  Poly direct = p.substitute(Z0, z(Z2)).substitute(Z1, z(Z2));
  CHECK(reduce(p, I) == direct);
}

TEST_CASE("reduce is idempotent and linear") {
  Sampler s(3);
  auto I = ideal({"z0 - 2*z1", "z3 + z4"}, true);
  for (int t = 0; t < 20; ++t) {
    Poly p = random_quadric(s) * random_quadric(s);
    Poly q = random_quadric(s) * random_quadric(s);
    Scalar a = s.rational(), b = s.rational();
    Poly rp = reduce(p, I);
    CHECK(reduce(rp, I) == rp);
    CHECK(reduce(p * a + q * b, I) == rp * a + reduce(q, I) * b);
  }
}

TEST_CASE("scroll rewriting leaves z0 degree at most one") {
  LinearIdeal scroll;
  scroll.include_scroll = true;
  Poly r = reduce(P("z0^4 + z0^3*z3 + z0^2*z4^2"), scroll);
  for (auto& [e, c] : r.terms()) CHECK(e[Z0] <= 1);
  CHECK(r == P("z1^2*z2^2 + z0*z1*z2*z3 + z1*z2*z4^2"));
}

TEST_CASE("quadratic rank examples") {
  CHECK(quadratic_rank(P("z2*z3"), {Z2, Z3, Z4}) == 2);
  CHECK(quadratic_rank(P("z2*z3 + z4^2"), {Z2, Z3, Z4}) == 3);
  CHECK(quadratic_rank(P("z4^2"), {Z2, Z3, Z4}) == 1);
  CHECK(quadratic_rank(P("(z2 - a*z3)*(z2 - z4)"), {Z2, Z3, Z4}) == 2);
  CHECK(quadratic_rank(P("z2^2 + a*z3^2 + z4^2"), {Z2, Z3, Z4}) == 3);
}

TEST_CASE("quadratic rank is invariant under invertible changes") {
  Sampler s(5);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 20; ++t) {
    Poly q = P("z2*z3 + z4^2") * s.nonzero_rational();
    if (t % 2) q = P("(z2 + z3)*(z3 - 2*z4)");
    int before = quadratic_rank(q, {Z2, Z3, Z4});
    // unit upper triangular substitution, then a coordinate swap
    int u = d(s.engine()), v = d(s.engine()), w = d(s.engine());
    Poly x = q.substitute(Z2, z(PA)).substitute(Z3, z(PA1)).substitute(Z4, z(PA2));
    x = x.substitute(PA, z(Z2) + z(Z3) * Poly(long(u)) + z(Z4) * Poly(long(v)))
            .substitute(PA1, z(Z3) + z(Z4) * Poly(long(w)))
            .substitute(PA2, z(Z4));
    CHECK(quadratic_rank(x, {Z2, Z3, Z4}) == before);
  }
}

TEST_CASE("negative square test") {
  Sampler s(7);
  Poly Q = random_quadric(s);
  CHECK(is_neg_square(P("z0*z3*z4*z2") - Q * Q, Q, ideal({"z0", "z2"})));
  CHECK(is_neg_square(P("z0*(z0 - z1)*z3*z4") - Q * Q, Q, ideal({"z0 - z1", "z2 - z0"})));
  CHECK_FALSE(is_neg_square(P("z3^4") - Q * Q, Q, ideal({"z0", "z2"})));
}

TEST_CASE("sampler respects parameter constraints and seed") {
  Sampler a(42), b(42);
  for (int i = 0; i < 50; ++i) {
    auto p = a.parameters();
    CHECK(p == b.parameters());
    for (auto& [v, c] : p) {
      CHECK(c != 0);
      CHECK(c != 1);
    }
    CHECK(p.at(PA1) != p.at(PA2));
    Scalar r = a.rational();
    b.rational();
    CHECK(abs(r.get_num()) <= 97);
    CHECK(r.get_den() <= 97);
  }
}

TEST_CASE("matrix rank") {
  CHECK(matrix_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(matrix_rank({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == 3);
  CHECK(matrix_rank({}) == 0);
}
