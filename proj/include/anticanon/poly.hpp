#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace acl {

using Scalar = mpq_class;

// z0..z4 are homogeneous coordinates on P^4, a a1 a2 are symbolic parameters.
enum Var : int { Z0 = 0, Z1, Z2, Z3, Z4, PA, PA1, PA2, NVARS };
constexpr int NZ = 5;

const char* var_name(int v);
int var_index(const std::string& name); // -1 if unknown

using Exp = std::array<std::uint16_t, NVARS>;

// lex, z0 > z1 > ... > z4 > a > a1 > a2; the greatest monomial comes first
struct LexGreater {
  bool operator()(const Exp& x, const Exp& y) const { return x > y; }
};

class PolyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Poly {
 public:
  using Terms = std::map<Exp, Scalar, LexGreater>;

  Poly() = default;
  Poly(long c);
  Poly(const Scalar& c);
  static Poly var(int v);
  static Poly monomial(const Exp& e, const Scalar& c);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  std::size_t size() const { return t_.size(); }

  int z_degree() const; // max total degree in z-variables, -1 for zero
  bool is_z_homogeneous() const;
  bool involves(int v) const;
  bool has_parameters() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Scalar& c);
  friend Poly operator+(Poly x, const Poly& y) { return x += y; }
  friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
  friend Poly operator*(const Poly& x, const Poly& y);
  friend Poly operator*(Poly x, const Scalar& c) { return x *= c; }
  Poly operator-() const;
  friend bool operator==(const Poly& x, const Poly& y) { return x.t_ == y.t_; }
  friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }

  Poly pow(unsigned k) const;
  Poly substitute(int v, const Poly& value) const;
  // replace listed variables by rationals
  Poly specialize(const std::map<int, Scalar>& values) const;
  // coefficient of z-monomial ze, as a polynomial in the parameters
  Poly z_coefficient(const Exp& ze) const;
  // leading term under LexGreater
  std::pair<Exp, Scalar> leading() const;

  std::string str() const;

 private:
  void add_term(const Exp& e, const Scalar& c);
  Terms t_;
};

Poly parse_poly(const std::string& text);

struct LinearIdeal {
  std::vector<Poly> gens;
  bool include_scroll = false;
};

// z0^2 - z1 z2
Poly scroll_quadric();

// Normal form modulo I. Linear generators are solved for lex pivots and
// substituted; the (substituted) scroll quadric is then divided out.
Poly reduce(const Poly& p, const LinearIdeal& I, bool require_homogeneous = true);

bool is_neg_square(const Poly& p, const Poly& q, const LinearIdeal& I);

class UnluckySpecialization : public PolyError {
 public:
  using PolyError::PolyError;
};

// Draws parameter values; seeded from ANTICANON_SEED (default 0).
class Sampler {
 public:
  Sampler();
  explicit Sampler(std::uint64_t seed);
  std::uint64_t seed() const { return seed_; }
  Scalar rational();         // num, den in [-97, 97], den != 0
  Scalar nonzero_rational(); // as above, never 0
  std::map<int, Scalar> parameters(); // a, a1, a2 obeying {a,a1,a2}∩{0,1}=∅, a1!=a2
  std::mt19937_64& engine() { return eng_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

std::uint64_t default_seed();

// exact rank of a rational matrix
int matrix_rank(std::vector<std::vector<Scalar>> m);

int quadratic_rank(const Poly& p, const std::vector<int>& vars, Sampler& s);
int quadratic_rank(const Poly& p, const std::vector<int>& vars);

std::string scalar_str(const Scalar& c);

} // namespace acl
