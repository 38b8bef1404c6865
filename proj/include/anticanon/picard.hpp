#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace acl {

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficients over (f1, f2, e1, ce1, e2, ce2, ...).
struct DivisorClass {
  std::vector<long> c;

  DivisorClass() = default;
  explicit DivisorClass(std::size_t dim) : c(dim, 0) {}
  std::size_t dim() const { return c.size(); }
  long& operator[](std::size_t i) { return c[i]; }
  long operator[](std::size_t i) const { return c[i]; }
  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  friend DivisorClass operator+(DivisorClass x, const DivisorClass& y) { return x += y; }
  friend DivisorClass operator-(DivisorClass x, const DivisorClass& y) { return x -= y; }
  friend DivisorClass operator*(long k, DivisorClass x);
  DivisorClass operator-() const { return -1 * *this; }
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  friend bool operator<(const DivisorClass& x, const DivisorClass& y) { return x.c < y.c; }
};

// Blowup of F0 at n points, exceptional classes come in conjugate pairs.
class SurfaceLattice {
 public:
  SurfaceLattice() = default;
  explicit SurfaceLattice(int pairs);

  int pairs() const { return pairs_; }
  int n() const { return 2 * pairs_; }
  std::size_t dim() const { return 2 + n(); }

  // basis indices
  static constexpr std::size_t F1 = 0, F2 = 1;
  static std::size_t e(int j) { return 2 + 2 * (j - 1); }     // j is 1-based
  static std::size_t ce(int j) { return 2 + 2 * (j - 1) + 1; }

  DivisorClass zero() const { return DivisorClass(dim()); }
  DivisorClass basis(std::size_t i) const;
  DivisorClass f1() const { return basis(F1); }
  DivisorClass f2() const { return basis(F2); }
  DivisorClass K() const;
  DivisorClass bidegree(long p, long q) const;

  // adds one conjugate pair, returns its 1-based index
  int add_pair();
  // widen a class from a smaller lattice
  DivisorClass lift(const DivisorClass& d) const;

  std::vector<DivisorClass> catalog;

  std::string basis_name(std::size_t i) const;
  std::size_t conj_index(std::size_t i) const;

 private:
  int pairs_ = 0;
};

long pair(const DivisorClass& a, const DivisorClass& b);
long pair(const DivisorClass& a, const DivisorClass& b, const SurfaceLattice& L);
long self(const DivisorClass& a);
long chi(const DivisorClass& d, const SurfaceLattice& L);
long genus(const DivisorClass& d, const SurfaceLattice& L);
DivisorClass conjugate(const DivisorClass& d, const SurfaceLattice& L);

// "2f1+2f2-e1-ce2"
std::string class_str(const DivisorClass& d, const SurfaceLattice& L);
DivisorClass parse_class(const std::string& s, const SurfaceLattice& L);

} // namespace acl
