#include "anticanon/picard.hpp"

#include <cctype>

namespace acl {

bool DivisorClass::is_zero() const {
  for (long x : c)
    if (x) return false;
  return true;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  if (o.dim() != dim()) throw LatticeError("lattice dimension mismatch");
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  if (o.dim() != dim()) throw LatticeError("lattice dimension mismatch");
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
  return *this;
}

DivisorClass operator*(long k, DivisorClass x) {
  for (long& v : x.c) v *= k;
  return x;
}

SurfaceLattice::SurfaceLattice(int pairs) : pairs_(pairs) {}

DivisorClass SurfaceLattice::basis(std::size_t i) const {
  DivisorClass d(dim());
  d[i] = 1;
  return d;
}

DivisorClass SurfaceLattice::K() const {
  DivisorClass d(dim());
  d[F1] = -2;
  d[F2] = -2;
  for (std::size_t i = 2; i < dim(); ++i) d[i] = 1;
  return d;
}

DivisorClass SurfaceLattice::bidegree(long p, long q) const {
  DivisorClass d(dim());
  d[F1] = p;
  d[F2] = q;
  return d;
}

int SurfaceLattice::add_pair() {
  if (pairs_ >= 4) throw LatticeError("at most four conjugate pairs of blowups");
  ++pairs_;
  for (auto& N : catalog) N.c.resize(dim(), 0);
  return pairs_;
}

DivisorClass SurfaceLattice::lift(const DivisorClass& d) const {
  if (d.dim() > dim()) throw LatticeError("class lives on a larger lattice");
  DivisorClass r = d;
  r.c.resize(dim(), 0);
  return r;
}

std::string SurfaceLattice::basis_name(std::size_t i) const {
  if (i == F1) return "f1";
  if (i == F2) return "f2";
  int j = static_cast<int>((i - 2) / 2) + 1;
  return ((i - 2) % 2 ? "ce" : "e") + std::to_string(j);
}

std::size_t SurfaceLattice::conj_index(std::size_t i) const {
  if (i < 2) return i;
  return ((i - 2) % 2) ? i - 1 : i + 1;
}

long pair(const DivisorClass& a, const DivisorClass& b) {
  if (a.dim() != b.dim() || a.dim() < 2) throw LatticeError("lattice dimension mismatch");
  long v = a[0] * b[1] + a[1] * b[0];
  for (std::size_t i = 2; i < a.dim(); ++i) v -= a[i] * b[i];
  return v;
}

long pair(const DivisorClass& a, const DivisorClass& b, const SurfaceLattice& L) {
  if (a.dim() != L.dim() || b.dim() != L.dim()) throw LatticeError("class does not live on this lattice");
  return pair(a, b);
}

long self(const DivisorClass& a) { return pair(a, a); }

long chi(const DivisorClass& d, const SurfaceLattice& L) {
  return pair(d, d - L.K(), L) / 2 + 1;
}

long genus(const DivisorClass& d, const SurfaceLattice& L) {
  return pair(d, d + L.K(), L) / 2 + 1;
}

DivisorClass conjugate(const DivisorClass& d, const SurfaceLattice& L) {
  if (d.dim() != L.dim()) throw LatticeError("class does not live on this lattice");
  DivisorClass r(d.dim());
  for (std::size_t i = 0; i < d.dim(); ++i) r[L.conj_index(i)] = d[i];
  return r;
}

std::string class_str(const DivisorClass& d, const SurfaceLattice& L) {
  std::string s;
  for (std::size_t i = 0; i < d.dim(); ++i) {
    long v = d[i];
    if (!v) continue;
    if (v < 0) s += "-";
    else if (!s.empty()) s += "+";
    long a = v < 0 ? -v : v;
    if (a != 1) s += std::to_string(a);
    s += L.basis_name(i);
  }
  return s.empty() ? "0" : s;
}

DivisorClass parse_class(const std::string& s, const SurfaceLattice& L) {
  DivisorClass d = L.zero();
  std::size_t i = 0;
  auto skip = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
  skip();
  if (i == s.size()) throw LatticeError("empty class expression");
  if (s.substr(i) == "0") return d;
  while (i < s.size()) {
    long sign = 1;
    skip();
    if (s[i] == '+' || s[i] == '-') { sign = s[i] == '-' ? -1 : 1; ++i; skip(); }
    long k = 1;
    std::size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > st) k = std::stol(s.substr(st, i - st));
    skip();
    st = i;
    while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
    std::string name = s.substr(st, i - st);
    if (name == "K") {
      d += sign * k * L.K();
    } else {
      bool found = false;
      for (std::size_t b = 0; b < L.dim(); ++b)
        if (L.basis_name(b) == name) { d[b] += sign * k; found = true; break; }
      if (!found) throw LatticeError("unknown basis symbol '" + name + "' in '" + s + "'");
    }
    skip();
  }
  return d;
}

} // namespace acl
