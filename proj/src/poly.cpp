#include "anticanon/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace acl {

namespace {
const char* const kNames[NVARS] = {"z0", "z1", "z2", "z3", "z4", "a", "a1", "a2"};

Exp zero_exp() { Exp e{}; return e; }
} // namespace

const char* var_name(int v) { return kNames[v]; }

int var_index(const std::string& name) {
  for (int i = 0; i < NVARS; ++i)
    if (name == kNames[i]) return i;
  return -1;
}

std::string scalar_str(const Scalar& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Poly::Poly(long c) { if (c != 0) t_[zero_exp()] = Scalar(c); }
Poly::Poly(const Scalar& c) { if (c != 0) t_[zero_exp()] = c; }

Poly Poly::var(int v) {
  Exp e = zero_exp();
  e[v] = 1;
  return monomial(e, 1);
}

Poly Poly::monomial(const Exp& e, const Scalar& c) {
  Poly p;
  if (c != 0) p.t_[e] = c;
  return p;
}

bool Poly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first == zero_exp());
}

Scalar Poly::constant_term() const {
  auto it = t_.find(zero_exp());
  return it == t_.end() ? Scalar(0) : it->second;
}

int Poly::z_degree() const {
  int d = -1;
  for (auto& [e, c] : t_) {
    int s = 0;
    for (int i = 0; i < NZ; ++i) s += e[i];
    d = std::max(d, s);
  }
  return d;
}

bool Poly::is_z_homogeneous() const {
  int d = -1;
  for (auto& [e, c] : t_) {
    int s = 0;
    for (int i = 0; i < NZ; ++i) s += e[i];
    if (d < 0) d = s;
    else if (s != d) return false;
  }
  return true;
}

bool Poly::involves(int v) const {
  for (auto& [e, c] : t_)
    if (e[v]) return true;
  return false;
}

bool Poly::has_parameters() const {
  return involves(PA) || involves(PA1) || involves(PA2);
}

void Poly::add_term(const Exp& e, const Scalar& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& x, const Poly& y) {
  Poly r;
  for (auto& [ex, cx] : x.t_)
    for (auto& [ey, cy] : y.t_) {
      Exp e;
      for (int i = 0; i < NVARS; ++i) e[i] = static_cast<std::uint16_t>(ex[i] + ey[i]);
      r.add_term(e, cx * cy);
    }
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Scalar& c) {
  if (c == 0) { t_.clear(); return *this; }
  for (auto& [e, v] : t_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, v] : r.t_) v = -v;
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly r(1), b = *this;
  while (k) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

Poly Poly::substitute(int v, const Poly& value) const {
  Poly r;
  std::vector<Poly> powers{Poly(1)};
  for (auto& [e, c] : t_) {
    Exp rest = e;
    unsigned k = rest[v];
    rest[v] = 0;
    while (powers.size() <= k) powers.push_back(powers.back() * value);
    r += monomial(rest, c) * powers[k];
  }
  return r;
}

Poly Poly::specialize(const std::map<int, Scalar>& values) const {
  Poly r;
  for (auto& [e, c] : t_) {
    Exp rest = e;
    Scalar v = c;
    for (auto& [var, x] : values) {
      for (unsigned i = 0; i < e[var]; ++i) v *= x;
      rest[var] = 0;
    }
    r.add_term(rest, v);
  }
  return r;
}

Poly Poly::z_coefficient(const Exp& ze) const {
  Poly r;
  for (auto& [e, c] : t_) {
    bool match = true;
    for (int i = 0; i < NZ; ++i)
      if (e[i] != ze[i]) { match = false; break; }
    if (!match) continue;
    Exp rest = e;
    for (int i = 0; i < NZ; ++i) rest[i] = 0;
    r.add_term(rest, c);
  }
  return r;
}

std::pair<Exp, Scalar> Poly::leading() const {
  if (t_.empty()) throw PolyError("leading term of zero polynomial");
  return *t_.begin();
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : t_) {
    Scalar a = abs(c);
    if (first) { if (c < 0) os << "-"; }
    else os << (c < 0 ? " - " : " + ");
    first = false;
    std::string mono;
    for (int i = 0; i < NVARS; ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += kNames[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) os << scalar_str(a);
    else if (a == 1) os << mono;
    else os << scalar_str(a) << "*" << mono;
  }
  return os.str();
}

// recursive descent over: integers, variables, + - * / ^, parentheses
namespace {
class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw PolyError("parse error at column " + std::to_string(i_ + 1) + ": " + what);
  }
  void skip() { while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_; }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) { ++i_; return true; }
    return false;
  }

  Poly expr() {
    Poly p = term();
    for (;;) {
      if (eat('+')) p += term();
      else if (eat('-')) p -= term();
      else return p;
    }
  }

  Poly term() {
    Poly p = unary();
    for (;;) {
      if (eat('*')) p *= unary();
      else if (eat('/')) {
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        p *= Scalar(1) / d.constant_term();
      } else return p;
    }
  }

  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Poly power() {
    Poly b = atom();
    if (eat('^')) {
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("exponent must be a nonnegative integer");
      b = b.pow(static_cast<unsigned>(std::stoul(s_.substr(st, i_ - st))));
    }
    return b;
  }

  Poly atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return Poly(Scalar(mpz_class(s_.substr(st, i_ - st))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string name = s_.substr(st, i_ - st);
      int v = var_index(name);
      if (v < 0) { i_ = st; fail("unknown variable '" + name + "'"); }
      return Poly::var(v);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};
} // namespace

Poly parse_poly(const std::string& text) { return Parser(text).run(); }

Poly scroll_quadric() {
  return Poly::var(Z0) * Poly::var(Z0) - Poly::var(Z1) * Poly::var(Z2);
}

namespace {

struct Pivot {
  int var;
  Poly value; // var = value, value free of every pivot variable
};

Scalar linear_coeff(const Poly& g, int v) {
  Exp e{};
  e[v] = 1;
  Poly c = g.z_coefficient(e);
  if (c.is_zero()) return 0;
  if (!c.is_constant()) return 0; // parameter coefficient: not usable as pivot
  return c.constant_term();
}

std::vector<Pivot> solve_linear(const LinearIdeal& I) {
  std::vector<Pivot> piv;
  for (const Poly& g0 : I.gens) {
    if (g0.z_degree() != 1 || !g0.is_z_homogeneous())
      throw PolyError("ideal generator is not a linear form: " + g0.str());
    Poly g = g0;
    for (auto& pv : piv) g = g.substitute(pv.var, pv.value);
    if (g.is_zero()) throw PolyError("ideal generators are linearly dependent");
    int v = -1;
    Scalar c;
    for (int z = 0; z < NZ; ++z) {
      c = linear_coeff(g, z);
      if (c != 0) { v = z; break; }
    }
    if (v < 0) throw PolyError("no constant pivot coefficient in " + g0.str());
    Poly rest = g - Poly::var(v) * c;
    Poly value = -rest * (Scalar(1) / c);
    for (auto& pv : piv) pv.value = pv.value.substitute(v, value);
    piv.push_back({v, value});
  }
  return piv;
}

// remainder of p on division by the single polynomial q (lex order)
Poly divide_out(Poly p, const Poly& q) {
  auto [lq, cq] = q.leading();
  Poly r;
  while (!p.is_zero()) {
    auto [lp, cp] = p.leading();
    bool divisible = true;
    Exp quo{};
    for (int i = 0; i < NVARS; ++i) {
      if (lp[i] < lq[i]) { divisible = false; break; }
      quo[i] = static_cast<std::uint16_t>(lp[i] - lq[i]);
    }
    if (divisible) {
      p -= Poly::monomial(quo, cp / cq) * q;
    } else {
      Poly lt = Poly::monomial(lp, cp);
      r += lt;
      p -= lt;
    }
  }
  return r;
}

} // namespace

Poly reduce(const Poly& p, const LinearIdeal& I, bool require_homogeneous) {
  if (require_homogeneous && !p.is_z_homogeneous())
    throw PolyError("reduce: input is not homogeneous in z0..z4: " + p.str());
  auto piv = solve_linear(I);
  Poly r = p;
  for (auto& pv : piv) r = r.substitute(pv.var, pv.value);
  if (I.include_scroll) {
    Poly q = scroll_quadric();
    for (auto& pv : piv) q = q.substitute(pv.var, pv.value);
    if (!q.is_zero()) r = divide_out(r, q);
  }
  return r;
}

bool is_neg_square(const Poly& p, const Poly& q, const LinearIdeal& I) {
  return reduce(p + q * q, I).is_zero();
}

std::uint64_t default_seed() {
  const char* s = std::getenv("ANTICANON_SEED");
  if (!s || !*s) return 0;
  return std::strtoull(s, nullptr, 10);
}

Sampler::Sampler() : Sampler(default_seed()) {}
Sampler::Sampler(std::uint64_t seed) : seed_(seed), eng_(seed) {}

Scalar Sampler::rational() {
  std::uniform_int_distribution<int> d(-97, 97);
  int num = d(eng_), den = 0;
  while (den == 0) den = d(eng_);
  Scalar r(num, den);
  r.canonicalize();
  return r;
}

Scalar Sampler::nonzero_rational() {
  for (;;) {
    Scalar r = rational();
    if (r != 0) return r;
  }
}

std::map<int, Scalar> Sampler::parameters() {
  std::map<int, Scalar> v;
  auto ok = [](const Scalar& x) { return x != 0 && x != 1; };
  do v[PA] = rational(); while (!ok(v[PA]));
  do v[PA1] = rational(); while (!ok(v[PA1]));
  do v[PA2] = rational(); while (!ok(v[PA2]) || v[PA2] == v[PA1]);
  return v;
}

int matrix_rank(std::vector<std::vector<Scalar>> m) {
  int rank = 0;
  if (m.empty()) return 0;
  std::size_t cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      Scalar f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

namespace {
int gram_rank_at(const Poly& p, const std::vector<int>& vars, const std::map<int, Scalar>& at) {
  Poly sp = p.specialize(at);
  std::size_t n = vars.size();
  std::vector<std::vector<Scalar>> g(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Exp e{};
      e[vars[i]] += 1;
      e[vars[j]] += 1;
      Scalar c = sp.z_coefficient(e).constant_term();
      if (i == j) g[i][i] = c;
      else { g[i][j] = c / 2; g[j][i] = c / 2; }
    }
  return matrix_rank(g);
}
} // namespace

int quadratic_rank(const Poly& p, const std::vector<int>& vars, Sampler& s) {
  for (auto& [e, c] : p.terms()) {
    int deg = 0;
    for (int i = 0; i < NZ; ++i) {
      if (e[i] && std::find(vars.begin(), vars.end(), i) == vars.end())
        throw PolyError("quadratic_rank: variable outside the selected set in " + p.str());
      deg += e[i];
    }
    if (deg != 2) throw PolyError("quadratic_rank: not a quadratic form: " + p.str());
  }
  int r1 = gram_rank_at(p, vars, s.parameters());
  int r2 = gram_rank_at(p, vars, s.parameters());
  if (r1 != r2) throw UnluckySpecialization("unlucky specialization");
  return r1;
}

int quadratic_rank(const Poly& p, const std::vector<int>& vars) {
  Sampler s;
  for (int attempt = 0;; ++attempt) {
    try {
      return quadratic_rank(p, vars, s);
    } catch (const UnluckySpecialization&) {
      if (attempt >= 8) throw;
    }
  }
}

} // namespace acl
