#include "anticanon/threefold.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace acl {

namespace {

void clean(std::map<std::string, long>& m) {
  for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> r;
  std::string w;
  while (in >> w) r.push_back(w);
  return r;
}

std::string term_join(const std::vector<std::pair<std::string, long>>& terms, std::string head) {
  std::string r = head;
  for (auto& [n, c] : terms) {
    if (c == 0) continue;
    long a = c < 0 ? -c : c;
    std::string t = (a == 1 ? "" : std::to_string(a) + "*") + n;
    if (r.empty()) r = (c < 0 ? "-" : "") + t;
    else r += (c < 0 ? " - " : " + ") + t;
  }
  return r.empty() ? "0" : r;
}

} // namespace

GlobalClass operator+(GlobalClass a, const GlobalClass& b) {
  for (auto& [k, v] : b) a[k] += v;
  clean(a);
  return a;
}

GlobalClass operator-(GlobalClass a, const GlobalClass& b) {
  for (auto& [k, v] : b) a[k] -= v;
  clean(a);
  return a;
}

GlobalClass operator*(long k, GlobalClass a) {
  for (auto& [n, v] : a) v *= k;
  clean(a);
  return a;
}

GlobalClass gen(const std::string& name, long k) {
  GlobalClass g;
  if (k) g[name] = k;
  return g;
}

std::string global_str(const GlobalClass& g) {
  std::vector<std::pair<std::string, long>> t(g.begin(), g.end());
  return term_join(t, "");
}

void SheetLattice::add(const std::string& name, long selfint) {
  if (index(name) >= 0) throw ThreefoldError("duplicate sheet class " + name);
  names.push_back(name);
  for (auto& r : gram) r.push_back(0);
  gram.emplace_back(names.size(), 0);
  gram.back().back() = selfint;
}

int SheetLattice::index(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

long SheetLattice::pair(const SheetClass& a, const SheetClass& b) const {
  long r = 0;
  for (auto& [na, ca] : a) {
    int ia = index(na);
    if (ia < 0) throw ThreefoldError("class " + na + " is not on this sheet");
    for (auto& [nb, cb] : b) {
      int ib = index(nb);
      if (ib < 0) throw ThreefoldError("class " + nb + " is not on this sheet");
      r += ca * cb * gram[ia][ib];
    }
  }
  return r;
}

std::string SheetLattice::str(const SheetClass& c) const {
  std::vector<std::pair<std::string, long>> t;
  std::string head;
  if (kind == Quadric) {
    long a = c.count("h1") ? c.at("h1") : 0, b = c.count("h2") ? c.at("h2") : 0;
    if (a || b) head = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  for (auto& n : names) {
    if (kind == Quadric && (n == "h1" || n == "h2")) continue;
    if (c.count(n)) t.emplace_back(n, c.at(n));
  }
  for (auto& [n, v] : c)
    if (index(n) < 0) t.emplace_back(n + "?", v);
  return term_join(t, head);
}

std::string SheetLattice::model() const {
  std::string base;
  if (kind == Quadric) base = "F0";
  else {
    long s = gram[0][0];
    base = "F" + std::to_string(s < 0 ? -s : s);
  }
  if (blown_points) base += "+" + std::to_string(blown_points);
  return base;
}

std::string normalize_model(const std::string& m) {
  auto plus = m.find('+');
  if (plus == std::string::npos) return m;
  int n = std::stoi(m.substr(1, plus - 1));
  int r = std::stoi(m.substr(plus + 1));
  if (r >= 1 && (n == 0 || n == 1)) return "Bl" + std::to_string(r + 1) + "P2";
  return m;
}

std::string SheetLattice::normal_model() const { return normalize_model(model()); }

SheetClass parse_sheet_class(const std::string& text) {
  SheetClass c;
  std::string s = trim(text);
  if (s == "0" || s.empty()) return c;
  std::size_t i = 0;
  auto skip = [&] { while (i < s.size() && s[i] == ' ') ++i; };
  skip();
  if (i < s.size() && s[i] == '(') {
    auto close = s.find(')', i);
    if (close == std::string::npos) throw ThreefoldError("unbalanced bidegree in " + s);
    auto inner = s.substr(i + 1, close - i - 1);
    auto comma = inner.find(',');
    if (comma == std::string::npos) throw ThreefoldError("bidegree needs two entries: " + s);
    c["h1"] += std::stol(inner.substr(0, comma));
    c["h2"] += std::stol(inner.substr(comma + 1));
    i = close + 1;
  }
  while (true) {
    skip();
    if (i >= s.size()) break;
    long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    }
    long coef = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      coef = std::stol(s.substr(i, j - i));
      i = j;
      skip();
      if (i < s.size() && s[i] == '*') ++i;
      skip();
    }
    std::size_t j = i;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
    if (j == i) {
      if (coef != 1 || sign != 1) throw ThreefoldError("dangling coefficient in " + s);
      throw ThreefoldError("cannot parse sheet class " + s);
    }
    c[s.substr(i, j - i)] += sign * coef;
    i = j;
  }
  clean(c);
  return c;
}

void ThreefoldModel::add_generator(const std::string& name, GenKind kind) {
  if (has(name)) throw ThreefoldError("duplicate generator " + name);
  order_.push_back(name);
  kind_[name] = kind;
  if (kind == GenKind::Sheet) sheets_[name] = SheetLattice{};
  cache_.clear();
}

GenKind ThreefoldModel::kind(const std::string& name) const {
  auto it = kind_.find(name);
  if (it == kind_.end()) throw ThreefoldError("unknown generator " + name);
  return it->second;
}

std::vector<std::string> ThreefoldModel::sheets() const {
  std::vector<std::string> r;
  for (auto& g : order_)
    if (kind_.at(g) == GenKind::Sheet) r.push_back(g);
  return r;
}

void ThreefoldModel::set(const std::string& g, const std::string& s, const SheetClass& c) {
  if (kind(s) != GenKind::Sheet) throw ThreefoldError(s + " is not a modelled sheet");
  kind(g);
  SheetClass v = c;
  clean(v);
  table_[{g, s}] = v;
  cache_.clear();
}

SheetClass ThreefoldModel::entry(const std::string& g, const std::string& s) const {
  auto it = table_.find({g, s});
  if (it == table_.end()) throw ThreefoldError("no restriction of " + g + " to " + s);
  return it->second;
}

SheetClass ThreefoldModel::restrict(const GlobalClass& G, const std::string& s) const {
  SheetClass r;
  for (auto& [g, c] : G) r = r + c * entry(g, s);
  return r;
}

void ThreefoldModel::set_relation(const std::string& g, const GlobalClass& rel) {
  if (kind(g) != GenKind::Pullback) throw ThreefoldError(g + " is not a pullback generator");
  for (auto& [h, c] : rel)
    if (kind(h) == GenKind::Pullback) throw ThreefoldError("relation must avoid pullback generators");
  relations_[g] = {rel, blowups_.size()};
  cache_.clear();
}

std::optional<GlobalClass> ThreefoldModel::relation(const std::string& g) const {
  auto it = relations_.find(g);
  if (it == relations_.end()) return std::nullopt;
  return pullback(it->second.first, it->second.second);
}

DivisorClass ThreefoldModel::fibre_restrict(const GlobalClass& G) const {
  if (!fibre_) throw ThreefoldError("model has no fibre lattice");
  DivisorClass r = fibre_->zero();
  for (auto& [g, c] : G) {
    auto it = fibre_rest_.find(g);
    if (it == fibre_rest_.end()) throw ThreefoldError("no fibre restriction for " + g);
    r += c * it->second;
  }
  return r;
}

long ThreefoldModel::gen_triple(const std::string& a, const std::string& b, const std::string& c,
                                std::vector<PathMismatch>* mismatches) const {
  std::array<std::string, 3> t{a, b, c};
  std::array<std::string, 3> key = t;
  std::sort(key.begin(), key.end());
  auto ck = std::make_tuple(key[0], key[1], key[2]);
  // only agreeing evaluations are cached, so a hit has nothing to report
  if (auto it = cache_.find(ck); it != cache_.end()) return it->second;
  std::vector<std::pair<std::string, long>> vals;
  std::set<std::string> seen;
  for (int i = 0; i < 3; ++i) {
    if (kind(t[i]) != GenKind::Sheet || seen.count(t[i])) continue;
    seen.insert(t[i]);
    const auto& o1 = t[(i + 1) % 3];
    const auto& o2 = t[(i + 2) % 3];
    auto e1 = table_.find({o1, t[i]}), e2 = table_.find({o2, t[i]});
    if (e1 == table_.end() || e2 == table_.end()) continue;
    vals.emplace_back("on " + t[i], sheets_.at(t[i]).pair(e1->second, e2->second));
  }
  if (fibre_) {
    for (int i = 0; i < 3; ++i) {
      if (kind(t[i]) != GenKind::Fibre) continue;
      const auto& o1 = t[(i + 1) % 3];
      const auto& o2 = t[(i + 2) % 3];
      if (fibre_rest_.count(o1) && fibre_rest_.count(o2))
        vals.emplace_back("fibre", pair(fibre_rest_.at(o1), fibre_rest_.at(o2), *fibre_));
      break;
    }
  }
  if (kind(a) == GenKind::Pullback && kind(b) == GenKind::Pullback && kind(c) == GenKind::Pullback)
    vals.emplace_back("F^3", 0);
  for (int i = 0; i < 3; ++i) {
    if (kind(t[i]) != GenKind::Pullback) continue;
    auto rel = relation(t[i]);
    if (!rel) continue;
    try {
      long v = triple(*rel, gen(t[(i + 1) % 3]), gen(t[(i + 2) % 3]), mismatches);
      vals.emplace_back("rewrite " + t[i], v);
    } catch (const ThreefoldError&) {
    }
    break;
  }
  if (vals.empty()) throw ThreefoldError("no evaluation path for " + a + "." + b + "." + c);
  bool agree = std::all_of(vals.begin(), vals.end(), [&](auto& v) { return v.second == vals[0].second; });
  if (!agree) {
    if (!mismatches) throw ThreefoldError("evaluation paths disagree for " + a + "." + b + "." + c);
    mismatches->push_back({a, b, c, vals});
    return vals[0].second;
  }
  cache_[ck] = vals[0].second;
  return vals[0].second;
}

std::vector<std::string> ThreefoldModel::evaluable_generators() const {
  std::vector<std::string> pool = order_;
  for (;;) {
    std::map<std::string, int> bad;
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i; j < pool.size(); ++j)
        for (std::size_t l = j; l < pool.size(); ++l) {
          try {
            std::vector<PathMismatch> mm;
            gen_triple(pool[i], pool[j], pool[l], &mm);
          } catch (const ThreefoldError&) {
            ++bad[pool[i]], ++bad[pool[j]], ++bad[pool[l]];
          }
        }
    if (bad.empty()) return pool;
    auto worst = std::max_element(bad.begin(), bad.end(),
                                  [](auto& x, auto& y) { return x.second < y.second; });
    pool.erase(std::find(pool.begin(), pool.end(), worst->first));
  }
}

long ThreefoldModel::triple(const GlobalClass& A, const GlobalClass& B, const GlobalClass& C,
                            std::vector<PathMismatch>* mismatches) const {
  long r = 0;
  for (auto& [a, ca] : A)
    for (auto& [b, cb] : B)
      for (auto& [c, cc] : C) r += ca * cb * cc * gen_triple(a, b, c, mismatches);
  return r;
}

std::vector<PathMismatch> ThreefoldModel::path_check() const {
  std::vector<PathMismatch> out;
  std::size_t n = order_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        try {
          gen_triple(order_[i], order_[j], order_[k], &out);
        } catch (const ThreefoldError&) {
          // no path through a sheet or the fibre: not determined by the model
        }
      }
  return out;
}

void ThreefoldModel::blowup_curve(const std::string& X, const std::string& Y, const std::string& Dn) {
  if (kind(X) != GenKind::Sheet) throw ThreefoldError(X + " must be a modelled sheet");
  const SheetLattice& SX = sheets_.at(X);
  SheetClass gamma = entry(Y, X);
  if (gamma.empty()) throw ThreefoldError(X + " and " + Y + " do not meet along a curve");
  long x = SX.pair(entry(X, X), gamma);
  long y = SX.pair(gamma, gamma);
  std::map<std::string, long> dot;
  for (auto& g : order_) dot[g] = SX.pair(entry(g, X), gamma);

  auto old_sheets = sheets();
  auto old_gens = order_;
  std::map<std::string, SheetClass> Dres;
  for (auto& W : old_sheets) {
    if (W == X) Dres[W] = gamma;
    else if (W == Y) Dres[W] = entry(X, Y);
    else {
      long d = dot[W];
      if (d == 0) Dres[W] = {};
      else if (d == 1) {
        std::string nm = "x" + Dn;
        sheets_[W].add(nm, -1);
        sheets_[W].blown_points++;
        Dres[W] = {{nm, 1}};
      } else {
        throw ThreefoldError(W + " meets " + X + "." + Y + " with multiplicity " + std::to_string(d));
      }
    }
  }
  for (auto& W : old_sheets)
    for (const auto& G : {X, Y}) set(G, W, entry(G, W) - Dres[W]);

  add_generator(Dn, GenKind::Sheet);
  SheetLattice& SD = sheets_.at(Dn);
  SD.kind = SheetLattice::Ruled;
  SD.add("sigma", x - y);
  SD.add("f", 0);
  SD.gram[0][1] = SD.gram[1][0] = 1;
  SheetClass DD{{"f", x}, {"sigma", -1}};
  for (auto& W : old_sheets) set(Dn, W, Dres[W]);
  for (auto& G : old_gens) {
    long m = (G == X || G == Y) ? 1 : 0;
    set(G, Dn, SheetClass{{"f", dot[G]}} - m * DD);
  }
  set(Dn, Dn, DD);
  if (fibre_) fibre_rest_[Dn] = fibre_->zero();
  blowups_.push_back({X, Y, Dn, x, y});
}

GlobalClass ThreefoldModel::pullback(const GlobalClass& G, std::size_t from) const {
  GlobalClass r = G;
  for (std::size_t i = from; i < blowups_.size(); ++i) {
    const auto& b = blowups_[i];
    long m = (r.count(b.X) ? r.at(b.X) : 0) + (r.count(b.Y) ? r.at(b.Y) : 0);
    r = r + gen(b.D, m);
  }
  return r;
}

// ---------------------------------------------------------------------------

std::string type_name(int type) {
  static const char* n[] = {"I", "II", "III", "IV"};
  if (type < 1 || type > 4) throw ThreefoldError("type must be I..IV");
  return n[type - 1];
}

int parse_type(const std::string& s) {
  for (int t = 1; t <= 4; ++t)
    if (s == type_name(t) || s == std::to_string(t)) return t;
  throw ThreefoldError("unknown type '" + s + "' (use I, II, III or IV)");
}

std::vector<BlowupEvent> double_solid_events(int type) {
  auto N = [](int i) { BlowupEvent e; e.kind = BlowupEvent::Node; e.index = i; return e; };
  auto M = [](int i) { BlowupEvent e; e.kind = BlowupEvent::Smooth; e.index = i; return e; };
  switch (type) {
    case 1: return {M(1), M(1), M(1), M(2)};
    case 2: return {M(1), M(1), N(4), M(2)};
    case 3: return {M(1), N(4), N(6), M(2)};
    case 4: return {N(4), N(6), N(8), M(2)};
  }
  throw ThreefoldError("type must be I..IV");
}

std::vector<int> double_solid_string(int type) {
  std::vector<int> half{-3};
  for (int i = 1; i < type; ++i) half.push_back(-2);
  half.push_back(-1);
  std::vector<int> s = half;
  s.insert(s.end(), half.begin(), half.end());
  return s;
}

std::string DoubleSolid::sheet_name(int c) const {
  int m = 2 * k;
  c = ((c % m) + m) % m;
  return (c < k ? "E" : "cE") + std::to_string(c % k + 1);
}

std::string DoubleSolid::half_name(int i, bool plus) const {
  return "S" + std::to_string(i) + (plus ? "+" : "-");
}

bool DoubleSolid::half_contains(int i, bool plus, int c) const {
  bool minus = c < i || c >= k + i;
  return plus ? !minus : minus;
}

int DoubleSolid::blown_sheet(int c) const {
  int m = 2 * k;
  c = ((c % m) + m) % m;
  return (c % k) < k - 1 ? c : (c + 1) % m;
}

GlobalClass DoubleSolid::muF() const { return *model.relation("F"); }

GlobalClass DoubleSolid::fixed_stage1() const {
  GlobalClass g;
  for (int i = 0; i < k - 1; ++i) g = g + gen(sheet_name(i)) + gen(sheet_name(k + i));
  return g;
}

long DoubleSolid::line_degree(const GlobalClass& G, int i) const {
  if (i < 1 || i > k) throw ThreefoldError("twistor line index out of range");
  std::set<std::string> meets{sheet_name(blown_sheet(i - 1)), sheet_name(blown_sheet(k + i - 1))};
  long d = 0;
  for (auto& [g, c] : G) {
    switch (model.kind(g)) {
      case GenKind::Fibre: break;
      case GenKind::Half: throw ThreefoldError("twistor line lies in " + g);
      case GenKind::Pullback: throw ThreefoldError("pullback generator not supported on lines");
      case GenKind::Sheet:
        if (g[0] == 'E' || (g[0] == 'c' && g[1] == 'E')) {
          if (meets.count(g)) d += c;
        } else if (i == k) {
          throw ThreefoldError("L_k may meet the stage-two divisor " + g);
        }
        break;
    }
  }
  return d;
}

DoubleSolid build_double_solid(int type) {
  DoubleSolid ds;
  ds.type = type;
  ds.k = type + 1;
  ds.string = double_solid_string(type);
  auto al = apply_events(double_solid_events(type)).aligned(ds.string);
  if (!al) throw ThreefoldError("surface model does not realise the cycle string");
  ds.surface = *al;
  int k = ds.k, m = 2 * k;
  auto& M = ds.model;

  M.add_generator("H", GenKind::Fibre);
  for (int c = 0; c < m; ++c) {
    M.add_generator(ds.sheet_name(c), GenKind::Sheet);
    auto& L = M.sheet(ds.sheet_name(c));
    L.add("h1", 0);
    L.add("h2", 0);
    L.gram[0][1] = L.gram[1][0] = 1;
  }
  for (int i = 1; i <= k; ++i)
    for (bool plus : {true, false}) M.add_generator(ds.half_name(i, plus), GenKind::Half);
  M.add_generator("F", GenKind::Pullback);

  auto delta = [&](int node) { return (node >= k ? "cDelta" : "Delta") + std::to_string(node % k + 1); };
  for (int node = 0; node < m; ++node) {
    auto& L = M.sheet(ds.sheet_name(ds.blown_sheet(node)));
    L.add(delta(node), -1);
    L.blown_points++;
  }

  for (int c = 0; c < m; ++c) {
    std::string X = ds.sheet_name(c);
    int prev = (c + m - 1) % m, next = (c + 1) % m;
    M.set("H", X, {{"h1", 1}});
    M.set("F", X, {{"h2", ds.string[c] + 2}});
    for (int c2 = 0; c2 < m; ++c2) {
      if (c2 == c) continue;
      SheetClass r;
      int node = -1;
      if (c2 == next) node = c;
      else if (c2 == prev) node = prev;
      if (node >= 0) {
        r["h2"] = 1;
        if (ds.blown_sheet(node) == c) r[delta(node)] = -1;
      }
      M.set(ds.sheet_name(c2), X, r);
    }
    SheetClass self{{"h1", -1}, {"h2", ds.string[c]}};
    for (int node : {prev, c})
      if (ds.blown_sheet(node) == c) self[delta(node)] += 1;
    M.set(X, X, self);
    for (int i = 1; i <= k; ++i)
      for (bool plus : {true, false}) {
        SheetClass r;
        if (ds.half_contains(i, plus, c)) r["h1"] = 1;
        for (int node : {prev, c}) {
          if (node % k + 1 != i || ds.blown_sheet(node) != c) continue;
          bool q_plus = !ds.half_contains(i, true, c); // the blown half misses this sheet's curve
          r[delta(node)] += (plus == q_plus) ? 1 : -1;
        }
        M.set(ds.half_name(i, plus), X, r);
      }
  }

  M.set_fibre(ds.surface.lattice());
  M.set_fibre_class("H", ds.surface.lattice().zero());
  for (int c = 0; c < m; ++c) M.set_fibre_class(ds.sheet_name(c), ds.surface.component(c));
  for (int i = 1; i <= k; ++i)
    for (bool plus : {true, false}) M.set_fibre_class(ds.half_name(i, plus), ds.surface.lattice().zero());
  M.set_fibre_class("F", -ds.surface.lattice().K());
  GlobalClass rel = gen("H");
  for (int c = 0; c < m; ++c) rel = rel + gen(ds.sheet_name(c));
  M.set_relation("F", rel);
  return ds;
}

ThreefoldModel string8_model() {
  ThreefoldModel M;
  M.add_generator("F", GenKind::Pullback);
  std::vector<std::string> E{"E1", "E3", "cE1", "cE3"};
  for (auto& e : E) {
    M.add_generator(e, GenKind::Sheet);
    auto& L = M.sheet(e);
    L.add("h1", 0);
    L.add("h2", 0);
    L.gram[0][1] = L.gram[1][0] = 1;
  }
  for (auto& e : E) {
    M.set("F", e, {{"h2", -1}});
    for (auto& o : E) M.set(o, e, o == e ? SheetClass{{"h1", -1}, {"h2", -2}} : SheetClass{});
  }
  return M;
}

// ---------------------------------------------------------------------------

std::vector<Curve> candidate_curves(const ThreefoldModel& m, const GlobalClass& L) {
  std::vector<Curve> out;
  const auto& gens = m.generators();
  auto pos = [&](const std::string& g) { return std::find(gens.begin(), gens.end(), g) - gens.begin(); };
  for (auto& G : m.sheets()) {
    SheetClass LG = m.restrict(L, G);
    for (auto& W : gens) {
      if (W == G) continue;
      GenKind kw = m.kind(W);
      if (kw != GenKind::Half && kw != GenKind::Sheet) continue;
      if (kw == GenKind::Sheet && pos(W) < pos(G)) continue;
      SheetClass cls = m.entry(W, G);
      if (cls.empty()) continue;
      out.push_back({W, G, cls, m.sheet(G).pair(LG, cls)});
    }
  }
  return out;
}

namespace {
bool curves_meet(const ThreefoldModel& m, const Curve& a, const Curve& b) {
  std::array<std::string, 2> A{a.W, a.G}, B{b.W, b.G};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (A[i] != B[j]) continue;
      const auto& U1 = A[1 - i];
      const auto& U2 = B[1 - j];
      if (U1 == U2) return true;
      try {
        if (m.gen_triple(A[i], U1, U2) > 0) return true;
      } catch (const ThreefoldError&) {
      }
    }
  return false;
}
} // namespace

std::vector<Curve> base_curves(const ThreefoldModel& m, const GlobalClass& L) {
  auto cand = candidate_curves(m, L);
  std::vector<bool> in(cand.size(), false);
  for (std::size_t i = 0; i < cand.size(); ++i) in[i] = cand[i].degree < 0;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (in[i] || cand[i].degree != 0) continue;
      for (std::size_t j = 0; j < cand.size(); ++j)
        if (in[j] && curves_meet(m, cand[i], cand[j])) {
          in[i] = grew = true;
          break;
        }
    }
  }
  std::vector<Curve> r;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (in[i]) r.push_back(cand[i]);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::string conj_name(const std::string& s) {
  if (s == "H" || s == "F") return s;
  if (s.size() > 1 && s[0] == 'S') {
    char c = s.back();
    return s.substr(0, s.size() - 1) + (c == '+' ? "-" : "+");
  }
  if (s[0] == 'c') return s.substr(1);
  return "c" + s;
}

StageReport stage(const DoubleSolid& ds, const GlobalClass& L) {
  StageReport st;
  st.L = L;
  for (auto& s : ds.model.sheets()) st.restrictions[s] = ds.model.sheet(s).str(ds.model.restrict(L, s));
  st.base = base_curves(ds.model, L);
  st.free = st.base.empty();
  if (st.free)
    for (auto& s : ds.model.sheets()) {
      auto r = ds.model.restrict(L, s);
      if (ds.model.sheet(s).pair(r, r) < 0) st.free = false;
    }
  for (auto& c : candidate_curves(ds.model, L))
    if (c.degree < 0) st.free = false;
  return st;
}

bool is_E(const std::string& g) { return g[0] == 'E' || (g.size() > 1 && g[0] == 'c' && g[1] == 'E'); }

} // namespace

std::vector<ImageEntry> image_profile(const DoubleSolid& ds, const GlobalClass& L) {
  const auto& M = ds.model;
  std::vector<ImageEntry> out;
  int m = 2 * ds.k;
  // sheets E: trivial restriction -> point, grouped along the cycle
  std::vector<int> trivial(m, 0);
  for (int c = 0; c < m; ++c) trivial[c] = M.restrict(L, ds.sheet_name(c)).empty();
  std::vector<int> group(m, -1);
  int ng = 0;
  for (int c = 0; c < m; ++c) {
    if (!trivial[c] || group[c] >= 0) continue;
    // walk back to the start of the run
    int s = c;
    while (trivial[(s + m - 1) % m] && (s + m - 1) % m != c) s = (s + m - 1) % m;
    for (int t = s; trivial[t] && group[t] < 0; t = (t + 1) % m) group[t] = ng;
    ++ng;
  }
  std::vector<std::string> gname(ng);
  for (int g = 0, named = 0; g < ng; ++g) {
    // the group holding the smallest non-conjugate index is q
    bool has_plain = false;
    int first = -1;
    for (int c = 0; c < m; ++c)
      if (group[c] == g) {
        if (first < 0) first = c;
        if (c < ds.k) has_plain = true;
      }
    (void)first;
    gname[g] = (named == 0 && has_plain) ? "q" : "cq";
    if (gname[g] == "q") named = 1;
  }
  for (int c = 0; c < m; ++c) {
    std::string X = ds.sheet_name(c);
    auto r = M.restrict(L, X);
    if (r.empty()) out.push_back({X, "point", gname[group[c]]});
    else {
      long sq = M.sheet(X).pair(r, r);
      out.push_back({X, sq == 0 ? "ridge" : "surface", ""});
    }
  }
  std::map<std::string, bool> half_line;
  for (int i = 1; i <= ds.k; ++i)
    for (bool plus : {true, false}) {
      std::string S = ds.half_name(i, plus);
      long d2 = M.triple(L, L, gen(S));
      ImageEntry e{S, "", ""};
      if (d2 == 1) e.kind = "plane";
      else if (d2 == 0) {
        bool moving = false;
        for (auto& sh : M.sheets())
          if (M.triple(L, gen(S), gen(sh)) > 0) moving = true;
        e.kind = moving ? "line" : "point";
        half_line[S] = moving;
      } else e.kind = "degree" + std::to_string(d2);
      out.push_back(e);
    }
  std::vector<std::size_t> d_lines;
  for (auto& D : M.sheets()) {
    if (is_E(D)) continue;
    auto r = M.restrict(L, D);
    long sq = M.sheet(D).pair(r, r);
    ImageEntry e{D, "", ""};
    if (r.empty()) e.kind = "point";
    else if (sq == 1) e.kind = "plane";
    else if (sq == 0) {
      e.kind = "line";
      d_lines.push_back(out.size());
    } else e.kind = "surface";
    out.push_back(e);
  }
  // a curve of positive degree lying on two line images forces the lines to agree
  std::vector<std::string> nodes;
  for (auto& [S, isline] : half_line)
    if (isline) nodes.push_back(S);
  for (auto i : d_lines) nodes.push_back(out[i].divisor);
  std::vector<std::size_t> root(nodes.size());
  for (std::size_t i = 0; i < root.size(); ++i) root[i] = i;
  auto find = [&](std::size_t i) {
    while (root[i] != i) i = root[i] = root[root[i]];
    return i;
  };
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (M.triple(L, gen(nodes[i]), gen(nodes[j])) > 0) root[find(i)] = find(j);
  for (auto i : d_lines) {
    std::size_t me = std::find(nodes.begin(), nodes.end(), out[i].divisor) - nodes.begin();
    std::vector<std::string> same;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (half_line.count(nodes[j]) && find(j) == find(me)) same.push_back(nodes[j]);
    if (same.size() == 1) out[i].same = same[0];
    else if (same.size() > 1) out[i].same = "inconsistent";
  }
  bool has_D = M.blowup_count() > 0;
  for (int i = 1; i <= ds.k; ++i) {
    if (has_D && i == ds.k) continue;
    long d = ds.line_degree(L, i);
    out.push_back({"L" + std::to_string(i), d == 2 ? "conic" : "degree" + std::to_string(d), ""});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string data_dir() {
  if (const char* e = std::getenv("ANTICANON_DATA")) return e;
#ifdef ANTICANON_DATA_DIR
  return ANTICANON_DATA_DIR;
#else
  return "data";
#endif
}

TypeTable parse_type_table(const std::string& text) {
  TypeTable t;
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    auto w = words(line);
    auto rhs = [&] {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ThreefoldError("line " + std::to_string(ln) + ": missing '='");
      return trim(line.substr(eq + 1));
    };
    try {
      if (w[0] == "type") t.type = parse_type(w.at(1));
      else if (w[0] == "string") t.string = parse_string(w.at(1));
      else if (w[0] == "fixed") t.fixed.assign(w.begin() + 1, w.end());
      else if (w[0] == "restrict") {
        const auto& l = w.at(1);
        if (l.size() != 2 || l[0] != 'L' || (l[1] != '1' && l[1] != '2'))
          throw ThreefoldError("line " + std::to_string(ln) + ": expected L1 or L2, got " + l);
        t.restrictions.emplace_back(l[1] - '0', w.at(2), rhs());
      }
      else if (w[0] == "base") {
        const auto& l = w.at(1);
        if (l.size() != 2 || l[0] != 'L') throw ThreefoldError("line " + std::to_string(ln) + ": expected L1 or L2");
        auto r = words(rhs());
        if (r.size() == 1 && r[0] == "none") r.clear();
        t.base.emplace_back(l[1] - '0', r);
      } else if (w[0] == "model") t.models[w.at(1)] = rhs();
      else if (w[0] == "image") t.images.emplace_back(w.at(1), rhs());
      else throw ThreefoldError("unknown directive " + w[0]);
    } catch (const std::out_of_range&) {
      throw ThreefoldError("line " + std::to_string(ln) + ": missing field");
    } catch (const std::invalid_argument&) {
      throw ThreefoldError("line " + std::to_string(ln) + ": bad number");
    }
  }
  return t;
}

TypeTable load_type_table(int type) {
  std::string path = data_dir() + "/threefold/type" + type_name(type) + ".tbl";
  std::ifstream f(path);
  if (!f) throw ThreefoldError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  TypeTable t = parse_type_table(ss.str());
  if (t.type != type) throw ThreefoldError(path + " declares a different type");
  return t;
}

EliminationReport eliminate(int type, const TypeTable* expect) {
  EliminationReport rep;
  rep.type = type;
  DoubleSolid ds = build_double_solid(type);
  GlobalClass L1 = 2 * ds.muF() - ds.fixed_stage1();
  rep.stage1 = stage(ds, L1);
  std::map<std::string, std::string> stage1_models;
  for (auto& s : ds.model.sheets()) stage1_models[s] = ds.model.sheet(s).model();

  GlobalClass Lfinal = L1;
  if (!rep.stage1.base.empty()) {
    std::vector<Curve> plain;
    for (auto& c : rep.stage1.base)
      if (c.G[0] == 'E') plain.push_back(c);
    GlobalClass Ds;
    int j = 0;
    for (auto& c : plain) {
      ++j;
      std::string cw = conj_name(c.W), cg = conj_name(c.G);
      bool found = std::any_of(rep.stage1.base.begin(), rep.stage1.base.end(),
                               [&](const Curve& b) { return b.W == cw && b.G == cg; });
      if (!found) throw ThreefoldError("base locus is not closed under conjugation");
      for (auto [W, G, D] : {std::tuple{c.W, c.G, "D" + std::to_string(j)},
                             std::tuple{cw, cg, "cD" + std::to_string(j)}}) {
        std::string before = ds.model.sheet(G).str(ds.model.entry(W, G));
        ds.model.blowup_curve(G, W, D);
        const auto& b = ds.model.blowups().back();
        rep.blowup_log.push_back("blow up " + W + "." + G + " [" + before + "] -> " + D + " = " +
                                 ds.model.sheet(D).model() + " (x=" + std::to_string(b.x) +
                                 ", y=" + std::to_string(b.y) + ")");
        Ds = Ds + gen(D);
      }
    }
    GlobalClass L2 = ds.model.pullback(L1) - Ds;
    rep.stage2 = stage(ds, L2);
    Lfinal = L2;
  }
  rep.final_free = rep.stage2 ? rep.stage2->free : rep.stage1.free;
  rep.images = image_profile(ds, Lfinal);
  rep.mismatches = ds.model.path_check();

  auto add = [&](std::string id, std::string e, std::string c) {
    rep.checks.push_back({id, e, c, e == c});
  };
  add("path independence", "0 mismatches", std::to_string(rep.mismatches.size()) + " mismatches");
  {
    // (4.1): mu*2F equals L plus the subtracted divisors
    GlobalClass back = ds.model.pullback(L1 + ds.fixed_stage1());
    add("stage-1 sum", global_str(2 * ds.muF()), global_str(back));
  }
  if (!expect) return rep;

  if (!expect->string.empty()) add("cycle string", string_str(expect->string), string_str(ds.string));
  {
    std::vector<std::string> fx;
    for (auto& [g, c] : ds.fixed_stage1())
      if (g[0] == 'E') fx.push_back(g);
    std::string e, c;
    for (auto& s : expect->fixed) e += s + " ";
    for (auto& s : fx) c += s + " ";
    add("fixed E", e, c);
  }
  for (auto& [st, sheet, cls] : expect->restrictions) {
    const StageReport* S = st == 1 ? &rep.stage1 : (rep.stage2 ? &*rep.stage2 : nullptr);
    std::string got = "absent";
    if (S && S->restrictions.count(sheet)) {
      // compare as classes so the ordering of terms does not matter
      auto model_sheet = sheet;
      got = S->restrictions.at(sheet);
      auto a = parse_sheet_class(cls), b = parse_sheet_class(got);
      rep.checks.push_back({"L" + std::to_string(st) + "|" + sheet, cls, got, a == b});
      continue;
    }
    add("L" + std::to_string(st) + "|" + sheet, cls, got);
  }
  for (auto& [st, names] : expect->base) {
    const StageReport* S = st == 1 ? &rep.stage1 : (rep.stage2 ? &*rep.stage2 : nullptr);
    std::set<std::string> e(names.begin(), names.end()), c;
    if (S)
      for (auto& b : S->base) c.insert(b.name());
    auto join = [](const std::set<std::string>& s) {
      std::string r;
      for (auto& x : s) r += (r.empty() ? "" : " ") + x;
      return r.empty() ? std::string("none") : r;
    };
    add("base curves stage " + std::to_string(st), join(e), join(c));
  }
  for (auto& [sheet, model] : expect->models) {
    std::string got = ds.model.has(sheet) ? ds.model.sheet(sheet).model() : "absent";
    rep.checks.push_back({"model " + sheet, model, got, normalize_model(model) == normalize_model(got)});
  }
  for (auto& [div, kind] : expect->images) {
    std::string got = "absent";
    for (auto& im : rep.images)
      if (im.divisor == div) got = im.str();
    add("image " + div, kind, got);
  }
  add("final freeness", "free", rep.final_free ? "free" : "not free");
  return rep;
}

std::string elimination_text(const EliminationReport& r) {
  std::ostringstream o;
  o << "type " << type_name(r.type) << "\n";
  auto dump = [&](const StageReport& s, int n) {
    o << "stage " << n << ": L" << n << " = " << global_str(s.L) << "\n";
    for (auto& [sh, c] : s.restrictions) o << "  L" << n << "|" << sh << " = " << c << "\n";
    o << "  base curves: ";
    if (s.base.empty()) o << "none";
    for (std::size_t i = 0; i < s.base.size(); ++i) o << (i ? ", " : "") << s.base[i].name();
    o << "\n";
    if (!s.base.empty()) {
      o << "  degrees:";
      for (auto& b : s.base) o << " " << b.degree;
      o << "\n";
    }
    o << "  " << (s.free ? "free" : "not free") << "\n";
  };
  dump(r.stage1, 1);
  for (auto& l : r.blowup_log) o << l << "\n";
  if (r.stage2) dump(*r.stage2, 2);
  o << "images:\n";
  for (auto& im : r.images) o << "  " << im.divisor << " -> " << im.str() << "\n";
  for (auto& c : r.checks)
    o << (c.pass ? "  ok   " : "  FAIL ") << c.id << ": expected " << c.expected << ", got " << c.computed << "\n";
  return o.str();
}

} // namespace acl
