#include "anticanon/cycles.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "anticanon/linsys.hpp"

namespace acl {

BiPoly BiPoly::constant(const Scalar& c) {
  BiPoly p;
  if (c != 0) p.t[{0, 0}] = c;
  return p;
}

BiPoly BiPoly::s() { BiPoly p; p.t[{1, 0}] = 1; return p; }
BiPoly BiPoly::tt() { BiPoly p; p.t[{0, 1}] = 1; return p; }

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (auto& [e, c] : o.t) {
    auto& v = t[e];
    v += c;
    if (v == 0) t.erase(e);
  }
  return *this;
}

BiPoly operator*(const BiPoly& x, const BiPoly& y) {
  BiPoly r;
  for (auto& [ex, cx] : x.t)
    for (auto& [ey, cy] : y.t) {
      auto key = std::make_pair(ex.first + ey.first, ex.second + ey.second);
      auto& v = r.t[key];
      v += cx * cy;
      if (v == 0) r.t.erase(key);
    }
  return r;
}

BiPoly BiPoly::truncated(int n) const {
  BiPoly r;
  for (auto& [e, c] : t)
    if (e.first < n) r.t[e] = c;
  return r;
}

BiPoly BiPoly::compose(const BiPoly& u, const BiPoly& v) const {
  BiPoly r;
  std::vector<BiPoly> up{constant(1)}, vp{constant(1)};
  for (auto& [e, c] : t) {
    while (static_cast<int>(up.size()) <= e.first) up.push_back(up.back() * u);
    while (static_cast<int>(vp.size()) <= e.second) vp.push_back(vp.back() * v);
    r += constant(c) * up[e.first] * vp[e.second];
  }
  return r;
}

std::string BlowupEvent::str() const {
  std::string s = kind == Node ? "pair node " : "pair smooth ";
  s += std::to_string(index);
  if (param) s += " t=" + scalar_str(*param);
  return s;
}

namespace {

Frame affine_frame(const Scalar& x0, const Scalar& y0, bool sigma_is_x) {
  BiPoly S = BiPoly::s(), T = BiPoly::tt();
  if (sigma_is_x) return {BiPoly::constant(x0) + S, BiPoly::constant(y0) + T};
  return {BiPoly::constant(x0) + T, BiPoly::constant(y0) + S};
}

Origin line(Origin::Kind k, long v) {
  Origin o;
  o.kind = k;
  o.value = v;
  return o;
}

} // namespace

CycleConfig::CycleConfig() : L_(0) {
  comps_ = {L_.f1(), L_.f2(), L_.f1(), L_.f2()};
  origin_ = {line(Origin::Vertical, 0), line(Origin::Horizontal, 0),
             line(Origin::Vertical, 1), line(Origin::Horizontal, 1)};
  edges_ = {{affine_frame(0, 0, true)}, {affine_frame(1, 0, false)},
            {affine_frame(1, 1, true)}, {affine_frame(0, 1, false)}};
}

std::vector<int> CycleConfig::string() const {
  std::vector<int> s;
  for (auto& c : comps_) s.push_back(static_cast<int>(self(c)));
  return s;
}

std::vector<DivisorClass> CycleConfig::smooth_exceptionals() const {
  std::vector<DivisorClass> r;
  for (auto& p : cluster_)
    if (p.smooth) r.push_back(L_.basis(p.label));
  return r;
}

std::vector<DivisorClass> CycleConfig::default_catalog() const {
  std::vector<DivisorClass> r;
  for (auto& c : comps_)
    if (self(c) < 0) r.push_back(c);
  for (auto& e : smooth_exceptionals()) r.push_back(e);
  return r;
}

DivisorClass CycleConfig::total() const {
  DivisorClass t = L_.zero();
  for (auto& c : comps_) t += c;
  return t;
}

std::string CycleConfig::component_name(int i) const {
  int kk = k();
  return (i < kk ? "C" : "cC") + std::to_string(i % kk + 1);
}

CycleConfig CycleConfig::apply(const BlowupEvent& ev) const {
  CycleConfig r = *this;
  int mm = m(), kk = k();
  if (L_.pairs() >= 4) throw CycleError("at most four conjugate pairs of blowups");
  if (ev.index < 1 || ev.index > mm)
    throw CycleError("index " + std::to_string(ev.index) + " out of range 1.." + std::to_string(mm));
  int j = r.L_.add_pair();
  for (auto& c : r.comps_) c = r.L_.lift(c);
  DivisorClass E = r.L_.basis(SurfaceLattice::e(j)), cE = r.L_.basis(SurfaceLattice::ce(j));
  std::size_t le = SurfaceLattice::e(j), lce = SurfaceLattice::ce(j);

  auto prox = [&](int i) {
    std::vector<std::size_t> v;
    if (origin_[i].kind == Origin::Exceptional) v.push_back(origin_[i].label);
    return v;
  };

  if (ev.kind == BlowupEvent::Smooth) {
    int i = ev.index - 1, ic = (i + kk) % mm;
    r.comps_[i] -= E;
    r.comps_[ic] -= cE;
    for (auto [idx, lab] : {std::pair{i, le}, std::pair{ic, lce}}) {
      ClusterPoint p;
      p.label = lab;
      p.event = static_cast<int>(history_.size());
      p.smooth = true;
      p.carrier = origin_[idx];
      p.on_label = origin_[idx].kind == Origin::Exceptional ? origin_[idx].label : 0;
      p.proximate = prox(idx);
      if (idx == i) p.param = ev.param;
      r.cluster_.push_back(p);
    }
  } else {
    int e0 = ev.index - 1, ec = (e0 + kk) % mm;
    // cluster points first, using the current geometry
    for (auto [edge, lab] : {std::pair{e0, le}, std::pair{ec, lce}}) {
      ClusterPoint p;
      p.label = lab;
      p.event = static_cast<int>(history_.size());
      p.frame = edges_[edge].frame;
      auto a = prox(edge), b = prox((edge + 1) % mm);
      p.proximate = a;
      p.proximate.insert(p.proximate.end(), b.begin(), b.end());
      r.cluster_.push_back(p);
    }
    // neighbours lose the new class
    r.comps_[e0] -= E;
    r.comps_[(e0 + 1) % mm] -= E;
    r.comps_[ec] -= cE;
    r.comps_[(ec + 1) % mm] -= cE;
    // insert at the larger edge first so the smaller index stays valid
    std::vector<std::pair<int, std::size_t>> ins = {{e0, le}, {ec, lce}};
    std::sort(ins.begin(), ins.end(), [](auto& x, auto& y) { return x.first > y.first; });
    BiPoly S = BiPoly::s(), T = BiPoly::tt();
    for (auto [edge, lab] : ins) {
      const Frame& F = r.edges_[edge].frame;
      Origin o;
      o.kind = Origin::Exceptional;
      o.label = lab;
      o.center = F;
      EdgeGeom left{F.compose(S * T, T)};  // (A, E)
      EdgeGeom right{F.compose(S, S * T)}; // (E, B)
      r.comps_.insert(r.comps_.begin() + edge + 1, r.L_.basis(lab));
      r.origin_.insert(r.origin_.begin() + edge + 1, o);
      r.edges_[edge] = left;
      r.edges_.insert(r.edges_.begin() + edge + 1, right);
    }
  }
  r.history_.push_back(ev);
  return r;
}

CycleConfig CycleConfig::relabelled(int shift, bool reflect) const {
  CycleConfig r = *this;
  int mm = m();
  auto src = [&](int i) { return reflect ? ((shift - i) % mm + mm) % mm : (i + shift) % mm; };
  for (int i = 0; i < mm; ++i) {
    r.comps_[i] = comps_[src(i)];
    r.origin_[i] = origin_[src(i)];
  }
  // edge i joins new i and i+1
  BiPoly S = BiPoly::s(), T = BiPoly::tt();
  for (int i = 0; i < mm; ++i) {
    if (!reflect) {
      r.edges_[i] = edges_[src(i)];
    } else {
      // old edge joining src(i+1) and src(i); swap the two branches
      int old = src(i + 1);
      r.edges_[i].frame = edges_[old].frame.compose(T, S);
    }
  }
  return r;
}

std::optional<CycleConfig> CycleConfig::aligned(const std::vector<int>& target) const {
  int mm = m();
  if (static_cast<int>(target.size()) != mm) return std::nullopt;
  for (int refl = 0; refl < 2; ++refl)
    for (int sh = 0; sh < mm; ++sh) {
      CycleConfig c = relabelled(sh, refl == 1);
      if (c.string() == target) return c;
    }
  return std::nullopt;
}

std::vector<int> canonical_string(const std::vector<int>& s) {
  std::vector<int> best = s;
  std::size_t m = s.size();
  for (int refl = 0; refl < 2; ++refl)
    for (std::size_t sh = 0; sh < m; ++sh) {
      std::vector<int> v(m);
      for (std::size_t i = 0; i < m; ++i)
        v[i] = refl ? s[(sh + m - i) % m] : s[(sh + i) % m];
      if (v < best) best = v;
    }
  return best;
}

std::vector<int> canonical_string(const CycleConfig& c) { return canonical_string(c.string()); }

std::string string_str(const std::vector<int>& s) {
  std::string r = "(";
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i]);
  return r + ")";
}

std::vector<int> parse_string(const std::string& s) {
  std::vector<int> r;
  std::string tok;
  for (char ch : s + ",") {
    if (ch == '(' || ch == ')' || ch == ' ') continue;
    if (ch == ',') {
      if (!tok.empty()) r.push_back(std::stoi(tok));
      tok.clear();
    } else tok += ch;
  }
  return r;
}

DegreeProfile degree_profile(const DivisorClass& D, const CycleConfig& c) {
  DegreeProfile p;
  p.topologically_trivial = true;
  for (auto& C : c.components()) {
    p.degrees.push_back(pair(D, C, c.lattice()));
    if (p.degrees.back() != 0) p.topologically_trivial = false;
  }
  return p;
}

CycleConfig apply_events(const std::vector<BlowupEvent>& evs) {
  CycleConfig c;
  for (auto& e : evs) c = c.apply(e);
  return c;
}

namespace {
void walk(const CycleConfig& c, std::vector<BlowupEvent>& evs, int nodes,
          std::map<std::vector<int>, EnumeratedScenario>& out) {
  if (c.lattice().pairs() == 4) {
    auto key = canonical_string(c);
    if (!out.count(key)) {
      EnumeratedScenario e;
      e.string = key;
      e.events = evs;
      e.node_pairs = nodes;
      out.emplace(key, e);
    }
    return;
  }
  for (int kind = 0; kind < 2; ++kind)
    for (int i = 1; i <= c.m(); ++i) {
      BlowupEvent ev;
      ev.kind = kind ? BlowupEvent::Smooth : BlowupEvent::Node;
      ev.index = i;
      evs.push_back(ev);
      walk(c.apply(ev), evs, nodes + (kind == 0), out);
      evs.pop_back();
    }
}
} // namespace

std::vector<EnumeratedScenario> enumerate_scenarios() {
  std::map<std::vector<int>, EnumeratedScenario> found;
  std::vector<BlowupEvent> evs;
  walk(CycleConfig(), evs, 0, found);
  std::vector<EnumeratedScenario> r;
  Sampler s;
  for (auto& [key, e] : found) {
    CycleConfig c = apply_events(e.events);
    e.moishezon_obstructed = degree_profile(-c.lattice().K(), c).topologically_trivial;
    e.h0_anticanonical = oracle_h0_generic(c, -c.lattice().K(), s);
    r.push_back(e);
  }
  return r;
}

} // namespace acl
