#include "anticanon/linsys.hpp"

#include <algorithm>
#include <numeric>

namespace acl {

StripResult strip(const DivisorClass& D, const std::vector<DivisorClass>& catalog,
                  const std::vector<std::string>& names) {
  StripResult r;
  r.movable = D;
  r.fixed = DivisorClass(D.dim());
  r.multiplicity.assign(catalog.size(), 0);
  for (int iter = 0;; ++iter) {
    bool hit = false;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      long d = pair(r.movable, catalog[i]);
      if (d >= 0) continue;
      if (iter >= 64) throw LinSysError("divergent stripping: catalog does not bound the fixed part");
      r.movable -= catalog[i];
      r.fixed += catalog[i];
      ++r.multiplicity[i];
      std::string nm = i < names.size() ? names[i] : "N" + std::to_string(i + 1);
      r.trace.push_back("subtract " + nm + " (degree " + std::to_string(d) + ")");
      hit = true;
      break;
    }
    if (!hit) break;
  }
  return r;
}

StripResult strip(const DivisorClass& D, const SurfaceLattice& L) { return strip(D, L.catalog); }

int oracle_h0(int p, int q, const std::vector<ResolvedPoint>& pts, const std::vector<long>& mults) {
  if (p < 0 || q < 0) return 0;
  std::size_t n = pts.size();
  if (mults.size() != n) throw LinSysError("oracle: multiplicity list does not match the cluster");
  for (long m : mults)
    if (m < 0) throw LinSysError("oracle: negative multiplicity");
  // T[j][l]: coefficient of the strict transform of E_l in the total transform of E_j
  std::vector<std::vector<long>> T(n, std::vector<long>(n, 0));
  for (std::size_t jj = n; jj-- > 0;) {
    T[jj][jj] = 1;
    for (std::size_t i = jj + 1; i < n; ++i) {
      auto& pr = pts[i].proximate;
      if (std::find(pr.begin(), pr.end(), jj) == pr.end()) continue;
      for (std::size_t l = 0; l < n; ++l) T[jj][l] += T[i][l];
    }
  }
  std::vector<long> N(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) N[l] += mults[j] * T[j][l];

  std::size_t cols = static_cast<std::size_t>((p + 1) * (q + 1));
  std::vector<std::vector<Scalar>> rows;
  BiPoly S = BiPoly::s(), ST = BiPoly::s() * BiPoly::tt();
  for (std::size_t l = 0; l < n; ++l) {
    int need = static_cast<int>(N[l]);
    if (need <= 0) continue;
    BiPoly X = pts[l].frame.x.compose(S, ST).truncated(need);
    BiPoly Y = pts[l].frame.y.compose(S, ST).truncated(need);
    std::vector<BiPoly> xp{BiPoly::constant(1)}, yp{BiPoly::constant(1)};
    for (int a = 1; a <= p; ++a) xp.push_back((xp.back() * X).truncated(need));
    for (int b = 1; b <= q; ++b) yp.push_back((yp.back() * Y).truncated(need));
    std::map<std::pair<int, int>, std::vector<Scalar>> eq;
    for (int a = 0; a <= p; ++a)
      for (int b = 0; b <= q; ++b) {
        BiPoly mono = (xp[a] * yp[b]).truncated(need);
        for (auto& [e, c] : mono.t) {
          auto& row = eq[e];
          if (row.empty()) row.assign(cols, 0);
          row[a * (q + 1) + b] += c;
        }
      }
    for (auto& [e, row] : eq) rows.push_back(std::move(row));
  }
  return static_cast<int>(cols) - matrix_rank(rows);
}

std::vector<ResolvedPoint> resolve_cluster(const CycleConfig& c, Sampler& s) {
  const auto& cl = c.cluster();
  std::map<std::size_t, std::size_t> pos;
  std::map<std::pair<int, std::string>, std::vector<Scalar>> used; // per carrier
  std::vector<ResolvedPoint> out;
  BiPoly S = BiPoly::s(), T = BiPoly::tt();
  for (std::size_t i = 0; i < cl.size(); ++i) {
    const ClusterPoint& p = cl[i];
    ResolvedPoint r;
    for (auto lab : p.proximate) r.proximate.push_back(pos.at(lab));
    if (!p.smooth) {
      r.frame = p.frame;
    } else {
      const Origin& o = p.carrier;
      auto key = std::make_pair(static_cast<int>(o.kind),
                                o.kind == Origin::Exceptional ? std::to_string(o.label) : scalar_str(o.value));
      auto& taken = used[key];
      Scalar t;
      if (p.param) t = *p.param;
      else {
        do t = s.rational();
        while (t == 0 || t == 1 || std::find(taken.begin(), taken.end(), t) != taken.end());
      }
      taken.push_back(t);
      if (o.kind == Origin::Vertical)
        r.frame = {BiPoly::constant(o.value) + S, BiPoly::constant(t) + T};
      else if (o.kind == Origin::Horizontal)
        r.frame = {BiPoly::constant(t) + T, BiPoly::constant(o.value) + S};
      else
        r.frame = o.center.compose(S, S * (T + BiPoly::constant(t)));
    }
    pos[p.label] = i;
    out.push_back(std::move(r));
  }
  return out;
}

int oracle_h0(const CycleConfig& c, const DivisorClass& D, Sampler& s) {
  const SurfaceLattice& L = c.lattice();
  if (D.dim() != L.dim()) throw LinSysError("oracle: class does not live on this surface");
  auto pts = resolve_cluster(c, s);
  std::vector<long> mults;
  for (auto& p : c.cluster()) mults.push_back(-D[p.label]);
  return oracle_h0(static_cast<int>(D[SurfaceLattice::F1]), static_cast<int>(D[SurfaceLattice::F2]), pts, mults);
}

OracleSamples oracle_h0_samples(const CycleConfig& c, const DivisorClass& D, Sampler& s, int n) {
  OracleSamples r;
  for (int i = 0; i < n; ++i) r.values.push_back(oracle_h0(c, D, s));
  r.value = *std::min_element(r.values.begin(), r.values.end());
  r.agree = std::all_of(r.values.begin(), r.values.end(), [&](int v) { return v == r.value; });
  return r;
}

int oracle_h0_generic(const CycleConfig& c, const DivisorClass& D, Sampler& s) {
  return oracle_h0_samples(c, D, s).value;
}

std::vector<std::array<long, 2>> fan_from_string(const std::vector<int>& s) {
  std::size_t m = s.size();
  if (m < 3) throw LinSysError("fan needs at least three rays");
  std::vector<std::array<long, 2>> v = {{1, 0}, {0, 1}};
  for (std::size_t i = 1; i + 1 < m; ++i)
    v.push_back({-s[i] * v[i][0] - v[i - 1][0], -s[i] * v[i][1] - v[i - 1][1]});
  // closing relations at i = m-1 and i = 0
  std::array<long, 2> w = {-s[m - 1] * v[m - 1][0] - v[m - 2][0], -s[m - 1] * v[m - 1][1] - v[m - 2][1]};
  std::array<long, 2> z = {-s[0] * v[0][0] - v[m - 1][0], -s[0] * v[0][1] - v[m - 1][1]};
  if (w != v[0] || z != v[1]) throw LinSysError("string " + string_str(s) + " is not a smooth complete fan");
  return v;
}

long toric_h0(const std::vector<std::array<long, 2>>& rays, const std::vector<long>& a) {
  std::size_t m = rays.size();
  if (a.size() != m) throw LinSysError("toric: coefficient count does not match the fan");
  auto feasible = [&](const Scalar& x, const Scalar& y) {
    for (std::size_t i = 0; i < m; ++i)
      if (x * rays[i][0] + y * rays[i][1] < -a[i]) return false;
    return true;
  };
  bool any = false;
  Scalar xmin, xmax, ymin, ymax;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      long det = rays[i][0] * rays[j][1] - rays[i][1] * rays[j][0];
      if (!det) continue;
      // <u, v_i> = -a_i, <u, v_j> = -a_j
      Scalar x = Scalar(-a[i] * rays[j][1] + a[j] * rays[i][1], det);
      Scalar y = Scalar(-rays[i][0] * a[j] + rays[j][0] * a[i], det);
      x.canonicalize();
      y.canonicalize();
      if (!feasible(x, y)) continue;
      if (!any) { xmin = xmax = x; ymin = ymax = y; any = true; }
      xmin = std::min(xmin, x); xmax = std::max(xmax, x);
      ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    }
  if (!any) return 0;
  auto fl = [](const Scalar& q) { mpz_class r; mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t()); return r.get_si(); };
  auto ce = [](const Scalar& q) { mpz_class r; mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t()); return r.get_si(); };
  long count = 0;
  for (long x = ce(xmin); x <= fl(xmax); ++x)
    for (long y = ce(ymin); y <= fl(ymax); ++y)
      if (feasible(x, y)) ++count;
  return count;
}

const char* route_name(Route r) {
  switch (r) {
    case Route::NefChi: return "nef-chi";
    case Route::Pencil: return "pencil-composed";
    default: return "oracle";
  }
}

const char* map_kind_name(MapKind k) {
  switch (k) {
    case MapKind::ComposedWithPencil: return "composed-with-pencil";
    case MapKind::DegreeTwoOntoPlane: return "degree-two-onto-plane";
    case MapKind::Birational: return "birational";
    default: return "outside the known taxonomy";
  }
}

std::optional<std::pair<long, DivisorClass>> pencil_decomposition(const DivisorClass& M) {
  if (M.is_zero() || self(M) != 0) return std::nullopt;
  long g = 0;
  for (long x : M.c) g = std::gcd(g, x);
  DivisorClass P = M;
  for (long& x : P.c) x /= g;
  // a pencil is effective: f1 + f2 coefficient positive
  if (P[SurfaceLattice::F1] + P[SurfaceLattice::F2] <= 0) return std::nullopt;
  return std::make_pair(g, P);
}

bool is_toric(const CycleConfig& c) {
  for (auto& e : c.history())
    if (e.kind == BlowupEvent::Smooth) return false;
  return true;
}

std::vector<long> toric_coefficients(const CycleConfig& c, const DivisorClass& D) {
  auto s = c.string();
  std::size_t m = s.size();
  std::vector<long> a(m, 0);
  const auto& C = c.components();
  for (std::size_t j = 1; j + 1 < m; ++j) a[j + 1] = pair(D, C[j]) - a[j - 1] - s[j] * a[j];
  DivisorClass sum = c.lattice().zero();
  for (std::size_t i = 0; i < m; ++i) sum += a[i] * C[i];
  if (sum != D) throw LinSysError("class is not supported on the toric boundary");
  return a;
}

std::vector<std::string> catalog_names(const CycleConfig& c, const std::vector<DivisorClass>& catalog) {
  std::vector<std::string> names;
  const SurfaceLattice& L = c.lattice();
  for (auto& N : catalog) {
    std::string nm;
    for (int i = 0; i < c.m(); ++i)
      if (c.component(i) == N) { nm = c.component_name(i); break; }
    if (nm.empty()) nm = class_str(N, L);
    names.push_back(nm);
  }
  return names;
}

LinSysReport analyze(const CycleConfig& c, const DivisorClass& D, Sampler& s,
                     std::optional<std::vector<DivisorClass>> catalog) {
  const SurfaceLattice& L = c.lattice();
  std::vector<DivisorClass> cat = catalog ? *catalog : c.default_catalog();
  LinSysReport r;
  r.D = D;
  auto sr = strip(D, cat, catalog_names(c, cat));
  r.B = sr.fixed;
  r.M = sr.movable;
  r.trace = sr.trace;
  r.Msq = self(r.M);
  r.oracle = oracle_h0_samples(c, D, s);
  if (!r.oracle.agree) r.notes.push_back("oracle samples disagree; generic value taken as the minimum");

  bool nef = std::all_of(cat.begin(), cat.end(), [&](const DivisorClass& N) { return pair(r.M, N) >= 0; });
  long kdeg = pair(r.M, -L.K());
  auto pen = pencil_decomposition(r.M);
  if (nef && kdeg > 0) {
    r.route = Route::NefChi;
    r.h0 = static_cast<int>(chi(r.M, L));
  } else if (pen) {
    r.route = Route::Pencil;
    r.h0 = static_cast<int>(pen->first + 1);
  } else {
    r.route = Route::Oracle;
    r.h0 = r.oracle.value;
  }
  if (r.h0 != r.oracle.value)
    throw LinSysError(std::string("route ") + route_name(r.route) + " gives " + std::to_string(r.h0) +
                      " but the oracle gives " + std::to_string(r.oracle.value) + " for " + class_str(D, L));
  if (is_toric(c)) {
    r.toric = toric_h0(fan_from_string(c.string()), toric_coefficients(c, D));
    if (*r.toric != r.h0)
      throw LinSysError("toric count " + std::to_string(*r.toric) + " disagrees with h0 " + std::to_string(r.h0));
  }
  classify_map(r);
  return r;
}

MapKind classify_map(LinSysReport& r) {
  auto pen = pencil_decomposition(r.M);
  r.target_dim = r.h0 - 1;
  if (pen && r.h0 == pen->first + 1 && r.h0 >= 2) {
    r.map = MapKind::ComposedWithPencil;
  } else if (r.h0 == 3 && r.Msq == 2) {
    r.map = MapKind::DegreeTwoOntoPlane;
  } else if (r.h0 >= 4 && r.Msq > 0 && r.Msq < 2 * (r.h0 - 2)) {
    // a non-degenerate surface in P^(h0-1) has degree at least h0-2
    r.map = MapKind::Birational;
  } else {
    r.map = MapKind::Outside;
  }
  return r.map;
}

SpecialClassResult special_class_h0(const CycleConfig& c, int i, int sign, bool admissible, Sampler& s) {
  const SurfaceLattice& L = c.lattice();
  if (i < 1 || i > L.pairs()) throw LinSysError("special class index out of range");
  SpecialClassResult r;
  r.admissible = admissible;
  r.D = -L.K() + sign * (L.basis(SurfaceLattice::e(i)) - L.basis(SurfaceLattice::ce(i)));
  auto rep = analyze(c, r.D, s);
  r.fixed = rep.B;
  r.h0 = rep.h0;
  return r;
}

} // namespace acl
