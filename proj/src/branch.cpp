#include "anticanon/branch.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace acl {

QuarticCheckFailed::QuarticCheckFailed(std::string c, std::string r)
    : BranchError("quartic check " + c + " failed, residue " + r), check(std::move(c)),
      residue(std::move(r)) {}

namespace {

Poly z(int i) { return Poly::var(i); }

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// null space of the rows (each of length n)
std::vector<std::vector<Scalar>> kernel(std::vector<std::vector<Scalar>> m, std::size_t n) {
  std::vector<int> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Scalar inv = Scalar(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Scalar f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= f * m[r][j];
    }
    pivcol.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<std::vector<Scalar>> out;
  std::set<int> piv(pivcol.begin(), pivcol.end());
  for (std::size_t fcol = 0; fcol < n; ++fcol) {
    if (piv.count(static_cast<int>(fcol))) continue;
    std::vector<Scalar> v(n);
    v[fcol] = 1;
    for (std::size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = -m[i][fcol];
    out.push_back(v);
  }
  return out;
}

// a solution of A x = b with free coordinates drawn at random
std::vector<Scalar> solve_random(std::vector<std::vector<Scalar>> A, std::vector<Scalar> b,
                                 std::size_t n, Sampler& s) {
  for (std::size_t i = 0; i < A.size(); ++i) A[i].push_back(-b[i]);
  auto ker = kernel(A, n + 1);
  // pick a kernel element with last coordinate 1
  std::vector<Scalar> x(n + 1);
  bool found = false;
  for (auto& v : ker) {
    Scalar c = v[n] != 0 ? Scalar(1) : s.rational();
    for (std::size_t j = 0; j <= n; ++j) x[j] += c * v[j];
    if (v[n] != 0) found = true;
  }
  if (!found || x[n] == 0) throw BranchError("inconsistent synthesis constraints");
  Scalar l = x[n];
  x.pop_back();
  for (auto& c : x) c /= l;
  return x;
}

GQ gadd(const GQ& a, const GQ& b) { return {a.re + b.re, a.im + b.im}; }
GQ gsub(const GQ& a, const GQ& b) { return {a.re - b.re, a.im - b.im}; }
GQ gmul(const GQ& a, const GQ& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
bool gzero(const GQ& a) { return a.re == 0 && a.im == 0; }

// complex rank by realification
int complex_rank(const std::vector<std::vector<GQ>>& rows) {
  std::vector<std::vector<Scalar>> m;
  for (auto& r : rows) {
    std::vector<Scalar> a, b;
    for (auto& x : r) { a.push_back(x.re); b.push_back(-x.im); }
    for (auto& x : r) { a.push_back(x.im); b.push_back(x.re); }
    m.push_back(a);
    m.push_back(b);
  }
  return matrix_rank(m) / 2;
}

Scalar eval(const Poly& p, const std::vector<Scalar>& pt) {
  std::map<int, Scalar> at;
  for (int i = 0; i < NZ; ++i) at[i] = pt[i];
  Poly v = p.specialize(at);
  if (!v.is_constant()) throw BranchError("evaluation left parameters in " + p.str());
  return v.constant_term();
}

std::vector<Scalar> coefficient_vector(const Poly& q) {
  const auto& mons = quadric_monomials();
  std::vector<Scalar> v(mons.size());
  for (std::size_t i = 0; i < mons.size(); ++i)
    v[i] = q.z_coefficient(mons[i].terms().begin()->first).constant_term();
  return v;
}

std::string lambda_entry(const Poly& p) {
  std::string s = p.str();
  return p.size() > 1 ? "(" + s + ")" : s;
}

} // namespace

LinearIdeal ridge_ideal() { return LinearIdeal{{z(Z0), z(Z1), z(Z2)}, false}; }

std::string LambdaPlacement::str() const {
  return "(" + lambda_entry(lambda[0]) + "," + lambda_entry(lambda[1]) + "," +
         lambda_entry(lambda[2]) + ")";
}

bool LambdaPlacement::on_conic() const {
  return (lambda[0] * lambda[0] - lambda[1] * lambda[2]).is_zero();
}

LambdaPlacement lambda_placement(const Poly& l0, const Poly& l1, const Poly& l2) {
  LambdaPlacement p;
  p.lambda = {l0, l1, l2};
  if (l1.is_zero()) {
    if (!l0.is_zero()) throw BranchError("placement off the conic");
    p.plane = LinearIdeal{{z(Z0), z(Z1)}, false};
  } else {
    if (!l1.is_constant() || l1.constant_term() != 1)
      throw BranchError("placements are normalized to λ1 = 1");
    p.plane = LinearIdeal{{z(Z0) - l0 * z(Z1), z(Z2) - l2 * z(Z1)}, false};
  }
  return p;
}

std::vector<LambdaPlacement> lambda_placements(int type) {
  Poly a = z(PA), a1 = z(PA1), a2 = z(PA2);
  std::vector<LambdaPlacement> v;
  v.push_back(lambda_placement(0, 1, 0));
  if (type >= 2) v.push_back(lambda_placement(1, 1, 1));
  if (type == 3) v.push_back(lambda_placement(a, 1, a * a));
  if (type == 4) {
    v.push_back(lambda_placement(a1, 1, a1 * a1));
    v.push_back(lambda_placement(a2, 1, a2 * a2));
  }
  if (type < 1 || type > 4) throw BranchError("type must be I..IV");
  v.push_back(lambda_placement(0, 0, 1));
  return v;
}

std::vector<Poly> quartic_factors(int type, const Poly& f) {
  switch (type) {
    case 1: return {z(Z0), z(Z3), z(Z4), f};
    case 2: return {z(Z0), z(Z0) - z(Z1), z(Z3), z(Z4)};
    case 3: return {z(Z0), z(Z0) - z(Z1), z(Z0) - z(PA) * z(Z1), z(Z4)};
    case 4: return {z(Z0), z(Z0) - z(Z1), z(Z0) - z(PA1) * z(Z1), z(Z0) - z(PA2) * z(Z1)};
  }
  throw BranchError("type must be I..IV");
}

std::vector<Poly> double_quartic_hyperplanes(int type, const Poly& f) {
  switch (type) {
    case 1: return {z(Z3), z(Z4), f};
    case 2: return {z(Z3), z(Z4)};
    case 3: return {z(Z4)};
    case 4: return {};
  }
  throw BranchError("type must be I..IV");
}

std::vector<int> conic_zero_profile(int type, const std::map<int, Scalar>& params) {
  // s = z3, t = z4 as scratch variables
  Poly prod = 1;
  for (const Poly& g : quartic_factors(type, z(Z4))) {
    if (g.involves(Z2) || g.involves(Z3) || g.involves(Z4)) continue;
    prod *= g.specialize(params);
  }
  Poly s = z(Z3), t = z(Z4);
  Poly b = prod.substitute(Z0, s * t).substitute(Z1, s * s);
  std::vector<int> out;
  for (auto& lp : lambda_placements(type)) {
    if (lp.lambda[1].is_zero()) {
      int m = 1 << 20;
      for (auto& [e, c] : b.terms()) m = std::min<int>(m, e[Z3]);
      out.push_back(m);
      continue;
    }
    Scalar l0 = lp.lambda[0].specialize(params).constant_term();
    // univariate in t after s = 1
    int deg = b.z_degree();
    std::vector<Scalar> c(deg + 1);
    for (auto& [e, k] : b.terms()) c[e[Z4]] += k;
    int mult = 0;
    while (c.size() > 1) {
      // Horner division by (t - l0)
      std::vector<Scalar> q(c.size() - 1);
      Scalar acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) {
        acc = acc * l0 + c[i];
        if (i > 0) q[i - 1] = acc;
      }
      if (acc != 0) break;
      c = q;
      ++mult;
    }
    out.push_back(mult);
  }
  return out;
}

const char* double_curve_kind(DoubleCurve::Kind k) {
  switch (k) {
    case DoubleCurve::Conic: return "conic";
    case DoubleCurve::SplittingConic: return "splitting conic";
    case DoubleCurve::Quartic: return "quartic";
  }
  return "?";
}

int incidence_closed_form(int conics, int quartics) {
  return (conics >= 2 ? 2 : 0) + 4 * (quartics * (quartics - 1) / 2) + 2 * conics * quartics;
}

IncidenceTable incidence_table(int type) {
  IncidenceTable t;
  t.type = type;
  auto planes = lambda_placements(type);
  std::vector<std::string> hnames;
  switch (type) {
    case 1: hnames = {"(z3)", "(z4)", "(f)"}; break;
    case 2: hnames = {"(z3)", "(z4)"}; break;
    case 3: hnames = {"(z4)"}; break;
    default: break;
  }
  int n = 0;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    DoubleCurve c;
    bool last = i + 1 == planes.size();
    c.kind = (last && type >= 2) ? DoubleCurve::SplittingConic : DoubleCurve::Conic;
    c.name = "C" + std::to_string(++n);
    c.carrier = "P" + planes[i].str();
    t.curves.push_back(c);
  }
  for (auto& h : hnames) {
    DoubleCurve c;
    c.kind = DoubleCurve::Quartic;
    c.name = "C" + std::to_string(++n);
    c.carrier = "Y∩" + h;
    t.curves.push_back(c);
  }
  std::size_t N = t.curves.size();
  t.count.assign(N, std::vector<int>(N, 0));
  // point sets: conics share {q, q̄}; every other pair meets in fresh points
  std::set<std::string> points;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      bool qi = t.curves[i].kind == DoubleCurve::Quartic;
      bool qj = t.curves[j].kind == DoubleCurve::Quartic;
      int c = (qi && qj) ? 4 : 2;
      t.count[i][j] = t.count[j][i] = c;
      if (!qi && !qj) {
        points.insert("q");
        points.insert("cq");
      } else {
        for (int p = 0; p < c; ++p)
          points.insert(t.curves[i].name + "." + t.curves[j].name + "." + std::to_string(p));
      }
    }
  t.total = static_cast<int>(points.size());
  return t;
}

void validate_parameters(int type, const std::map<int, Scalar>& params) {
  auto need = [&](int v) -> Scalar {
    auto it = params.find(v);
    if (it == params.end()) throw BranchError(std::string("missing parameter ") + var_name(v));
    if (it->second == 0 || it->second == 1)
      throw BranchError(std::string("parameter ") + var_name(v) + " must avoid 0 and 1");
    return it->second;
  };
  if (type == 3) need(PA);
  if (type == 4 && need(PA1) == need(PA2)) throw BranchError("parameters a1 and a2 must differ");
}

bool QuarticModel::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

QuarticModel validate_quartic(int type, const Poly& Q0, const Poly& f0,
                              const std::map<int, Scalar>& params) {
  if (type < 1 || type > 4) throw BranchError("type must be I..IV");
  validate_parameters(type, params);
  if (Q0.z_degree() != 2 || !Q0.is_z_homogeneous()) throw BranchError("Q must be a quadratic form");
  QuarticModel m;
  m.type = type;
  m.params = params;
  m.Q = Q0.specialize(params);
  if (type == 1) {
    if (f0.z_degree() != 1 || !f0.is_z_homogeneous())
      throw BranchError("type I needs a linear form f");
    m.f = f0.specialize(params);
  }
  m.factors = quartic_factors(type, m.f);
  for (auto& g : m.factors) g = g.specialize(params);
  Poly prod = 1;
  for (auto& g : m.factors) prod *= g;
  m.F = prod - m.Q * m.Q;
  for (auto& lp : lambda_placements(type)) {
    LambdaPlacement s;
    for (int i = 0; i < 3; ++i) s.lambda[i] = lp.lambda[i].specialize(params);
    s.plane = lp.plane;
    for (auto& g : s.plane.gens) g = g.specialize(params);
    m.planes.push_back(s);
  }
  m.hyperplanes = double_quartic_hyperplanes(type, m.f);

  // (a) F = -Q^2 on every plane over a placement
  for (auto& p : m.planes) {
    Poly r = reduce(m.F + m.Q * m.Q, p.plane);
    m.checks.push_back({"a:plane" + p.str(), "0", r.str(), r.is_zero()});
  }
  // (b) ridge
  {
    Poly Fr = reduce(m.F, ridge_ideal());
    Poly Qr = reduce(m.Q, ridge_ideal());
    Poly r = Fr + Qr * Qr;
    m.checks.push_back({"b:ridge-square", "0", r.str(), r.is_zero()});
    Exp e33{}, e34{}, e44{};
    e33[Z3] = 2; e34[Z3] = 1; e34[Z4] = 1; e44[Z4] = 2;
    Poly A = Qr.z_coefficient(e33), B = Qr.z_coefficient(e34), C = Qr.z_coefficient(e44);
    std::string computed;
    bool pass = false;
    if (A.is_constant() && B.is_constant() && C.is_constant()) {
      Scalar d = B.constant_term() * B.constant_term() - 4 * A.constant_term() * C.constant_term();
      computed = "disc " + scalar_str(d);
      pass = d < 0;
    } else {
      computed = "Q|ridge = " + Qr.str();
    }
    m.checks.push_back({"b:conjugate-roots", "disc < 0", computed, pass});
  }
  // (c) splitting conic
  if (type >= 2) {
    Poly r = reduce(m.Q, LinearIdeal{{z(Z0), z(Z1)}, false});
    int rank = r.is_zero() ? 0 : quadratic_rank(r, {Z2, Z3, Z4});
    m.checks.push_back({"c:splitting-rank", "<= 2", std::to_string(rank), rank <= 2});
  }
  // (d) double quartic curves
  for (auto& h : m.hyperplanes) {
    Poly r = reduce(m.F + m.Q * m.Q, LinearIdeal{{h}, true});
    m.checks.push_back({"d:hyperplane(" + h.str() + ")", "0", r.str(), r.is_zero()});
  }
  return m;
}

QuarticModel assemble_quartic(int type, const Poly& Q, const Poly& f,
                              const std::map<int, Scalar>& params) {
  QuarticModel m = validate_quartic(type, Q, f, params);
  for (auto& c : m.checks)
    if (!c.pass) throw QuarticCheckFailed(c.id, c.computed);
  return m;
}

QuarticFixture parse_quartic_fixture(const std::string& text) {
  QuarticFixture q;
  bool have_type = false, have_q = false;
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    auto sp = line.find(' ');
    std::string key = line.substr(0, sp), rest = sp == std::string::npos ? "" : trim(line.substr(sp));
    try {
      if (key == "type") {
        q.type = parse_type(rest);
        have_type = true;
      } else if (key == "params") {
        std::istringstream ps(rest);
        std::string tok;
        while (ps >> tok) {
          auto eq = tok.find('=');
          if (eq == std::string::npos) throw BranchError("expected name=value, got '" + tok + "'");
          int v = var_index(tok.substr(0, eq));
          if (v < PA) throw BranchError("unknown parameter '" + tok.substr(0, eq) + "'");
          q.params[v] = Scalar(tok.substr(eq + 1));
          q.params[v].canonicalize();
        }
      } else if (key == "f") {
        q.f = parse_poly(rest);
      } else if (key == "Q") {
        q.Q = parse_poly(rest);
        have_q = true;
      } else {
        throw BranchError("unknown directive '" + key + "'");
      }
    } catch (const std::exception& e) {
      throw BranchError("line " + std::to_string(ln) + ": " + e.what());
    }
  }
  if (!have_type) throw BranchError("missing 'type' header");
  if (!have_q) throw BranchError("missing 'Q' line");
  return q;
}

std::string quartic_fixture_text(const QuarticFixture& q) {
  std::ostringstream os;
  os << "type " << type_name(q.type) << "\n";
  if (!q.params.empty()) {
    os << "params";
    for (auto& [v, c] : q.params) os << " " << var_name(v) << "=" << scalar_str(c);
    os << "\n";
  }
  if (!q.f.is_zero()) os << "f " << q.f.str() << "\n";
  os << "Q " << q.Q.str() << "\n";
  return os.str();
}

QuarticFixture load_quartic_fixture(int type) {
  std::string path = data_dir() + "/branch/type" + type_name(type) + ".poly";
  std::ifstream in(path);
  if (!in) throw BranchError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_quartic_fixture(ss.str());
}

std::string quartic_json(const QuarticModel& m) {
  nlohmann::json j;
  j["type"] = type_name(m.type);
  nlohmann::json p = nlohmann::json::object();
  for (auto& [v, c] : m.params) p[var_name(v)] = scalar_str(c);
  j["params"] = p;
  j["Q"] = m.Q.str();
  j["F"] = m.F.str();
  if (!m.f.is_zero()) j["f"] = m.f.str();
  nlohmann::json cs = nlohmann::json::array();
  for (auto& c : m.checks)
    cs.push_back({{"id", c.id}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
  j["checks"] = cs;
  j["ok"] = m.ok();
  j["note"] = "necessary conditions only";
  return j.dump(2);
}

// ---- quadric constraints --------------------------------------------------

const std::vector<Poly>& quadric_monomials() {
  static const std::vector<Poly> mons = [] {
    std::vector<Poly> v;
    for (int i = 0; i < NZ; ++i)
      for (int j = i; j < NZ; ++j) v.push_back(z(i) * z(j));
    return v;
  }();
  return mons;
}

Poly quadric_from_vector(const std::vector<Scalar>& v) {
  Poly q;
  const auto& mons = quadric_monomials();
  for (std::size_t i = 0; i < mons.size(); ++i)
    if (v[i] != 0) q += mons[i] * v[i];
  return q;
}

std::vector<std::vector<Scalar>> condition_rows(const QuadricCondition& c) {
  const auto& mons = quadric_monomials();
  std::size_t n = mons.size();
  std::vector<std::vector<Scalar>> rows;
  if (c.kind == QuadricCondition::Point) {
    std::vector<Scalar> r(n);
    for (std::size_t m = 0; m < n; ++m) r[m] = eval(mons[m], c.point);
    rows.push_back(r);
  } else if (c.kind == QuadricCondition::Span) {
    std::vector<Poly> R, G;
    for (auto& mn : mons) R.push_back(reduce(mn, c.where));
    for (auto& g : c.gens) G.push_back(reduce(g, c.where));
    std::map<Exp, std::size_t, LexGreater> idx;
    for (auto* list : {&R, &G})
      for (auto& p : *list)
        for (auto& [e, k] : p.terms()) idx.emplace(e, 0);
    std::size_t d = 0;
    for (auto& [e, i] : idx) i = d++;
    auto vec = [&](const Poly& p) {
      std::vector<Scalar> v(d);
      for (auto& [e, k] : p.terms()) v[idx.at(e)] = k;
      return v;
    };
    std::vector<std::vector<Scalar>> gm;
    for (auto& g : G) gm.push_back(vec(g));
    auto ann = gm.empty() ? kernel({std::vector<Scalar>(d)}, d) : kernel(gm, d);
    std::vector<std::vector<Scalar>> rv;
    for (auto& r : R) rv.push_back(vec(r));
    for (auto& w : ann) {
      std::vector<Scalar> row(n);
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t j = 0; j < d; ++j) row[m] += w[j] * rv[m][j];
      rows.push_back(row);
    }
  } else {
    // gradient of each monomial at q
    std::vector<std::vector<GQ>> D(NZ, std::vector<GQ>(n));
    std::size_t m = 0;
    for (int a = 0; a < NZ; ++a)
      for (int b = a; b < NZ; ++b, ++m) {
        D[a][m] = gadd(D[a][m], c.q[b]);
        D[b][m] = gadd(D[b][m], c.q[a]);
      }
    for (int j = 0; j < NZ; ++j)
      for (int k = j + 1; k < NZ; ++k) {
        std::vector<Scalar> re(n), im(n);
        for (std::size_t mm = 0; mm < n; ++mm) {
          GQ v = gsub(gmul(D[j][mm], c.form[k]), gmul(D[k][mm], c.form[j]));
          re[mm] = v.re;
          im[mm] = v.im;
        }
        rows.push_back(re);
        rows.push_back(im);
      }
  }
  return rows;
}

namespace {
std::vector<std::vector<Scalar>> all_rows(const std::vector<QuadricCondition>& cs) {
  std::vector<std::vector<Scalar>> rows;
  for (auto& c : cs)
    for (auto& r : condition_rows(c)) rows.push_back(r);
  return rows;
}
} // namespace

int quadric_constraint_rank(const std::vector<QuadricCondition>& cs) {
  return matrix_rank(all_rows(cs));
}

int quadric_constraint_dim(const std::vector<QuadricCondition>& cs) {
  return 14 - quadric_constraint_rank(cs);
}

std::vector<Poly> quadric_solutions(const std::vector<QuadricCondition>& cs) {
  auto rows = all_rows(cs);
  std::size_t n = quadric_monomials().size();
  if (rows.empty()) rows.push_back(std::vector<Scalar>(n));
  std::vector<Poly> out;
  for (auto& v : kernel(rows, n)) out.push_back(quadric_from_vector(v));
  return out;
}

namespace {

QuadricCondition span_cond(std::string label, std::vector<Poly> where, std::vector<Poly> gens) {
  QuadricCondition c;
  c.kind = QuadricCondition::Span;
  c.label = std::move(label);
  c.where = LinearIdeal{std::move(where), false};
  c.gens = std::move(gens);
  return c;
}

QuadricCondition point_cond(std::string label, std::vector<Scalar> p) {
  QuadricCondition c;
  c.kind = QuadricCondition::Point;
  c.label = std::move(label);
  c.point = std::move(p);
  return c;
}

std::vector<Poly> with(std::vector<Poly> a, const Poly& b) {
  a.push_back(b);
  return a;
}

// basis of the 3-space of a plane P_λ
std::vector<std::vector<Scalar>> plane_basis(const LambdaPlacement& p) {
  std::vector<std::vector<Scalar>> b;
  if (p.lambda[1].is_zero()) b.push_back({0, 0, 1, 0, 0});
  else b.push_back({p.lambda[0].constant_term(), 1, p.lambda[2].constant_term(), 0, 0});
  b.push_back({0, 0, 0, 1, 0});
  b.push_back({0, 0, 0, 0, 1});
  return b;
}

std::vector<GQ> gradient_at(const Poly& Q, const std::vector<GQ>& q) {
  std::vector<GQ> g(NZ);
  auto cv = coefficient_vector(Q);
  std::size_t m = 0;
  for (int a = 0; a < NZ; ++a)
    for (int b = a; b < NZ; ++b, ++m) {
      GQ ca{cv[m], 0};
      g[a] = gadd(g[a], gmul(ca, q[b]));
      g[b] = gadd(g[b], gmul(ca, q[a]));
    }
  return g;
}

} // namespace

bool contains_double_curves(const QuarticModel& m, const Poly& Qp) {
  Poly Y = scroll_quadric();
  auto v = coefficient_vector(Qp);
  std::vector<QuadricCondition> cs;
  for (auto& p : m.planes) cs.push_back(span_cond("conic", p.plane.gens, {m.Q}));
  for (auto& h : m.hyperplanes) cs.push_back(span_cond("quartic", {h}, {m.Q, Y}));
  for (auto& c : cs)
    for (auto& r : condition_rows(c)) {
      Scalar s = 0;
      for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * v[i];
      if (s != 0) return false;
    }
  return true;
}

ConstraintInstance synthesize_instance(int type, Sampler& s) {
  const auto& mons = quadric_monomials();
  std::size_t n = mons.size();
  std::map<int, Scalar> params;
  if (type >= 3) params = s.parameters();
  Poly f = type == 1 ? parse_poly("z1 + z2 + z3 + 2*z4") : Poly();
  Poly fixed = type == 1 ? parse_poly("z3^2 + z4^2") : parse_poly("(z2 + z3)^2 + z4^2");
  std::vector<bool> free(n, false);
  for (std::size_t m = 0; m < n; ++m) {
    if (type == 1) free[m] = fixed.z_coefficient(mons[m].terms().begin()->first).is_zero();
    else free[m] = mons[m].involves(Z0) || mons[m].involves(Z1);
  }
  auto lam = [&](Scalar l0) { return std::vector<Scalar>{l0, 1, l0 * l0, s.rational(), s.rational()}; };
  std::vector<std::vector<Scalar>> pts;
  if (type == 1) {
    pts.push_back({0, 1, 0, s.rational(), 0});
    pts.push_back({0, 0, 1, s.rational(), 0});
  } else if (type == 2) {
    pts.push_back({0, 1, 0, s.rational(), 0});
    pts.push_back({1, 1, 1, s.rational(), 0});
  } else if (type == 4) {
    pts.push_back(lam(0));
    pts.push_back(lam(1));
    pts.push_back(lam(params[PA1]));
    pts.push_back(lam(params[PA2]));
  }
  // unknowns: the free coefficients; Q(r) = 0 at each point
  std::vector<std::size_t> fi;
  for (std::size_t m = 0; m < n; ++m)
    if (free[m]) fi.push_back(m);
  std::vector<std::vector<Scalar>> A;
  std::vector<Scalar> b;
  for (auto& p : pts) {
    std::vector<Scalar> row;
    for (auto m : fi) row.push_back(eval(mons[m], p));
    A.push_back(row);
    b.push_back(-eval(fixed, p));
  }
  std::vector<Scalar> x;
  if (A.empty()) {
    for (std::size_t i = 0; i < fi.size(); ++i) x.push_back(s.rational());
  } else {
    x = solve_random(A, b, fi.size(), s);
  }
  Poly Q = fixed;
  for (std::size_t i = 0; i < fi.size(); ++i) Q += mons[fi[i]] * x[i];

  ConstraintInstance inst;
  inst.type = type;
  inst.quartic = assemble_quartic(type, Q, f, params);
  const QuarticModel& qm = inst.quartic;
  Poly Y = scroll_quadric();
  std::vector<Poly> l = ridge_ideal().gens;
  auto P = [&](int i) { return qm.planes.at(i).plane.gens; };
  auto H = [&](int i) { return qm.hyperplanes.at(i); };
  auto& g = inst.groups;
  switch (type) {
    case 1:
      g.push_back({"C1∩C2 = {q, q̄}, C1∩C3, C2∩C3, one point of C1∩C4, one of C2∩C4",
                   {span_cond("C1∩C2", l, {qm.Q}), span_cond("C1∩C3", with(P(0), H(0)), {qm.Q}),
                    span_cond("C2∩C3", with(P(1), H(0)), {qm.Q}), point_cond("C1∩C4", pts[0]),
                    point_cond("C2∩C4", pts[1])}});
      g.push_back({"C3∩C4", {span_cond("C3∩C4", {H(0), H(1)}, {qm.Q, Y})}});
      break;
    case 2:
      g.push_back({"C1∩C2, C4∩C5, C1∩C4, one of C1∩C5, C2∩C4, one of C2∩C5",
                   {span_cond("C1∩C2", l, {qm.Q}), span_cond("C4∩C5", {H(0), H(1)}, {qm.Q, Y}),
                    span_cond("C1∩C4", with(P(0), H(0)), {qm.Q}), point_cond("C1∩C5", pts[0]),
                    span_cond("C2∩C4", with(P(1), H(0)), {qm.Q}), point_cond("C2∩C5", pts[1])}});
      break;
    case 3:
    case 4: {
      std::vector<GQ> q = {{0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 1}};
      QuadricCondition t;
      t.kind = QuadricCondition::Tangent;
      t.label = "tangent hyperplane at q";
      t.q = q;
      t.form = gradient_at(qm.Q, q);
      g.push_back({"(a) q, q̄", {span_cond("q", l, {qm.Q})}});
      g.push_back({"(b) tangent spaces V, V̄", {t}});
      std::vector<QuadricCondition> c;
      if (type == 3) {
        for (int i = 0; i < 4; ++i)
          c.push_back(span_cond("C" + std::to_string(i + 1) + "∩C5", with(P(i), H(0)), {qm.Q}));
        g.push_back({"(c) Ci∩C5", c});
      } else {
        for (int i = 0; i < 4; ++i) c.push_back(point_cond("point on C" + std::to_string(i + 1), pts[i]));
        c.push_back(point_cond("point on C5", {0, 0, 1, -1, 0}));
        g.push_back({"(c') one point on each conic", c});
      }
      break;
    }
  }
  return inst;
}

ConstraintReport constraint_report(int type, Sampler& s, int samples) {
  ConstraintReport best;
  std::vector<int> dims;
  for (int k = 0; k < std::max(1, samples); ++k) {
    ConstraintInstance inst = synthesize_instance(type, s);
    ConstraintReport r;
    r.type = type;
    std::vector<QuadricCondition> acc;
    static const std::map<int, std::vector<int>> nominal = {
        {1, {8, 12}}, {2, {12}}, {3, {2, 4, 12}}, {4, {2, 4, 9}}};
    for (std::size_t gi = 0; gi < inst.groups.size(); ++gi) {
      for (auto& c : inst.groups[gi].second) acc.push_back(c);
      ConstraintStage st;
      st.label = inst.groups[gi].first;
      st.conditions = nominal.at(type).at(gi);
      st.rank = quadric_constraint_rank(acc);
      st.dim = 14 - st.rank;
      r.stages.push_back(st);
    }
    const QuarticModel& qm = inst.quartic;
    r.curves = static_cast<int>(qm.planes.size() + qm.hyperplanes.size());
    auto sols = quadric_solutions(acc);
    r.contains_all = !sols.empty() && std::all_of(sols.begin(), sols.end(), [&](const Poly& p) {
      return contains_double_curves(qm, p);
    });
    // members containing every double curve
    std::vector<QuadricCondition> cont = acc;
    Poly Y = scroll_quadric();
    for (auto& p : qm.planes) cont.push_back(span_cond("conic", p.plane.gens, {qm.Q}));
    for (auto& h : qm.hyperplanes) cont.push_back(span_cond("quartic", {h}, {qm.Q, Y}));
    r.containing_dim = quadric_constraint_dim(cont);
    auto yv = coefficient_vector(Y);
    for (auto& p : quadric_solutions(cont)) {
      auto v = coefficient_vector(p);
      if (matrix_rank({v, yv}) < 2) continue;
      if (contains_double_curves(qm, p)) {
        r.certificate = p;
        r.certified = true;
        break;
      }
    }
    if (type >= 3) {
      std::vector<GQ> q = {{0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 1}};
      auto w = gradient_at(qm.Q, q);
      std::vector<std::vector<GQ>> vecs;
      for (auto& p : qm.planes) {
        auto B = plane_basis(p);
        std::vector<GQ> c;
        for (auto& bv : B) {
          GQ v{0, 0};
          for (int i = 0; i < NZ; ++i) v = gadd(v, gmul(w[i], GQ{bv[i], 0}));
          c.push_back(v);
        }
        // kernel of the functional on the plane
        std::size_t piv = 0;
        while (piv < 3 && gzero(c[piv])) ++piv;
        for (std::size_t j = 0; j < 3; ++j) {
          if (j == piv) continue;
          std::vector<GQ> u(NZ);
          for (int i = 0; i < NZ; ++i) {
            if (piv == 3) u[i] = GQ{B[j][i], 0};
            else u[i] = gsub(gmul(GQ{B[j][i], 0}, c[piv]), gmul(GQ{B[piv][i], 0}, c[j]));
          }
          vecs.push_back(u);
        }
      }
      r.tangent_span = complex_rank(vecs) - 1;
    }
    dims.push_back(r.final_dim());
    if (k == 0) best = r;
    else if (r.final_dim() < best.final_dim()) best = r; // larger rank is the generic one
  }
  best.resample_dims = dims;
  best.degenerate = std::adjacent_find(dims.begin(), dims.end(), std::not_equal_to<>()) != dims.end();
  return best;
}

// ---- halves ----------------------------------------------------------------

std::string SignedHalf::str() const { return "S" + std::to_string(i) + (plus ? "+" : "-"); }

SignedHalf conjugate(const SignedHalf& h) { return {h.i, !h.plus}; }

HalfSum half_sum(std::vector<SignedHalf> v) {
  std::sort(v.begin(), v.end());
  return v;
}

HalfSum conjugate(const HalfSum& x) {
  HalfSum y;
  for (auto& h : x) y.push_back(conjugate(h));
  return half_sum(y);
}

HalfSum operator+(const HalfSum& a, const HalfSum& b) {
  HalfSum v = a;
  v.insert(v.end(), b.begin(), b.end());
  return half_sum(v);
}

HalfSum parse_half_sum(const std::string& s) {
  HalfSum v;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    if (tok == "+") continue;
    if (tok.size() < 3 || tok[0] != 'S' || (tok.back() != '+' && tok.back() != '-'))
      throw BranchError("bad half '" + tok + "'");
    SignedHalf h;
    std::string idx = tok.substr(1, tok.size() - 2);
    if (idx.find_first_not_of("0123456789") != std::string::npos || std::stoi(idx) < 1)
      throw BranchError("bad half index in '" + tok + "'");
    h.i = std::stoi(idx);
    h.plus = tok.back() == '+';
    v.push_back(h);
  }
  return half_sum(v);
}

std::string half_sum_str(const HalfSum& x) {
  std::vector<std::string> s;
  for (auto& h : x) s.push_back(h.str());
  return join(s, " + ");
}

std::vector<int> half_components(const SignedHalf& h, int k) {
  if (h.i < 1 || h.i > k) throw BranchError("half index out of range");
  // S_i^- = C1..Ci, cC(i+1)..cCk; S_i^+ is its conjugate
  std::vector<int> v;
  for (int j = 0; j < k; ++j) {
    bool first = j < h.i;
    bool unbarred = first != h.plus;
    v.push_back(unbarred ? j : j + k);
  }
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<int> coverage(const HalfSum& x, int k) {
  std::vector<int> c(2 * k, 0);
  for (auto& h : x)
    for (int j : half_components(h, k)) ++c[j];
  return c;
}

namespace {
template <class Pred>
std::vector<HalfSum> search4(int k, Pred ok) {
  std::vector<SignedHalf> all;
  for (int i = 1; i <= k; ++i) {
    all.push_back({i, false});
    all.push_back({i, true});
  }
  std::vector<HalfSum> out;
  std::size_t n = all.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c)
        for (std::size_t d = c; d < n; ++d) {
          HalfSum x = half_sum({all[a], all[b], all[c], all[d]});
          if (ok(x)) out.push_back(x);
        }
  std::sort(out.begin(), out.end());
  return out;
}
} // namespace

std::vector<HalfSum> half_cycle_search(int k) {
  if (k < 2 || k > 6) throw BranchError("k must lie in 2..6");
  return search4(k, [k](const HalfSum& x) {
    auto c = coverage(x, k);
    return std::all_of(c.begin(), c.end(), [](int v) { return v == 2; });
  });
}

std::vector<HalfSum> half_cycle_search(const CycleConfig& cfg) {
  int k = cfg.k();
  const SurfaceLattice& L = cfg.lattice();
  DivisorClass target = cfg.total() + cfg.total();
  return search4(k, [&](const HalfSum& x) {
    DivisorClass sum = L.zero();
    for (auto& h : x)
      for (int j : half_components(h, k)) sum = sum + cfg.component(j);
    return sum == target;
  });
}

bool conjugation_closed(const std::vector<HalfSum>& xs) {
  std::set<HalfSum> s(xs.begin(), xs.end());
  for (auto& x : xs)
    if (!s.count(conjugate(x))) return false;
  return true;
}

} // namespace acl
