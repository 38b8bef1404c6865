#include "anticanon/moduli.hpp"

#include <map>
#include <sstream>

namespace acl {

const char* moduli_kind_name(ModuliKind k) {
  switch (k) {
    case ModuliKind::Birational: return "birational";
    case ModuliKind::DoubleSolid: return "double-solid";
    case ModuliKind::ConicBundle: return "conic-bundle";
    case ModuliKind::CampanaKreussler: return "campana-kreussler";
  }
  return "?";
}

int chi_theta_Z(int n) {
  if (n < 0) throw ModuliError("n must be nonnegative");
  return 15 - 7 * n;
}

// χ(Θ) = (7c1² - 5c2)/6 with c1² = K², c2 = 12 - K²
int chi_theta_S(int Ksq) { return (7 * Ksq - 5 * (12 - Ksq)) / 6; }

DiagramDims diagram_dims(int h1_theta_Z, int h0K, int h1K, int h1_theta_S) {
  DiagramDims d;
  d.h1_theta_Z = h1_theta_Z;
  d.h1_theta_ZS = h1_theta_Z + h0K - h1K;
  d.h1_theta_Z_minus_S = d.h1_theta_ZS - h1_theta_S;
  return d;
}

void validate_case(const ModuliCase& c) {
  if (c.p < 0 || c.p > 4) throw ModuliError("p must lie in 0..4");
  if (c.directions.size() > 2) throw ModuliError("at most two torus directions");
  if (static_cast<int>(c.directions.size()) > c.p && !c.pinned_V)
    throw ModuliError("more directions than moving pairs");
  bool ok = false;
  switch (c.kind) {
    case ModuliKind::Birational: ok = c.k >= 4 && c.k <= 6; break;
    case ModuliKind::DoubleSolid: ok = c.k >= 2 && c.k <= 5; break;
    case ModuliKind::ConicBundle: ok = c.k == 4; break;
    case ModuliKind::CampanaKreussler: ok = c.pinned_V.has_value() && c.h0K == 2; break;
  }
  if (!ok)
    throw ModuliError(std::string("no table entry for ") + moduli_kind_name(c.kind) +
                      " with k=" + std::to_string(c.k));
  if (c.kind != ModuliKind::CampanaKreussler && c.h0K != 1)
    throw ModuliError("h0(-K) must be 1 outside the Campana-Kreussler case");
}

int dim_V(const ModuliCase& c) {
  validate_case(c);
  if (c.pinned_V) return *c.pinned_V;
  return 2 * c.p - static_cast<int>(c.directions.size());
}

int moduli_dim(const ModuliCase& c) {
  // real pencil |F| spans h0(-K) of the 4 + dim V
  return dim_V(c) + 4 - c.h0K;
}

ModuliCase moduli_case(const std::string& label, ModuliKind kind, const CycleConfig& cfg) {
  ModuliCase c;
  c.label = label;
  c.kind = kind;
  c.k = cfg.k();
  int smooth = 0;
  for (auto& pt : cfg.cluster()) {
    if (!pt.smooth) continue;
    ++smooth;
    switch (pt.carrier.kind) {
      case Origin::Vertical: c.directions.insert("ruling-1"); break;
      case Origin::Horizontal: c.directions.insert("ruling-2"); break;
      case Origin::Exceptional:
        c.directions.insert("exceptional-" + std::to_string((pt.on_label - 2) / 2 + 1));
        break;
    }
  }
  c.p = smooth / 2;
  return c;
}

namespace {
BlowupEvent N(int i) { BlowupEvent e; e.kind = BlowupEvent::Node; e.index = i; return e; }
BlowupEvent Sm(int i) { BlowupEvent e; e.kind = BlowupEvent::Smooth; e.index = i; return e; }
} // namespace

std::vector<ModuliRow> moduli_table() {
  struct Spec {
    const char* label;
    ModuliKind kind;
    std::vector<BlowupEvent> ev;
    const char* group;
    int expected;
  };
  const std::vector<Spec> specs = {
      {"k=6 birational", ModuliKind::Birational, {N(1), N(1), N(1), N(2)}, "C*xC*", 3},
      {"k=5 birational", ModuliKind::Birational, {N(1), N(1), N(1), Sm(3)}, "C*", 4},
      {"k=5 double solid (IV)", ModuliKind::DoubleSolid, {N(4), N(6), N(8), Sm(2)}, "C*", 4},
      {"k=4 birational", ModuliKind::Birational, {N(1), N(1), Sm(1), Sm(3)}, "", 5},
      {"k=4 double solid (III)", ModuliKind::DoubleSolid, {Sm(1), N(4), N(6), Sm(2)}, "", 5},
      {"k=4 conic bundle", ModuliKind::ConicBundle, {N(1), N(1), Sm(2), Sm(2)}, "C*", 6},
      {"k=3 double solid (II)", ModuliKind::DoubleSolid, {Sm(1), Sm(1), N(4), Sm(2)}, "", 7},
      {"k=2 double solid (I)", ModuliKind::DoubleSolid, {Sm(1), Sm(1), Sm(1), Sm(2)}, "", 9},
  };
  std::vector<ModuliRow> rows;
  for (auto& s : specs) {
    CycleConfig cfg = apply_events(s.ev);
    ModuliRow r;
    r.c = moduli_case(s.label, s.kind, cfg);
    r.string = string_str(canonical_string(cfg));
    r.group = s.group;
    r.expected = s.expected;
    r.computed = moduli_dim(r.c);
    rows.push_back(r);
  }
  ModuliRow ck;
  ck.c.label = "Campana-Kreussler";
  ck.c.kind = ModuliKind::CampanaKreussler;
  ck.c.h0K = 2;
  ck.c.pinned_V = 7;
  ck.expected = 9;
  ck.computed = moduli_dim(ck.c);
  rows.push_back(ck);
  return rows;
}

std::string moduli_table_md(const std::vector<ModuliRow>& rows) {
  std::map<int, std::map<ModuliKind, std::string>> cell;
  std::ostringstream os;
  for (auto& r : rows) {
    if (r.c.kind == ModuliKind::CampanaKreussler) continue;
    std::string v = std::to_string(r.computed) + "-dim.";
    if (!r.group.empty()) v += " (" + r.group + ")";
    cell[r.c.k][r.c.kind] = v;
  }
  os << "|       | birational type | double solid type | conic bundle type |\n";
  os << "|-------|-----------------|-------------------|-------------------|\n";
  for (int k = 6; k >= 2; --k) {
    auto get = [&](ModuliKind kd) {
      auto it = cell[k].find(kd);
      return it == cell[k].end() ? std::string("-") : it->second;
    };
    os << "| k=" << k << "   | " << get(ModuliKind::Birational) << " | " << get(ModuliKind::DoubleSolid)
       << " | " << get(ModuliKind::ConicBundle) << " |\n";
  }
  os << "\n";
  for (auto& r : rows) {
    os << "- " << r.c.label;
    if (!r.string.empty()) os << " " << r.string;
    os << ": dim V = " << dim_V(r.c);
    if (r.c.pinned_V) os << " (pinned)";
    else os << " = 2*" << r.c.p << " - " << r.c.directions.size();
    os << ", moduli " << r.computed << "\n";
  }
  return os.str();
}

} // namespace acl
