#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anticanon/picard.hpp"
#include "anticanon/poly.hpp"

namespace acl {

class CycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Polynomial in two local coordinates (s, t).
struct BiPoly {
  std::map<std::pair<int, int>, Scalar> t;

  static BiPoly constant(const Scalar& c);
  static BiPoly s() ;
  static BiPoly tt();
  BiPoly& operator+=(const BiPoly& o);
  friend BiPoly operator+(BiPoly x, const BiPoly& y) { return x += y; }
  friend BiPoly operator*(const BiPoly& x, const BiPoly& y);
  // keep only terms with s-degree < n
  BiPoly truncated(int n) const;
  // f(u(s,t), v(s,t))
  BiPoly compose(const BiPoly& u, const BiPoly& v) const;
};

// Local frame at a point: (sigma, tau) -> (x, y) in the affine chart of F0.
struct Frame {
  BiPoly x, y;
  Frame compose(const BiPoly& u, const BiPoly& v) const { return {x.compose(u, v), y.compose(u, v)}; }
};

struct BlowupEvent {
  enum Kind { Node, Smooth } kind = Smooth;
  int index = 1;                 // 1-based edge (node) or component (smooth)
  std::optional<Scalar> param;   // smooth point parameter; sampled when absent

  std::string str() const;
};

// Geometry of a component, used to replay the blowups in the oracle.
struct Origin {
  enum Kind { Vertical, Horizontal, Exceptional } kind = Vertical;
  Scalar value;       // x = value or y = value for base lines
  std::size_t label = 0; // basis index of the exceptional class
  Frame center;       // frame at the blown point that produced it
};

// Edge frame: sigma = 0 is the earlier component, tau = 0 the later one.
struct EdgeGeom {
  Frame frame;
};

// One blown-up point as seen by the oracle.
struct ClusterPoint {
  std::size_t label = 0;   // basis index of its exceptional class
  int event = 0;           // 0-based event number
  bool smooth = false;
  std::size_t on_label = 0; // smooth: exceptional label of the carrier, 0 for base lines
  Origin carrier;           // smooth: carrier component
  Frame frame;              // node: local frame; smooth: filled at sampling time
  std::vector<std::size_t> proximate; // labels of earlier exceptional curves through it
  std::optional<Scalar> param;
};

class CycleConfig {
 public:
  CycleConfig(); // the four lines x=0, y=0, x=1, y=1

  int m() const { return static_cast<int>(comps_.size()); }
  int k() const { return m() / 2; }
  const SurfaceLattice& lattice() const { return L_; }
  const std::vector<DivisorClass>& components() const { return comps_; }
  const DivisorClass& component(int i) const { return comps_.at(i); } // 0-based
  std::vector<int> string() const;
  const std::vector<BlowupEvent>& history() const { return history_; }
  const std::vector<ClusterPoint>& cluster() const { return cluster_; }
  const std::vector<Origin>& origins() const { return origin_; }
  // exceptional classes of smooth-point blowups
  std::vector<DivisorClass> smooth_exceptionals() const;
  // negative cycle components followed by smooth exceptional curves
  std::vector<DivisorClass> default_catalog() const;
  DivisorClass total() const; // sum of the components

  CycleConfig apply(const BlowupEvent& ev) const;
  // reorder so that the string reads exactly as target; nullopt if impossible
  std::optional<CycleConfig> aligned(const std::vector<int>& target) const;
  // apply a dihedral relabelling: component i' = comp[(sign*i + shift) mod m]
  CycleConfig relabelled(int shift, bool reflect) const;

  // "C1".."Ck", "cC1".."cCk"
  std::string component_name(int i) const;

 private:
  SurfaceLattice L_;
  std::vector<DivisorClass> comps_;
  std::vector<Origin> origin_;
  std::vector<EdgeGeom> edges_; // edge i joins i and i+1
  std::vector<BlowupEvent> history_;
  std::vector<ClusterPoint> cluster_;
};

std::vector<int> canonical_string(const std::vector<int>& s);
std::vector<int> canonical_string(const CycleConfig& c);
std::string string_str(const std::vector<int>& s);
std::vector<int> parse_string(const std::string& s);

struct DegreeProfile {
  std::vector<long> degrees;
  bool topologically_trivial = false;
};
DegreeProfile degree_profile(const DivisorClass& D, const CycleConfig& c);

CycleConfig apply_events(const std::vector<BlowupEvent>& evs);

struct EnumeratedScenario {
  std::vector<int> string;
  std::vector<BlowupEvent> events; // one representative
  int node_pairs = 0;
  int h0_anticanonical = -1;
  bool moishezon_obstructed = false;
};

// all configurations reached by four conjugate pairs of blowups, up to symmetry
std::vector<EnumeratedScenario> enumerate_scenarios();

} // namespace acl
