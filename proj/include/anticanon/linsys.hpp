#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "anticanon/cycles.hpp"
#include "anticanon/picard.hpp"
#include "anticanon/poly.hpp"

namespace acl {

class LinSysError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StripResult {
  DivisorClass fixed;           // B
  DivisorClass movable;         // M
  std::vector<long> multiplicity; // per catalog entry
  std::vector<std::string> trace;
};

StripResult strip(const DivisorClass& D, const std::vector<DivisorClass>& catalog,
                  const std::vector<std::string>& names = {});
StripResult strip(const DivisorClass& D, const SurfaceLattice& L);

// A blown-up point with concrete coordinates.
struct ResolvedPoint {
  Frame frame;
  std::vector<std::size_t> proximate; // positions of earlier points in the list
};

// (p+1)(q+1) minus the rank of the multiplicity conditions
int oracle_h0(int p, int q, const std::vector<ResolvedPoint>& pts, const std::vector<long>& mults);

// resolve the symbolic smooth parameters of a configuration
std::vector<ResolvedPoint> resolve_cluster(const CycleConfig& c, Sampler& s);
// one sample on the configuration, D expressed in its lattice
int oracle_h0(const CycleConfig& c, const DivisorClass& D, Sampler& s);

struct OracleSamples {
  std::vector<int> values;
  int value = 0;       // the minimum, i.e. the generic value
  bool agree = true;
};
OracleSamples oracle_h0_samples(const CycleConfig& c, const DivisorClass& D, Sampler& s, int n = 3);
int oracle_h0_generic(const CycleConfig& c, const DivisorClass& D, Sampler& s);

// Fan rays of the smooth toric surface with the given self-intersection string.
std::vector<std::array<long, 2>> fan_from_string(const std::vector<int>& s);
// lattice points of {u : <u, v_i> >= -a_i}
long toric_h0(const std::vector<std::array<long, 2>>& rays, const std::vector<long>& a);

enum class Route { NefChi, Pencil, Oracle };
const char* route_name(Route r);

enum class MapKind { ComposedWithPencil, DegreeTwoOntoPlane, Birational, Outside };
const char* map_kind_name(MapKind k);

struct LinSysReport {
  DivisorClass D, B, M;
  long Msq = 0;
  int h0 = 0;
  Route route = Route::Oracle;
  OracleSamples oracle;
  std::optional<long> toric;   // toric count when the surface is toric
  MapKind map = MapKind::Outside;
  int target_dim = -1;
  std::vector<std::string> trace;
  std::vector<std::string> notes;
};

// multiple of a class with square zero: M = mult * P, P primitive
std::optional<std::pair<long, DivisorClass>> pencil_decomposition(const DivisorClass& M);

LinSysReport analyze(const CycleConfig& c, const DivisorClass& D, Sampler& s,
                     std::optional<std::vector<DivisorClass>> catalog = std::nullopt);
MapKind classify_map(LinSysReport& r);

// D = -K + sign (e_i - ce_i)
struct SpecialClassResult {
  DivisorClass D, fixed;
  int h0 = 0;
  bool admissible = true;
};
SpecialClassResult special_class_h0(const CycleConfig& c, int i, int sign, bool admissible, Sampler& s);

bool is_toric(const CycleConfig& c);
// a with D = sum a_i C_i and a_0 = a_1 = 0 (toric surfaces only)
std::vector<long> toric_coefficients(const CycleConfig& c, const DivisorClass& D);
std::vector<std::string> catalog_names(const CycleConfig& c, const std::vector<DivisorClass>& catalog);

} // namespace acl
