#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "anticanon/cycles.hpp"

namespace acl {

class ModuliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ModuliKind { Birational, DoubleSolid, ConicBundle, CampanaKreussler };
const char* moduli_kind_name(ModuliKind k);

struct ModuliCase {
  std::string label;
  int k = 0;
  ModuliKind kind = ModuliKind::Birational;
  int p = 0;                         // moving smooth conjugate pairs
  std::set<std::string> directions;  // torus directions the moving points use up
  int h0K = 1;                       // h^0(-K) of the member surface
  std::optional<int> pinned_V;       // dim V stated without a count
};

int chi_theta_Z(int n);
int chi_theta_S(int Ksq);

struct DiagramDims {
  int h1_theta_Z = 13;
  int h1_theta_ZS = 0;      // h^1(Θ_{Z,S})
  int h1_theta_Z_minus_S = 0; // h^1(Θ_Z(-S))
};
DiagramDims diagram_dims(int h1_theta_Z = 13, int h0K = 1, int h1K = 0, int h1_theta_S = 10);

void validate_case(const ModuliCase& c);
int dim_V(const ModuliCase& c);
int moduli_dim(const ModuliCase& c);

// p and the direction set read off the smooth blowups of a configuration:
// points on x = const use ruling-1, on y = const ruling-2, on an exceptional
// curve the direction of that curve
ModuliCase moduli_case(const std::string& label, ModuliKind kind, const CycleConfig& c);

struct ModuliRow {
  ModuliCase c;
  std::string string;  // canonical self-intersection string
  std::string group;   // identity component of Aut, "" if trivial
  int expected = 0;    // reference value
  int computed = 0;
};
std::vector<ModuliRow> moduli_table();
std::string moduli_table_md(const std::vector<ModuliRow>& rows);

} // namespace acl
