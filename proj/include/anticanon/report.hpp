#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anticanon/cycles.hpp"
#include "anticanon/poly.hpp"

namespace acl {

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(int line, const std::string& token, const std::string& what);
  int line;
  std::string token;
};

struct Scenario {
  std::string name;
  std::string base = "quadric-cycle";
  std::vector<BlowupEvent> events;
  bool default_catalog = false;
  std::vector<std::pair<std::string, std::string>> catalog; // name, class expression
  std::optional<int> type;
  std::map<int, Scalar> params;

  CycleConfig config() const;
  // named catalog, or the default one when requested or empty
  std::vector<DivisorClass> catalog_classes() const;
  std::vector<std::string> catalog_names() const;
};

// line grammar, directives in this order:
//   name <word> / base quadric-cycle / pair node <edge> /
//   pair smooth <component> [t=<rational>] / catalog default /
//   catalog <name> = <class> / type <I..IV> / params a=<q> ...
Scenario parse_scenario(const std::string& text);
std::string serialize_scenario(const Scenario& s);
// comments and blank lines dropped, whitespace collapsed, rationals reduced
std::string normalize_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path);

// surfaces with a known h0(2K^-1), aligned to their strings
struct ReferenceSurface {
  std::string name;   // short handle used by check ids
  std::string anchor;
  std::vector<BlowupEvent> events;
  std::vector<int> string;
  int h0_2K = 0;
};
const std::vector<ReferenceSurface>& reference_surfaces();
CycleConfig surface_config(const ReferenceSurface& p);

struct CheckEntry {
  std::string id, anchor, expected, computed;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckEntry> entries;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
  int passed() const;
  int failed() const;
};

CheckReport paper_check(const std::string& filter, std::uint64_t seed);
std::string report_json(const CheckReport& r);
std::string report_md(const CheckReport& r);
std::string report_text(const CheckReport& r);

} // namespace acl
