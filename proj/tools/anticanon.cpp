#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "anticanon/branch.hpp"
#include "anticanon/cycles.hpp"
#include "anticanon/linsys.hpp"
#include "anticanon/moduli.hpp"
#include "anticanon/report.hpp"
#include "anticanon/threefold.hpp"

using namespace acl;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t seed_from_env() {
  const char* s = std::getenv("ANTICANON_SEED");
  if (!s || !*s) return 0;
  std::string v(s);
  if (v.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("ANTICANON_SEED must be a non-negative integer, got '" + v + "'");
  return std::stoull(v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_enumerate(std::uint64_t seed) {
  std::cout << "seed: " << seed << "\n";
  auto all = enumerate_scenarios();
  for (auto& e : all) {
    std::cout << string_str(e.string) << "  m=" << e.string.size() << " node-pairs=" << e.node_pairs
              << " h0(-K)=" << e.h0_anticanonical;
    if (e.h0_anticanonical >= 3) std::cout << " [excluded: h0(-K)>2]";
    if (e.moishezon_obstructed) std::cout << " [-K trivial on C]";
    std::cout << "  events:";
    for (auto& ev : e.events) std::cout << " {" << ev.str() << "}";
    std::cout << "\n";
  }
  std::cout << all.size() << " strings\n";
  return 0;
}

int cmd_surface(const std::string& file, const std::string& cls, std::uint64_t seed) {
  Scenario sc = load_scenario(file);
  CycleConfig c = sc.config();
  const auto& L = c.lattice();
  DivisorClass D;
  try {
    D = parse_class(cls, L);
  } catch (const std::exception& e) {
    throw InputError(std::string("bad class: ") + e.what());
  }
  Sampler smp(seed);
  auto catalog = sc.catalog_classes();
  auto r = analyze(c, D, smp, catalog);
  std::cout << "seed: " << seed << "\n";
  if (!sc.name.empty()) std::cout << "scenario: " << sc.name << "\n";
  std::cout << "string: " << string_str(c.string()) << "\n";
  std::cout << "D = " << class_str(r.D, L) << "\n";
  std::cout << "fixed B = " << class_str(r.B, L) << "\n";
  std::cout << "movable M = " << class_str(r.M, L) << ", M^2 = " << r.Msq
            << ", genus " << genus(r.M, L) << "\n";
  std::cout << "h0 = " << r.h0 << " via " << route_name(r.route) << "\n";
  std::cout << "oracle:";
  for (int v : r.oracle.values) std::cout << " " << v;
  std::cout << (r.oracle.agree ? "" : " (samples disagree)") << "\n";
  if (r.toric) std::cout << "toric: " << *r.toric << "\n";
  std::cout << "map: " << map_kind_name(r.map);
  if (r.target_dim >= 0) std::cout << " into P^" << r.target_dim;
  std::cout << "\n";
  for (auto& t : r.trace) std::cout << "  " << t << "\n";
  for (auto& n : r.notes) std::cout << "note: " << n << "\n";
  bool ok = r.route == Route::Oracle || std::all_of(r.oracle.values.begin(), r.oracle.values.end(),
                                                    [&](int v) { return v == r.h0; });
  return ok ? 0 : 1;
}

int cmd_threefold(const std::string& type) {
  int t = parse_type(type);
  TypeTable tb = load_type_table(t);
  auto r = eliminate(t, &tb);
  std::cout << elimination_text(r);
  for (auto& c : r.checks)
    if (!c.pass) return 1;
  return 0;
}

int cmd_branch(const std::string& type, const std::string& qfile, bool quadrics, std::uint64_t seed) {
  int t = parse_type(type);
  QuarticFixture fx;
  if (qfile.empty()) {
    fx = load_quartic_fixture(t);
  } else {
    try {
      fx = parse_quartic_fixture(read_file(qfile));
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      throw InputError(qfile + ": " + e.what());
    }
    if (fx.type != t) throw InputError(qfile + " declares type " + type_name(fx.type));
  }
  try {
    validate_parameters(t, fx.params);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  auto m = validate_quartic(t, fx.Q, fx.f, fx.params);
  std::cout << quartic_json(m) << "\n";
  int rc = m.ok() ? 0 : 1;
  if (quadrics) {
    Sampler smp(seed);
    auto r = constraint_report(t, smp, 2);
    nlohmann::json j;
    nlohmann::json st = nlohmann::json::array();
    for (auto& s : r.stages)
      st.push_back({{"label", s.label}, {"nominal", s.conditions}, {"rank", s.rank}, {"dim", s.dim}});
    j["seed"] = seed;
    j["stages"] = st;
    j["containing_dim"] = r.containing_dim;
    j["certified"] = r.certified;
    j["certificate"] = r.certified ? r.certificate.str() : "";
    j["tangent_span"] = r.tangent_span;
    j["resample_dims"] = r.resample_dims;
    j["degenerate"] = r.degenerate;
    std::cout << j.dump(2) << "\n";
  }
  return rc;
}

int cmd_moduli() {
  auto rows = moduli_table();
  std::cout << moduli_table_md(rows);
  for (auto& r : rows)
    if (r.expected != r.computed) return 1;
  return 0;
}

int cmd_paper_check(bool json, bool md, const std::string& filter, std::uint64_t seed) {
  auto r = paper_check(filter, seed);
  if (json) std::cout << report_json(r) << "\n";
  else if (md) std::cout << report_md(r);
  else std::cout << report_text(r);
  for (auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  return r.failed() ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"anticanon: anticanonical systems on twistor spaces of 4CP^2"};
  app.require_subcommand(1);

  auto* en = app.add_subcommand("enumerate", "cycle strings reachable by four conjugate pairs of blowups");

  std::string file, cls = "-2K";
  auto* su = app.add_subcommand("surface", "linear system report on a scenario surface");
  su->add_option("file", file, "scenario file (.acs)")->required();
  su->add_option("--class", cls, "divisor class, default -2K");

  std::string type, qfile;
  bool quadrics = false;
  auto* th = app.add_subcommand("threefold", "elimination report for a double solid type");
  th->add_option("type", type, "I, II, III or IV")->required();

  auto* br = app.add_subcommand("branch", "quartic validation for a double solid type");
  br->add_option("type", type, "I, II, III or IV")->required();
  br->add_option("--q", qfile, "polynomial file (.poly); default is the shipped fixture");
  br->add_flag("--quadrics", quadrics, "also count quadrics through the double curves");

  auto* mo = app.add_subcommand("moduli", "moduli dimension table");

  bool json = false, md = false;
  std::string filter;
  auto* pc = app.add_subcommand("paper-check", "run every golden check");
  auto* jf = pc->add_flag("--json", json, "JSON report");
  pc->add_flag("--md", md, "markdown report")->excludes(jf);
  pc->add_option("--filter", filter, "substring of check ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::uint64_t seed = seed_from_env();
    if (*en) return cmd_enumerate(seed);
    if (*su) return cmd_surface(file, cls, seed);
    if (*th) return cmd_threefold(type);
    if (*br) return cmd_branch(type, qfile, quadrics, seed);
    if (*mo) return cmd_moduli();
    if (*pc) return cmd_paper_check(json, md, filter, seed);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LatticeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CycleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ThreefoldError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BranchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
