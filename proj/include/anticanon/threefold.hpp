#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "anticanon/cycles.hpp"
#include "anticanon/picard.hpp"

namespace acl {

class ThreefoldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Classes on one sheet are sparse maps basis name -> coefficient.
using SheetClass = std::map<std::string, long>;
// Formal sums of threefold divisor generators.
using GlobalClass = std::map<std::string, long>;

GlobalClass operator+(GlobalClass a, const GlobalClass& b);
GlobalClass operator-(GlobalClass a, const GlobalClass& b);
GlobalClass operator*(long k, GlobalClass a);
GlobalClass gen(const std::string& name, long k = 1);
std::string global_str(const GlobalClass& g);


struct SheetLattice {
  enum Kind { Quadric, Ruled } kind = Quadric; // F0 with (h1,h2), or F_n with (sigma,f)
  std::vector<std::string> names;
  std::vector<std::vector<long>> gram;
  int blown_points = 0;

  void add(const std::string& name, long selfint);
  int index(const std::string& name) const;
  long pair(const SheetClass& a, const SheetClass& b) const;
  std::string str(const SheetClass& c) const;
  std::string model() const;
  // isomorphism class: F_n, or Bl_r P2 once a point is blown up on F0 or F1
  std::string normal_model() const;
};

std::string normalize_model(const std::string& m);

SheetClass parse_sheet_class(const std::string& s);

enum class GenKind { Fibre, Sheet, Half, Pullback };

struct PathMismatch {
  std::string a, b, c;
  std::vector<std::pair<std::string, long>> paths;
};

class ThreefoldModel {
 public:
  void add_generator(const std::string& name, GenKind kind);
  bool has(const std::string& name) const { return kind_.count(name) > 0; }
  GenKind kind(const std::string& name) const;
  const std::vector<std::string>& generators() const { return order_; }
  std::vector<std::string> sheets() const;

  SheetLattice& sheet(const std::string& s) { return sheets_.at(s); }
  const SheetLattice& sheet(const std::string& s) const { return sheets_.at(s); }
  void set(const std::string& g, const std::string& s, const SheetClass& c);
  SheetClass entry(const std::string& g, const std::string& s) const;
  SheetClass restrict(const GlobalClass& G, const std::string& s) const;

  // a pullback generator may be rewritten as rel (pulled back through later blowups)
  void set_relation(const std::string& g, const GlobalClass& rel);
  std::optional<GlobalClass> relation(const std::string& g) const;

  void set_fibre(const SurfaceLattice& L) { fibre_ = L; }
  void set_fibre_class(const std::string& g, const DivisorClass& d) { fibre_rest_[g] = d; }
  bool has_fibre() const { return fibre_.has_value(); }
  DivisorClass fibre_restrict(const GlobalClass& G) const;

  // generator-level triple product over every valid path
  long gen_triple(const std::string& a, const std::string& b, const std::string& c,
                  std::vector<PathMismatch>* mismatches = nullptr) const;
  long triple(const GlobalClass& a, const GlobalClass& b, const GlobalClass& c,
              std::vector<PathMismatch>* mismatches = nullptr) const;
  // every generator triple, reporting disagreements
  std::vector<PathMismatch> path_check() const;
  // generators whose triples all have an evaluation path (greedy, drops the worst first)
  std::vector<std::string> evaluable_generators() const;

  // blow up the curve X ∩ Y where X is a modelled sheet; returns the new sheet name
  void blowup_curve(const std::string& X, const std::string& Y, const std::string& Dname);
  // strict transforms: G -> G' + mult(G) D for the recorded blowups after `from`
  GlobalClass pullback(const GlobalClass& G, std::size_t from = 0) const;
  std::size_t blowup_count() const { return blowups_.size(); }

  struct Blowup {
    std::string X, Y, D;
    long x = 0, y = 0;
  };
  const std::vector<Blowup>& blowups() const { return blowups_; }

 private:
  std::vector<std::string> order_;
  std::map<std::string, GenKind> kind_;
  std::map<std::string, SheetLattice> sheets_;
  std::map<std::pair<std::string, std::string>, SheetClass> table_;
  std::optional<SurfaceLattice> fibre_;
  std::map<std::string, DivisorClass> fibre_rest_;
  std::vector<Blowup> blowups_;
  std::map<std::string, std::pair<GlobalClass, std::size_t>> relations_;
  mutable std::map<std::tuple<std::string, std::string, std::string>, long> cache_;
};

// Types I..IV as 1..4; k = type + 1.
struct DoubleSolid {
  int type = 1;
  int k = 2;
  std::vector<int> string;
  CycleConfig surface;
  ThreefoldModel model;

  std::string sheet_name(int c) const;           // 0-based cyclic index
  std::string half_name(int i, bool plus) const; // 1-based
  bool half_contains(int i, bool plus, int c) const;
  // sheet blown at the node between c and c+1
  int blown_sheet(int c) const;
  GlobalClass muF() const;
  GlobalClass fixed_stage1() const;
  // degree of G on the twistor line L_i (i < k, or no stage-2 divisors yet)
  long line_degree(const GlobalClass& G, int i) const;
};

std::string type_name(int type);
int parse_type(const std::string& s);
DoubleSolid build_double_solid(int type);
std::vector<BlowupEvent> double_solid_events(int type);
std::vector<int> double_solid_string(int type);

// Model of the blowup of Z along C1, C3 and conjugates for the string (-3,-1)x4.
ThreefoldModel string8_model();

struct Curve {
  std::string W, G;   // the curve W ∩ G, G a modelled sheet
  SheetClass cls;     // class on G
  long degree = 0;
  std::string name() const { return W + "∩" + G; }
};

std::vector<Curve> candidate_curves(const ThreefoldModel& m, const GlobalClass& L);
std::vector<Curve> base_curves(const ThreefoldModel& m, const GlobalClass& L);

struct Check {
  std::string id, expected, computed;
  bool pass = false;
};

struct StageReport {
  GlobalClass L;
  std::map<std::string, std::string> restrictions; // sheet -> class string
  std::vector<Curve> base;
  bool free = false;
};

// kind: point, ridge, plane, line, conic; same: point group or the half with the same line
struct ImageEntry {
  std::string divisor, kind, same;
  std::string str() const { return same.empty() ? kind : kind + " " + same; }
};

struct EliminationReport {
  int type = 1;
  StageReport stage1;
  std::optional<StageReport> stage2;
  std::vector<std::string> blowup_log;
  std::vector<ImageEntry> images;
  std::vector<Check> checks;
  std::vector<PathMismatch> mismatches;
  bool final_free = false;
};

// expected restrictions, base curves, sheet models and images for one type
struct TypeTable {
  int type = 1;
  std::vector<int> string;
  std::vector<std::string> fixed;
  std::vector<std::tuple<int, std::string, std::string>> restrictions; // stage, sheet, class
  std::vector<std::pair<int, std::vector<std::string>>> base;        // stage, curve names
  std::map<std::string, std::string> models;                           // sheet -> model
  std::vector<std::pair<std::string, std::string>> images;             // divisor -> kind
};

TypeTable parse_type_table(const std::string& text);
TypeTable load_type_table(int type);
std::string data_dir();

EliminationReport eliminate(int type, const TypeTable* expect = nullptr);
std::vector<ImageEntry> image_profile(const DoubleSolid& ds, const GlobalClass& L);
std::string elimination_text(const EliminationReport& r);

} // namespace acl
