#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anticanon/cycles.hpp"
#include "anticanon/poly.hpp"
#include "anticanon/threefold.hpp"

namespace acl {

class BranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A failed quartic check; `check` is the check id, `residue` the offending polynomial.
class QuarticCheckFailed : public BranchError {
 public:
  QuarticCheckFailed(std::string check, std::string residue);
  std::string check, residue;
};

// ridge l = {z0 = z1 = z2 = 0}
LinearIdeal ridge_ideal();

// A point (λ0, λ1, λ2) of the conic Λ and the plane of Y over it.
struct LambdaPlacement {
  std::array<Poly, 3> lambda;
  LinearIdeal plane;
  std::string str() const;
  bool on_conic() const;
};

std::vector<LambdaPlacement> lambda_placements(int type);
LambdaPlacement lambda_placement(const Poly& l0, const Poly& l1, const Poly& l2);

// linear factors f_1..f_4 of the quartic; `f` is the free factor of type I
std::vector<Poly> quartic_factors(int type, const Poly& f = Poly());
// carriers of the double quartic curves (types I-III)
std::vector<Poly> double_quartic_hyperplanes(int type, const Poly& f = Poly());

// multiplicity of each placement as a zero of the (z0, z1)-part of the
// product of factors, pulled back to Λ by z0 = st, z1 = s^2, z2 = t^2
std::vector<int> conic_zero_profile(int type, const std::map<int, Scalar>& params);

struct DoubleCurve {
  enum Kind { Conic, SplittingConic, Quartic } kind = Conic;
  std::string name;    // "C1".."C5"
  std::string carrier; // plane λ or hyperplane
};
const char* double_curve_kind(DoubleCurve::Kind k);

struct IncidenceTable {
  int type = 1;
  std::vector<DoubleCurve> curves;
  std::vector<std::vector<int>> count; // pairwise intersection numbers, 0 on the diagonal
  int total = 0;
};

IncidenceTable incidence_table(int type);
int incidence_closed_form(int conics, int quartics);

void validate_parameters(int type, const std::map<int, Scalar>& params);

struct QuarticModel {
  int type = 1;
  std::map<int, Scalar> params;
  std::vector<Poly> factors;
  Poly f, Q, F;
  std::vector<LambdaPlacement> planes;
  std::vector<Poly> hyperplanes;
  std::vector<Check> checks;
  bool ok() const;
};

// runs checks (a)-(d) and records them; never throws on a failed check
QuarticModel validate_quartic(int type, const Poly& Q, const Poly& f,
                              const std::map<int, Scalar>& params);
// as above, throwing QuarticCheckFailed at the first failed check
QuarticModel assemble_quartic(int type, const Poly& Q, const Poly& f,
                              const std::map<int, Scalar>& params);

// type header plus polynomial grammar:
//   type II / params a=3/2 / f <poly> / Q <poly>
struct QuarticFixture {
  int type = 1;
  std::map<int, Scalar> params;
  Poly f, Q;
};
QuarticFixture parse_quartic_fixture(const std::string& text);
std::string quartic_fixture_text(const QuarticFixture& q);
QuarticFixture load_quartic_fixture(int type);
std::string quartic_json(const QuarticModel& m);

// ---- constraint counting on quadrics of P^4 -------------------------------

// Gaussian rational
struct GQ {
  Scalar re, im;
};

struct QuadricCondition {
  enum Kind { Span, Point, Tangent } kind = Span;
  std::string label;
  // Span: the restriction to the linear space `where` lies in the span of `gens`
  LinearIdeal where;
  std::vector<Poly> gens;
  // Point: vanishing at a rational point
  std::vector<Scalar> point;
  // Tangent: gradient at the complex point q proportional to `form`
  std::vector<GQ> q, form;
};

// rows of the real linear system on the 15 coefficients of a quadric
std::vector<std::vector<Scalar>> condition_rows(const QuadricCondition& c);
int quadric_constraint_rank(const std::vector<QuadricCondition>& cs);
// 14 minus the rank: projective dimension of the family
int quadric_constraint_dim(const std::vector<QuadricCondition>& cs);
std::vector<Poly> quadric_solutions(const std::vector<QuadricCondition>& cs);

// quadric monomials z_i z_j, i <= j
const std::vector<Poly>& quadric_monomials();
Poly quadric_from_vector(const std::vector<Scalar>& v);

struct ConstraintStage {
  std::string label;
  int conditions = 0; // nominal count
  int rank = 0;
  int dim = 0;
};

struct ConstraintInstance {
  int type = 1;
  QuarticModel quartic;
  std::vector<std::pair<std::string, std::vector<QuadricCondition>>> groups;
};

struct ConstraintReport {
  int type = 1;
  std::vector<ConstraintStage> stages; // cumulative
  int tangent_span = -1;   // dimension of the span of the conic tangents at q (types III, IV)
  bool contains_all = false; // every member of the family contains every double curve
  int containing_dim = -1;   // members containing every double curve (Y among them)
  bool certified = false;    // a member other than Y contains every double curve
  Poly certificate;
  int curves = 0;
  bool degenerate = false;  // resample disagreed
  std::vector<int> resample_dims;
  int final_dim() const { return stages.empty() ? -1 : stages.back().dim; }
};

ConstraintInstance synthesize_instance(int type, Sampler& s);
ConstraintReport constraint_report(int type, Sampler& s, int samples = 2);
// Q' contains every double curve of the instance
bool contains_double_curves(const QuarticModel& m, const Poly& Qp);

// ---- reducible members of |2F| --------------------------------------------

struct SignedHalf {
  int i = 1;        // 1..k
  bool plus = false;
  std::string str() const;
  friend bool operator<(const SignedHalf& a, const SignedHalf& b) {
    return a.i != b.i ? a.i < b.i : a.plus < b.plus;
  }
  friend bool operator==(const SignedHalf& a, const SignedHalf& b) {
    return a.i == b.i && a.plus == b.plus;
  }
};
using HalfSum = std::vector<SignedHalf>; // sorted multiset

SignedHalf conjugate(const SignedHalf& h);
HalfSum conjugate(const HalfSum& x);
HalfSum half_sum(std::vector<SignedHalf> v);
HalfSum parse_half_sum(const std::string& s); // "S1+ + S2+ + S3- + S6-"
std::string half_sum_str(const HalfSum& x);
HalfSum operator+(const HalfSum& a, const HalfSum& b);

// components (0-based, C1..Ck then cC1..cCk) of a half
std::vector<int> half_components(const SignedHalf& h, int k);
// number of times each component is covered
std::vector<int> coverage(const HalfSum& x, int k);

// every 4-multiset covering each component exactly twice
std::vector<HalfSum> half_cycle_search(int k);
// every 4-multiset whose restriction is linearly equivalent to twice the cycle
std::vector<HalfSum> half_cycle_search(const CycleConfig& c);
bool conjugation_closed(const std::vector<HalfSum>& xs);

} // namespace acl
