#pragma once

#include "laurentia/gmodule.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace laurentia {

struct OrderError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Partial order on the labels, given by cover pairs (smaller, larger).
class OrderSpec {
 public:
  OrderSpec() = default;
  OrderSpec(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& covers);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[static_cast<size_t>(i)]; }
  int index(const std::string& label) const;
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }

  bool less(int a, int b) const { return lt_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  bool leq(int a, int b) const { return a == b || less(a, b); }
  std::set<int> below_eq(int p) const;
  std::set<int> below(int p) const;
  std::set<int> above_eq(int p) const;
  /// l(S): number of steps in a longest chain inside S.
  int length(const std::set<int>& s) const;
  int length() const;
  /// Linear extension; ties go to the earlier declared label.
  std::vector<int> linear_extension() const;
  /// The same order on the labels of another algebra (classes matched by name).
  OrderSpec restricted(const std::vector<std::string>& labels) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<bool>> lt_;
};

/// Pass/fail with a witness; a pass holds through `horizon`.
struct Verdict {
  bool pass = true;
  std::string witness;
  int horizon = kUnbounded;
  void fail(std::string w) {
    if (pass) witness = std::move(w);
    pass = false;
  }
};

/// Graded algebra B with a basis sorted by degree (End(Delta(pi))^op or eHe).
struct EndoAlgebra {
  int pi = 0;
  int complete = kUnbounded;
  std::vector<int> degrees;
  std::vector<std::optional<Vec>> table;  // dim x dim; nullopt above the horizon
  bool connected = true;
  std::string witness;

  int dim() const { return static_cast<int>(degrees.size()); }
  const std::optional<Vec>& product(int i, int j) const { return table[static_cast<size_t>(i * dim() + j)]; }
  std::vector<int> in_degree(int t) const;
  LaurentPoly dim_q() const;
};

struct ClassReport {
  Verdict verdict;
  std::vector<int> generator_degrees;  // polynomial class only
  std::vector<Vec> generators;         // over the basis of B
};

ClassReport class_membership(const EndoAlgebra& b, const std::string& cls);

/// Graded right module over an EndoAlgebra, given degreewise.
struct RightModule {
  int lo = 0, hi = -1;
  int complete = kUnbounded;
  std::vector<int> dims;
  std::function<std::optional<Vec>(int t, const Vec& v, int b)> act;
  int dim(int t) const { return t < lo || t > hi ? 0 : dims[static_cast<size_t>(t - lo)]; }
};

struct RankReport {
  LaurentPoly rank;
  std::vector<int> generator_degrees;
  Verdict free;
  Verdict fgen;
};

RankReport right_rank(const RightModule& m, const EndoAlgebra& b);

struct StandardData {
  int pi = 0;
  GradedModule P;
  Submodule K;
  Quotient to_delta;
  GradedModule delta;
  GradedModule bar_delta;
  bool bar_finite = false;
  EndoAlgebra B;
};

StandardData standard_module(const AlgebraPtr& a, int pi, const OrderSpec& order);
/// P(pi) / O^{<pi}(rad P(pi)); `finite` reports whether finiteness was certified.
GradedModule proper_standard(const AlgebraPtr& a, int pi, const OrderSpec& order, bool* finite = nullptr);
EndoAlgebra endo_algebra(const StandardData& d);

/// Algebra element (full basis vector) of the P(pi) vector v in degree t.
Vec algebra_element(const GradedAlgebra& a, int cls, int shift, int t, const Vec& v);

/// Standard data for every label, computed once and shared.
class Stratification {
 public:
  Stratification(AlgebraPtr a, OrderSpec order);
  const AlgebraPtr& algebra() const { return alg_; }
  const GradedAlgebra& alg() const { return *alg_; }
  const OrderSpec& order() const { return order_; }
  const StandardData& at(int pi) const { return data_[static_cast<size_t>(pi)]; }
  int size() const { return static_cast<int>(data_.size()); }

 private:
  AlgebraPtr alg_;
  OrderSpec order_;
  std::vector<StandardData> data_;
};

/// e_sigma Delta(pi) as a right B_pi-module.
RightModule hom_module(const Stratification& s, int sigma, int pi);
RankReport free_rank_check(const Stratification& s, int sigma, int pi);
/// All of Delta(pi) as a right B_pi-module.
RightModule delta_module(const Stratification& s, int pi);

struct DeltaFactor {
  int shift = 0;
  int pi = 0;
};

struct Filtration {
  bool ok = true;
  std::vector<DeltaFactor> factors;    // top first
  std::vector<LaurentPoly> multiplicity;  // (V : Delta(pi))_q per label
  int horizon = kUnbounded;
  int fail_pi = -1, fail_degree = 0;
  std::string witness;
};

Filtration delta_filtration(const GradedModule& v, const Stratification& s);

struct PiReport {
  LaurentPoly dim_delta, dim_bar_delta, dim_B;
  ClassReport cls;
  Verdict sc1, hwc, fgen, grothendieck;
  std::vector<LaurentPoly> rank;  // rank_q Hom(P(sigma), Delta(pi)) per sigma
  Filtration k_filtration;
};

struct StratReport {
  std::string cls;
  std::string verdict;
  bool pass = false;
  bool weak = false;
  int horizon = kUnbounded;
  std::vector<PiReport> per_pi;
  std::vector<std::vector<LaurentPoly>> decomposition;  // [Delta(pi) : L(sigma)]_q, row pi
  std::vector<std::vector<LaurentPoly>> p_delta;        // (P(pi) : Delta(sigma))_q, row pi
  std::vector<std::string> witnesses;
};

StratReport check_axioms(const Stratification& s, const std::string& cls);

struct BggReport {
  bool pass = true;
  std::vector<std::vector<LaurentPoly>> left;   // (P(pi) : Delta(sigma))_q
  std::vector<std::vector<LaurentPoly>> right;  // [nabla-bar(sigma) : L(pi)]_{q^-1} via the opposite algebra
  std::vector<std::vector<LaurentPoly>> right_tau;  // [Delta-bar(sigma) : L(pi)]_q, with an involution
  bool tau_checked = false;
  int horizon = kUnbounded;
  std::vector<std::string> witnesses;
};

BggReport bgg_check(const Stratification& s, const Involution* tau);

struct ChainLayer {
  std::string label;
  AlgebraPtr algebra;  // the quotient algebra in which J lives
  std::vector<Subspace> J;  // degreewise, in_degree coordinates
  int complete = kUnbounded;
  LaurentPoly dim_J, multiplicity;
  Verdict order, si1, si2, idempotent, cls, freeness;
  bool pass() const { return order.pass && si1.pass && si2.pass && idempotent.pass && cls.pass && freeness.pass; }
};

struct HeredityChain {
  std::vector<int> extension;
  std::vector<ChainLayer> layers;
  bool pass = true;
  std::string witness;
};

HeredityChain heredity_chain(const AlgebraPtr& a, const OrderSpec& order, const std::string& cls);

struct ProjectiveResolution {
  std::vector<GradedModule> terms;                 // P_0, P_1, ...
  std::vector<std::vector<Generator>> generators;  // generators of P_j (free summand order)
  std::vector<std::vector<Vec>> images;            // d(generator) in P_{j-1} (or V for j = 0)
  std::vector<int> exact_to;                       // generator lists of P_j complete through this degree
  int length = -1;                                 // projective dimension when the resolution stopped
  int horizon = kUnbounded;
};

ProjectiveResolution resolve(const GradedModule& v, int steps);

struct ExtResult {
  LaurentPoly dims;
  int exact_from = -kUnbounded;  // degrees below this are not certified
};

ExtResult ext_from_resolution(const ProjectiveResolution& r, const GradedModule& w, int i);
ExtResult ext_against_finite(const GradedModule& v, const GradedModule& w, int i);

struct ResolutionReport {
  bool pass = true;
  std::vector<int> pd;          // -1 when not reached within the horizon
  std::vector<int> pd_bound;    // l(Pi_{>= pi})
  std::vector<Verdict> koszul;  // per pi (pass when not applicable)
  Verdict ext_vanishing;
  int gldim_bound = 0;
  std::vector<std::string> witnesses;
};

ResolutionReport resolution_checks(const Stratification& s, const std::string& cls);

struct CellLayer {
  std::string label;
  LaurentPoly dim_V, dim_B, rank_left, rank_right, dim_J;
  Verdict reconcile, tau_invariant;
};

struct CellReport {
  bool pass = true;
  std::vector<CellLayer> layers;
  std::string witness;
};

struct CellError : std::runtime_error {
  CellError(std::string kind, const std::string& what) : std::runtime_error(kind + ": " + what), kind(std::move(kind)) {}
  std::string kind;
};

/// Throws CellError("CharacteristicTwo" | "NotBalanced" | "ChainFailed").
CellReport cellularize(const HeredityChain& chain, const OrderSpec& order, const Involution& tau);

}  // namespace laurentia
