#pragma once

#include "laurentia/galgebra.hpp"

#include <optional>
#include <set>
#include <vector>

namespace laurentia {

struct HorizonTooLow : std::runtime_error {
  explicit HorizonTooLow(int needed)
      : std::runtime_error("HorizonTooLow: degree " + std::to_string(needed) + " is beyond the computed window"),
        needed_degree(needed) {}
  int needed_degree;
};

struct NotASubmodule : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfiniteDimensional : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One summand q^shift P(cls) of a free module.
struct FreeSummand {
  int cls = 0;
  int shift = 0;
  Index index = 0;  // position of the generator inside M_shift
};

/// Graded left module with Peirce-homogeneous bases. Degrees lo..hi are stored
/// and exact; degrees above complete_to are unknown (kUnbounded: zero above hi).
class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(AlgebraPtr alg, int lo, int hi, int complete_to);

  const AlgebraPtr& algebra() const { return alg_; }
  const GradedAlgebra& alg() const { return *alg_; }
  const Field& field() const { return alg_->field(); }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int complete_to() const { return complete_; }
  bool finite() const { return is_unbounded(complete_); }
  bool empty_range() const { return hi_ < lo_; }

  int dim(int t) const;
  const std::vector<int>& slots(int t) const;
  /// Whether M_t is known (possibly zero).
  bool known(int t) const { return t <= complete_ || t <= hi_; }
  /// Action of basis element i on M_t; nullopt when the target degree is unknown.
  std::optional<Mat> action(int i, int t) const;
  std::optional<Vec> apply(const Vec& h, int t, const Vec& v) const;
  /// Stored matrix of basis element i on M_t, or nullptr when it acts by zero
  /// or the target is unknown; check known(t + deg) first.
  const Mat* stored_action(int i, int t) const;
  /// Basis indices of M_t lying in e_slot M_t.
  std::vector<Index> slot_indices(int t, int slot) const;

  LaurentPoly dim_q() const;
  bool is_zero_module() const;

  const std::vector<FreeSummand>& free_summands() const { return free_; }
  bool is_free() const { return !free_.empty() || (empty_range() && finite()); }

  // Construction access for the module builders.
  void set_degree(int t, std::vector<int> slots);
  void set_action(int i, int t, Mat m);
  void set_free(std::vector<FreeSummand> f) { free_ = std::move(f); }
  void set_complete(int c) { complete_ = c; }
  void trim_to(int hi);

 private:
  AlgebraPtr alg_;
  int lo_ = 0, hi_ = -1;
  int complete_ = kUnbounded;
  std::vector<std::vector<int>> slots_;
  std::vector<std::vector<Mat>> act_;  // act_[t - lo][i]
  std::vector<FreeSummand> free_;
};

/// Degree-homogeneous map U -> V raising degrees by `degree`.
struct ModuleMap {
  int degree = 0;
  int valid_to = kUnbounded;  // source degrees above this are not determined
  int src_lo = 0;
  std::vector<Mat> mats;  // mats[t - src_lo]: V_{t+degree} x U_t
  const Mat* at(int t) const;
};

/// Submodule S of an ambient M; spaces are in M_t coordinates and the basis of
/// S_t is the row basis of spaces[t - lo].
struct Submodule {
  GradedModule module;
  std::vector<Subspace> spaces;
  int lo = 0;
  /// S_t inside M_t (an empty subspace when S_t = 0).
  Subspace space(int t, Index ambient_dim) const;
  Mat embedding(int t, Index ambient_dim) const { return space(t, ambient_dim).basis(); }
};

struct Quotient {
  GradedModule module;
  std::vector<Mat> proj;  // Q_t x M_t, indexed from lo
  std::vector<Mat> lift;  // M_t x Q_t
  int lo = 0;
  const Mat& projection(int t) const { return proj[static_cast<size_t>(t - lo)]; }
  const Mat& lifting(int t) const { return lift[static_cast<size_t>(t - lo)]; }
};

struct Generator {
  int degree = 0;
  int slot = 0;
  Vec v;
};

/// Minimal homogeneous generators, one designated slot per class, from the
/// head M / NM. `exact_to` receives the degree through which the list is complete.
/// Free modules return their summand generators in summand order.
std::vector<Generator> minimal_generators(const GradedModule& m, int* exact_to = nullptr);

GradedModule projective(const AlgebraPtr& a, int cls, int shift = 0);
/// H as a left module over itself; degree n lists in_degree(n).
GradedModule regular_module(const AlgebraPtr& a);
GradedModule shifted(const GradedModule& m, int k);
GradedModule direct_sum(const std::vector<GradedModule>& parts);

Submodule submodule_from_subspaces(const GradedModule& m, const std::vector<Subspace>& sub, int lo, int complete);
Submodule submodule_generated(const GradedModule& m, const std::vector<std::pair<int, Vec>>& vectors);
Submodule radical_submodule(const GradedModule& m);
Quotient quotient_module(const GradedModule& m, const Submodule& s);
GradedModule simple_module(const AlgebraPtr& a, int cls);

struct Truncation {
  Submodule O;
  Quotient Q;
};
Truncation truncate_sigma(const GradedModule& m, const std::set<int>& sigma);

LaurentPoly graded_multiplicity(const GradedModule& m, int cls);

struct Presentation {
  std::vector<Generator> gens;
  int lo = 0, top = -1;
  struct Degree {
    std::vector<std::pair<int, int>> domain;  // (generator, algebra basis element)
    Mat phi;                                  // U_t x domain
    Mat relations;                            // kernel of phi (domain x k)
    std::optional<Mat> section;               // domain x U_t with phi * section = id
  };
  std::vector<Degree> degrees;  // index t - lo
};
Presentation present(const GradedModule& u);

std::vector<ModuleMap> hom_space(const GradedModule& u, const GradedModule& v, int n);
std::vector<ModuleMap> hom_space(const Presentation& p, const GradedModule& u, const GradedModule& v, int n);
/// The e_pi V identification, valid when u is free.
std::vector<ModuleMap> hom_from_free(const GradedModule& u, const GradedModule& v, int n);
/// Map determined by images of the presentation's generators.
ModuleMap map_from_images(const Presentation& p, const GradedModule& u, const GradedModule& v, int n,
                          const std::vector<Vec>& images);
bool is_equivariant(const ModuleMap& f, const GradedModule& u, const GradedModule& v);

Submodule kernel_module(const ModuleMap& f, const GradedModule& u, const GradedModule& v);
Submodule image_module(const ModuleMap& f, const GradedModule& u, const GradedModule& v);

/// Graded dual twisted by an antiinvolution; requires a finite module.
GradedModule dual(const GradedModule& m, const Involution& tau);

/// Elements killed by N(H), degreewise.
std::vector<Subspace> socle(const GradedModule& m);

/// Proves finiteness from a zero band above `generated_by`, the top degree of a
/// known generating set (positively graded algebras only). On success marks the
/// module complete and returns true.
bool certify_finite(GradedModule& m, int generated_by);

}  // namespace laurentia
