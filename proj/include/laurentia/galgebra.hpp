#pragma once

#include "laurentia/exactlin.hpp"
#include "laurentia/laurent.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace laurentia {

/// Construction or verification failure; `kind` names the failed condition
/// (InhomogeneousRelation, EndpointMismatch, AssocFail, RadicalNotIdeal, ...).
struct AlgebraError : std::runtime_error {
  AlgebraError(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind(std::move(kind)) {}
  std::string kind;
};

using SparseVec = std::vector<std::pair<int, Rational>>;

struct Arrow {
  std::string name;
  std::string src;
  std::string dst;
  int degree = 1;
};

/// One term c * (a1 then a2 then ...), arrows listed in traversal order.
struct PathTerm {
  Rational coeff = 1;
  std::vector<std::string> arrows;
};

struct Relation {
  std::vector<PathTerm> terms;
};

struct QuiverPresentation {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
};

struct TableBasisElem {
  std::string name;
  int degree = 0;
  int left = 0;  // index into TableAlgebra::idempotents
  int right = 0;
};

struct TableIdempotent {
  int element = 0;  // basis index
  std::string cls;
};

/// Explicit structure constants. Products of pairs whose degree sum exceeds the
/// top basis degree are unknown; other missing pairs are zero.
struct TableAlgebra {
  std::vector<TableBasisElem> basis;
  std::vector<TableIdempotent> idempotents;  // first listed per class is designated
  std::map<std::pair<int, int>, SparseVec> products;
  std::vector<int> radical;
  std::optional<int> window_top;
  bool finite = false;  // all nonzero products are listed; nothing lies above the window
};

class GradedAlgebra {
 public:
  struct BasisElem {
    std::string name;
    int degree = 0;
    int left = 0;  // slot: e_left * b * e_right = b
    int right = 0;
  };
  struct Slot {
    int basis = 0;
    int cls = 0;
  };
  struct Product {
    bool above = false;  // lands above the horizon: unknown
    SparseVec value;
  };

  const Field& field() const { return field_; }
  int w_lo() const { return w_lo_; }
  int w_hi() const { return w_hi_; }
  /// Degrees through which H is known exactly; kUnbounded when H is finite.
  int complete_to() const { return complete_to_; }
  bool finite() const { return is_unbounded(complete_to_); }
  /// Degree bound of a generating set when H is positively graded (0 if unknown).
  int gen_bound() const { return gen_bound_; }
  bool positively_graded() const { return gen_bound_ > 0 || dim() == static_cast<int>(slots_.size()); }

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElem>& basis() const { return basis_; }
  const BasisElem& basis(int i) const { return basis_[static_cast<size_t>(i)]; }
  const std::vector<int>& in_degree(int n) const;

  const std::vector<std::string>& classes() const { return classes_; }
  int class_index(const std::string& label) const;
  const std::vector<Slot>& slots() const { return slots_; }
  int slot_class(int slot) const { return slots_[static_cast<size_t>(slot)].cls; }
  int designated(int cls) const { return designated_[static_cast<size_t>(cls)]; }
  int idempotent_basis(int slot) const { return slots_[static_cast<size_t>(slot)].basis; }

  const Product& product(int i, int j) const { return table_[static_cast<size_t>(i * dim() + j)]; }
  Vec unit(int i) const;
  Vec one() const;
  Vec idempotent(int slot) const { return unit(idempotent_basis(slot)); }
  /// Sum of the idempotents of a class.
  Vec class_idempotent(int cls) const;
  /// nullopt when some contributing product lies above the horizon.
  std::optional<Vec> multiply(const Vec& a, const Vec& b) const;
  /// Degree of a nonzero homogeneous element.
  int degree_of(const Vec& a) const;

  /// Homogeneous elements spanning N(H) degreewise.
  const std::vector<Vec>& radical() const { return radical_; }
  Subspace radical_in_degree(int n) const;

  /// Paths (arrow indices, traversal order) of quiver-mode basis elements.
  const std::vector<std::vector<int>>& basis_paths() const { return paths_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::string& mode() const { return mode_; }

  /// For quotient algebras: the projection from the parent algebra (dim x parent dim).
  const Mat& parent_projection() const { return parent_proj_; }
  /// For quotient algebras: parent basis index of each basis element.
  const std::vector<int>& parent_index() const { return parent_index_; }

  friend GradedAlgebra from_quiver(const QuiverPresentation&, int, const Field&);
  friend GradedAlgebra from_table(const TableAlgebra&, const Field&);
  friend GradedAlgebra opposite(const GradedAlgebra&);
  friend GradedAlgebra quotient_algebra(const GradedAlgebra&, const std::vector<Subspace>&, int);

 private:
  void index_degrees();

  Field field_;
  std::string mode_;
  int w_lo_ = 0, w_hi_ = 0;
  int complete_to_ = 0;
  int gen_bound_ = 0;
  std::vector<std::string> classes_;
  std::vector<Slot> slots_;
  std::vector<int> designated_;
  std::vector<BasisElem> basis_;
  std::vector<std::vector<int>> by_degree_;
  std::vector<Product> table_;
  std::vector<Vec> radical_;
  std::vector<std::vector<int>> paths_;
  std::vector<Arrow> arrows_;
  Mat parent_proj_;
  std::vector<int> parent_index_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

GradedAlgebra from_quiver(const QuiverPresentation& p, int window_top, const Field& field);
GradedAlgebra from_table(const TableAlgebra& t, const Field& field);
GradedAlgebra opposite(const GradedAlgebra& a);
/// H/I for a two-sided ideal given degreewise (coordinates follow in_degree(n)),
/// exact through `complete_to`. Idempotents lying in I are dropped.
GradedAlgebra quotient_algebra(const GradedAlgebra& a, const std::vector<Subspace>& ideal, int complete_to);

std::optional<Vec> multiply(const GradedAlgebra& a, const Vec& x, const Vec& y);

/// Entry (s, p) is dim_q e_s H e_p over designated idempotents of classes s, p.
std::vector<std::vector<LaurentPoly>> peirce_dims(const GradedAlgebra& a);
/// Same over all idempotent slots.
std::vector<std::vector<LaurentPoly>> slot_peirce_dims(const GradedAlgebra& a);
LaurentPoly dim_q(const GradedAlgebra& a);

/// Homogeneous antiinvolution, stored as its matrix on the basis.
struct Involution {
  Mat matrix;
  std::vector<int> slot_image;
};

/// Extends arrow images (and optional vertex images) antimultiplicatively.
Involution involution_from_arrows(const GradedAlgebra& a, const std::map<std::string, std::string>& arrow_images,
                                  const std::map<std::string, std::string>& vertex_images);
Involution involution_from_table(const GradedAlgebra& a, const std::vector<SparseVec>& images);
/// Throws AlgebraError("NotAntiinvolution") with a witness pair.
void verify_involution(const GradedAlgebra& a, const Involution& t);
/// tau fixes every class.
bool is_balanced(const GradedAlgebra& a, const Involution& t);
Involution involution_on_quotient(const GradedAlgebra& h, const GradedAlgebra& q, const Involution& t);

/// Summary of the window checks on the radical, used by reports.
struct RadicalReport {
  bool ideal = true;
  bool quotient_semisimple = true;
  bool schurian = true;  // e_pi (H/N) e_pi is one-dimensional for designated e_pi
  std::vector<int> power_min_degrees;  // min degree of N^k, k = 1, 2, ...
  bool grows = true;
  std::vector<LaurentPoly> simple_dims;  // dim_q L(pi) per class
};
RadicalReport check_radical(const GradedAlgebra& a);

/// Parses "2*a*b - c" into path terms (a*b = traverse a then b).
Relation parse_relation(const std::string& text);

}  // namespace laurentia
