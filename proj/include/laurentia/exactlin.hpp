#pragma once

#include "laurentia/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace laurentia {

/// Ground field: the rationals (p = 0) or F_p. Elements of F_p are stored as
/// rationals in [0, p) and every operation reduces.
class Field {
 public:
  Field() = default;
  explicit Field(long p);

  long characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  Rational reduce(const Rational& x) const;
  Mat reduce(const Mat& m) const;
  Vec reduce(const Vec& v) const;
  Rational inv(const Rational& x) const;
  Rational mul(const Rational& a, const Rational& b) const { return reduce(a * b); }
  Rational sub(const Rational& a, const Rational& b) const { return reduce(a - b); }
  Rational add(const Rational& a, const Rational& b) const { return reduce(a + b); }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  long p_ = 0;
};

bool is_prime(long p);

Mat mul(const Field& f, const Mat& a, const Mat& b);
Vec mul(const Field& f, const Mat& a, const Vec& v);

struct RrefResult {
  Mat reduced;
  std::vector<Index> pivots;
  Index rank = 0;
};

RrefResult rref(const Field& f, const Mat& m);
Index rank(const Field& f, const Mat& m);

/// Columns form a basis of the right kernel.
Mat kernel(const Field& f, const Mat& m);

struct NoSolution {
  RowVec certificate;  // y with y*m = 0 and y*rhs != 0
};
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::variant<Mat, NoSolution> solve(const Field& f, const Mat& m, const Mat& rhs);

/// Row-reduced basis of a subspace of F^n, kept in reduced echelon form.
/// Rows are basis vectors; pivot k of row k carries a 1 and every other row is 0 there.
class Subspace {
 public:
  Subspace() = default;
  Subspace(const Field& f, Index ambient);
  static Subspace span(const Field& f, const Mat& columns);

  Index ambient() const { return n_; }
  Index dim() const { return static_cast<Index>(pivots_.size()); }
  const std::vector<Index>& pivots() const { return pivots_; }
  /// Basis vectors as columns.
  Mat basis() const;
  const Vec& row(Index k) const { return rows_[static_cast<size_t>(k)]; }

  /// Adds v if independent; returns true when the dimension grew.
  bool insert(const Vec& v);
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;
  /// Coordinates of a member in the row basis.
  Vec coords(const Vec& v) const;
  /// Indices of standard basis vectors completing this subspace to F^n.
  std::vector<Index> complement_indices() const;

  friend Subspace operator+(const Subspace& a, const Subspace& b);
  Subspace intersect(const Subspace& b) const;
  const Field& field() const { return f_; }

 private:
  Field f_;
  Index n_ = 0;
  std::vector<Vec> rows_;  // sorted by pivot
  std::vector<Index> pivots_;
};

bool is_zero(const Mat& m);
bool is_zero(const Vec& v);

}  // namespace laurentia
