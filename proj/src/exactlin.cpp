#include "laurentia/exactlin.hpp"

#include <algorithm>

namespace laurentia {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Field::Field(long p) : p_(p) {
  if (p != 0 && !is_prime(p)) throw std::invalid_argument("field characteristic must be 0 or prime");
}

Rational Field::reduce(const Rational& x) const {
  if (p_ == 0) return x;
  Integer num = mp::numerator(x);
  Integer den = mp::denominator(x);
  Integer pp = p_;
  num %= pp;
  if (num < 0) num += pp;
  if (den != 1) {
    den %= pp;
    if (den == 0) throw std::domain_error("denominator divisible by the characteristic");
    // den^{-1} mod p via Fermat: den^(p-2).
    Integer inv = mp::powm(den, pp - 2, pp);
    num = (num * inv) % pp;
  }
  return Rational(num);
}

Mat Field::reduce(const Mat& m) const {
  if (p_ == 0) return m;
  Mat r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = reduce(m(i, j));
  return r;
}

Vec Field::reduce(const Vec& v) const {
  if (p_ == 0) return v;
  Vec r(v.size());
  for (Index i = 0; i < v.size(); ++i) r(i) = reduce(v(i));
  return r;
}

Rational Field::inv(const Rational& x) const {
  if (x == 0) throw std::domain_error("inverse of zero");
  if (p_ == 0) return Rational(1) / x;
  Integer pp = p_;
  Integer n = mp::numerator(reduce(x));
  return Rational(mp::powm(n, pp - 2, pp));
}

Mat mul(const Field& f, const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  if (a.size() == 0 || b.size() == 0) return Mat::Zero(a.rows(), b.cols());
  Mat r = a * b;
  return f.reduce(r);
}

Vec mul(const Field& f, const Mat& a, const Vec& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  if (a.size() == 0) return Vec::Zero(a.rows());
  Vec r = a * v;
  return f.reduce(r);
}

RrefResult rref(const Field& f, const Mat& m) {
  RrefResult res;
  Mat a = f.reduce(m);
  const Index rows = a.rows(), cols = a.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = -1;
    for (Index i = r; i < rows; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    Rational inv = f.inv(a(r, c));
    for (Index j = c; j < cols; ++j) a(r, j) = f.mul(a(r, j), inv);
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational factor = a(i, c);
      for (Index j = c; j < cols; ++j)
        if (a(r, j) != 0) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  res.reduced = std::move(a);
  return res;
}

Index rank(const Field& f, const Mat& m) { return rref(f, m).rank; }

Mat kernel(const Field& f, const Mat& m) {
  RrefResult rr = rref(f, m);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (Index c : rr.pivots) is_pivot[static_cast<size_t>(c)] = true;
  Mat k = Mat::Zero(cols, cols - rr.rank);
  Index col = 0;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    k(free, col) = 1;
    for (Index r = 0; r < rr.rank; ++r)
      if (rr.reduced(r, free) != 0) k(rr.pivots[static_cast<size_t>(r)], col) = f.reduce(-rr.reduced(r, free));
    ++col;
  }
  return k;
}

std::variant<Mat, NoSolution> solve(const Field& f, const Mat& m, const Mat& rhs) {
  if (rhs.rows() != m.rows()) throw DimensionMismatch("solve: rhs rows differ from matrix rows");
  const Index rows = m.rows(), n = m.cols(), k = rhs.cols();
  Mat aug(rows, n + k + rows);
  aug << m, rhs, Mat::Identity(rows, rows);
  // Eliminate only over the coefficient columns so the identity block records row operations.
  Mat a = f.reduce(aug);
  Index r = 0;
  std::vector<Index> pivots;
  for (Index c = 0; c < n && r < rows; ++c) {
    Index piv = -1;
    for (Index i = r; i < rows; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    Rational inv = f.inv(a(r, c));
    for (Index j = 0; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), inv);
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational factor = a(i, c);
      for (Index j = 0; j < a.cols(); ++j)
        if (a(r, j) != 0) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  for (Index i = r; i < rows; ++i) {
    bool inconsistent = false;
    for (Index j = 0; j < k; ++j)
      if (a(i, n + j) != 0) inconsistent = true;
    if (inconsistent) return NoSolution{a.block(i, n + k, 1, rows)};
  }
  Mat x = Mat::Zero(n, k);
  for (Index i = 0; i < r; ++i) x.row(pivots[static_cast<size_t>(i)]) = a.block(i, n, 1, k);
  return x;
}

Subspace::Subspace(const Field& f, Index ambient) : f_(f), n_(ambient) {}

Subspace Subspace::span(const Field& f, const Mat& columns) {
  Subspace s(f, columns.rows());
  for (Index j = 0; j < columns.cols(); ++j) s.insert(columns.col(j));
  return s;
}

Mat Subspace::basis() const {
  Mat b(n_, dim());
  for (Index k = 0; k < dim(); ++k) b.col(k) = rows_[static_cast<size_t>(k)];
  return b;
}

Vec Subspace::reduce(const Vec& v) const {
  Vec w = f_.reduce(v);
  for (size_t k = 0; k < rows_.size(); ++k) {
    const Rational c = w(pivots_[k]);
    if (c == 0) continue;
    const Vec& row = rows_[k];
    for (Index j = 0; j < n_; ++j)
      if (row(j) != 0) w(j) = f_.sub(w(j), f_.mul(c, row(j)));
  }
  return w;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

Vec Subspace::coords(const Vec& v) const {
  Vec c(dim());
  for (Index k = 0; k < dim(); ++k) c(k) = f_.reduce(v(pivots_[static_cast<size_t>(k)]));
  return c;
}

bool Subspace::insert(const Vec& v) {
  if (v.size() != n_) throw DimensionMismatch("subspace insert: ambient dimension mismatch");
  Vec w = reduce(v);
  Index p = -1;
  for (Index j = 0; j < n_; ++j)
    if (w(j) != 0) {
      p = j;
      break;
    }
  if (p < 0) return false;
  Rational inv = f_.inv(w(p));
  for (Index j = 0; j < n_; ++j) w(j) = f_.mul(w(j), inv);
  for (auto& row : rows_) {
    const Rational c = row(p);
    if (c == 0) continue;
    for (Index j = 0; j < n_; ++j)
      if (w(j) != 0) row(j) = f_.sub(row(j), f_.mul(c, w(j)));
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, p);
  rows_.insert(rows_.begin() + idx, std::move(w));
  return true;
}

std::vector<Index> Subspace::complement_indices() const {
  std::vector<Index> out;
  size_t k = 0;
  for (Index j = 0; j < n_; ++j) {
    if (k < pivots_.size() && pivots_[k] == j) {
      ++k;
      continue;
    }
    out.push_back(j);
  }
  return out;
}

Subspace operator+(const Subspace& a, const Subspace& b) {
  Subspace s = a;
  for (const auto& r : b.rows_) s.insert(r);
  return s;
}

Subspace Subspace::intersect(const Subspace& b) const {
  // Solve A x = B y; the intersection is spanned by A x over the kernel of [A | -B].
  Mat A = basis(), B = b.basis();
  Mat cat(n_, A.cols() + B.cols());
  cat << A, -B;
  Mat k = kernel(f_, cat);
  Subspace s(f_, n_);
  for (Index j = 0; j < k.cols(); ++j) s.insert(mul(f_, A, Vec(k.col(j).head(A.cols()))));
  return s;
}

bool is_zero(const Mat& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

bool is_zero(const Vec& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

}  // namespace laurentia
