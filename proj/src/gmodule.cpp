#include "laurentia/gmodule.hpp"

#include <algorithm>
#include <climits>
#include <deque>

namespace laurentia {

namespace {

const std::vector<int> kNoSlots;

size_t at(int t, int lo) { return static_cast<size_t>(t - lo); }

// Top degree through which H itself is known.
int algebra_top(const GradedAlgebra& a) {
  return a.finite() ? a.w_hi() : std::min(a.w_hi(), a.complete_to());
}

int sat_add(int a, int b) {
  if (is_unbounded(a) || is_unbounded(b)) return kUnbounded;
  return a + b;
}

Mat unit_columns(Index n, const std::vector<Index>& idx) {
  Mat m = Mat::Zero(n, static_cast<Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) m(idx[k], static_cast<Index>(k)) = 1;
  return m;
}

// Coordinates of the columns of m in the row basis of s (entries at pivots).
Mat pivot_coords(const Subspace& s, const Mat& m) {
  Mat out(s.dim(), m.cols());
  for (Index k = 0; k < s.dim(); ++k)
    for (Index c = 0; c < m.cols(); ++c) out(k, c) = m(s.pivots()[static_cast<size_t>(k)], c);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// GradedModule

GradedModule::GradedModule(AlgebraPtr alg, int lo, int hi, int complete_to)
    : alg_(std::move(alg)), lo_(lo), hi_(hi), complete_(complete_to) {
  if (hi_ < lo_ - 1) hi_ = lo_ - 1;
  slots_.assign(static_cast<size_t>(hi_ - lo_ + 1), {});
  act_.assign(slots_.size(), std::vector<Mat>(static_cast<size_t>(alg_->dim())));
}

int GradedModule::dim(int t) const {
  if (t < lo_ || t > hi_) return 0;
  return static_cast<int>(slots_[at(t, lo_)].size());
}

const std::vector<int>& GradedModule::slots(int t) const {
  if (t < lo_ || t > hi_) return kNoSlots;
  return slots_[at(t, lo_)];
}

void GradedModule::set_degree(int t, std::vector<int> s) { slots_[at(t, lo_)] = std::move(s); }

void GradedModule::set_action(int i, int t, Mat m) {
  if (is_zero(m)) m = Mat();
  act_[at(t, lo_)][static_cast<size_t>(i)] = std::move(m);
}

const Mat* GradedModule::stored_action(int i, int t) const {
  if (t < lo_ || t > hi_) return nullptr;
  const Mat& m = act_[at(t, lo_)][static_cast<size_t>(i)];
  return m.size() == 0 ? nullptr : &m;
}

std::optional<Mat> GradedModule::action(int i, int t) const {
  int target = t + alg_->basis(i).degree;
  if (!known(target)) return std::nullopt;
  if (const Mat* m = stored_action(i, t)) return *m;
  return Mat(Mat::Zero(dim(target), dim(t)));
}

std::optional<Vec> GradedModule::apply(const Vec& h, int t, const Vec& v) const {
  const Field& f = field();
  std::optional<Vec> out;
  for (int i = 0; i < alg_->dim(); ++i) {
    if (h(i) == 0) continue;
    int target = t + alg_->basis(i).degree;
    if (!known(target)) return std::nullopt;
    if (!out) out = Vec::Zero(dim(target));
    if (out->size() != dim(target)) throw std::invalid_argument("apply: element is not homogeneous");
    if (const Mat* m = stored_action(i, t)) *out = f.reduce(Vec(*out + h(i) * mul(f, *m, v)));
  }
  if (!out) out = Vec::Zero(0);
  return out;
}

std::vector<Index> GradedModule::slot_indices(int t, int slot) const {
  std::vector<Index> out;
  const auto& s = slots(t);
  for (size_t k = 0; k < s.size(); ++k)
    if (s[k] == slot) out.push_back(static_cast<Index>(k));
  return out;
}

LaurentPoly GradedModule::dim_q() const {
  LaurentPoly p;
  for (int t = lo_; t <= hi_; ++t)
    if (dim(t) != 0) p.set(t, Integer(dim(t)));
  return p.truncated(complete_);
}

bool GradedModule::is_zero_module() const {
  for (int t = lo_; t <= hi_; ++t)
    if (dim(t) != 0) return false;
  return finite();
}

void GradedModule::trim_to(int hi) {
  if (hi >= hi_) return;
  if (hi < lo_ - 1) hi = lo_ - 1;
  hi_ = hi;
  slots_.resize(static_cast<size_t>(hi_ - lo_ + 1));
  act_.resize(slots_.size());
  // Actions landing above the new top are dropped with the degrees.
  for (int t = lo_; t <= hi_; ++t)
    for (int i = 0; i < alg_->dim(); ++i)
      if (t + alg_->basis(i).degree > hi_) act_[at(t, lo_)][static_cast<size_t>(i)] = Mat();
}

const Mat* ModuleMap::at(int t) const {
  if (t < src_lo || t > valid_to) return nullptr;
  size_t k = static_cast<size_t>(t - src_lo);
  return k < mats.size() ? &mats[k] : nullptr;
}

Subspace Submodule::space(int t, Index ambient_dim) const {
  if (t < lo || static_cast<size_t>(t - lo) >= spaces.size()) return Subspace(module.field(), ambient_dim);
  return spaces[static_cast<size_t>(t - lo)];
}

// ---------------------------------------------------------------------------
// Constructions

GradedModule projective(const AlgebraPtr& a, int cls, int shift) {
  const GradedAlgebra& A = *a;
  const int des = A.designated(cls);
  const int top = algebra_top(A);
  GradedModule m(a, A.w_lo() + shift, top + shift, A.finite() ? kUnbounded : top + shift);
  std::vector<int> pos(static_cast<size_t>(A.dim()), -1);
  for (int n = A.w_lo(); n <= top; ++n) {
    std::vector<int> s;
    for (int b : A.in_degree(n))
      if (A.basis(b).right == des) {
        pos[static_cast<size_t>(b)] = static_cast<int>(s.size());
        s.push_back(A.basis(b).left);
      }
    m.set_degree(n + shift, std::move(s));
  }
  for (int n = A.w_lo(); n <= top; ++n) {
    const int dn = m.dim(n + shift);
    if (dn == 0) continue;
    for (int i = 0; i < A.dim(); ++i) {
      int k = A.basis(i).degree;
      if (n + k > top) continue;
      Mat act = Mat::Zero(m.dim(n + k + shift), dn);
      bool any = false;
      for (int b : A.in_degree(n)) {
        if (pos[static_cast<size_t>(b)] < 0) continue;
        for (const auto& [c, v] : A.product(i, b).value) {
          act(pos[static_cast<size_t>(c)], pos[static_cast<size_t>(b)]) = v;
          any = true;
        }
      }
      if (any) m.set_action(i, n + shift, std::move(act));
    }
  }
  Index gen = pos[static_cast<size_t>(A.idempotent_basis(des))];
  m.set_free({{cls, shift, gen}});
  return m;
}

GradedModule regular_module(const AlgebraPtr& a) {
  const GradedAlgebra& A = *a;
  const int top = algebra_top(A);
  GradedModule m(a, A.w_lo(), top, A.finite() ? kUnbounded : top);
  std::vector<int> pos(static_cast<size_t>(A.dim()), -1);
  for (int n = A.w_lo(); n <= top; ++n) {
    std::vector<int> s;
    for (int b : A.in_degree(n)) {
      pos[static_cast<size_t>(b)] = static_cast<int>(s.size());
      s.push_back(A.basis(b).left);
    }
    m.set_degree(n, std::move(s));
  }
  for (int n = A.w_lo(); n <= top; ++n)
    for (int i = 0; i < A.dim(); ++i) {
      int target = n + A.basis(i).degree;
      if (target > top || target < A.w_lo() || m.dim(n) == 0 || m.dim(target) == 0) continue;
      Mat act = Mat::Zero(m.dim(target), m.dim(n));
      for (int b : A.in_degree(n))
        for (const auto& [c, v] : A.product(i, b).value) act(pos[static_cast<size_t>(c)], pos[static_cast<size_t>(b)]) = v;
      m.set_action(i, n, std::move(act));
    }
  return m;
}

GradedModule shifted(const GradedModule& m, int k) {
  GradedModule out(m.algebra(), m.lo() + k, m.hi() + k, sat_add(m.complete_to(), k));
  for (int t = m.lo(); t <= m.hi(); ++t) out.set_degree(t + k, m.slots(t));
  for (int t = m.lo(); t <= m.hi(); ++t)
    for (int i = 0; i < m.alg().dim(); ++i)
      if (const Mat* a = m.stored_action(i, t)) out.set_action(i, t + k, *a);
  auto f = m.free_summands();
  for (auto& s : f) s.shift += k;
  out.set_free(std::move(f));
  return out;
}

GradedModule direct_sum(const std::vector<GradedModule>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum of no modules");
  const AlgebraPtr& a = parts.front().algebra();
  int lo = INT_MAX, hi = INT_MIN, complete = kUnbounded;
  for (const auto& p : parts) {
    lo = std::min(lo, p.lo());
    hi = std::max(hi, p.hi());
    complete = std::min(complete, p.complete_to());
  }
  if (!is_unbounded(complete)) hi = std::min(hi, complete);
  GradedModule out(a, lo, hi, complete);
  // offsets[p][t - lo]
  std::vector<std::vector<Index>> off(parts.size(), std::vector<Index>(static_cast<size_t>(hi - lo + 1), 0));
  for (int t = lo; t <= hi; ++t) {
    std::vector<int> s;
    for (size_t p = 0; p < parts.size(); ++p) {
      off[p][at(t, lo)] = static_cast<Index>(s.size());
      const auto& ps = parts[p].slots(t);
      s.insert(s.end(), ps.begin(), ps.end());
    }
    out.set_degree(t, std::move(s));
  }
  for (int t = lo; t <= hi; ++t) {
    if (out.dim(t) == 0) continue;
    for (int i = 0; i < a->dim(); ++i) {
      int target = t + a->basis(i).degree;
      if (target < lo || target > hi) continue;
      Mat act = Mat::Zero(out.dim(target), out.dim(t));
      bool any = false;
      for (size_t p = 0; p < parts.size(); ++p)
        if (const Mat* m = parts[p].stored_action(i, t)) {
          act.block(off[p][at(target, lo)], off[p][at(t, lo)], m->rows(), m->cols()) = *m;
          any = true;
        }
      if (any) out.set_action(i, t, std::move(act));
    }
  }
  std::vector<FreeSummand> fs;
  bool all_free = true;
  for (size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].free_summands().empty() && !parts[p].is_zero_module()) all_free = false;
    for (auto s : parts[p].free_summands()) {
      if (s.shift < lo || s.shift > hi) {
        all_free = false;
        break;
      }
      s.index += off[p][at(s.shift, lo)];
      fs.push_back(s);
    }
  }
  if (all_free) out.set_free(std::move(fs));
  return out;
}

Submodule submodule_from_subspaces(const GradedModule& m, const std::vector<Subspace>& sub, int lo, int complete) {
  if (lo != m.lo()) throw std::invalid_argument("submodule spaces must start at the ambient low degree");
  complete = std::min(complete, m.complete_to());
  int hi = std::min(m.hi(), lo + static_cast<int>(sub.size()) - 1);
  if (!is_unbounded(complete)) hi = std::min(hi, complete);
  Submodule s{GradedModule(m.algebra(), lo, hi, complete), {}, lo};
  const Field& f = m.field();
  for (int t = lo; t <= hi; ++t) {
    const Subspace& sp = sub[at(t, lo)];
    std::vector<int> slots;
    for (Index p : sp.pivots()) slots.push_back(m.slots(t)[static_cast<size_t>(p)]);
    s.module.set_degree(t, std::move(slots));
    s.spaces.push_back(sp);
  }
  for (int t = lo; t <= hi; ++t) {
    if (s.module.dim(t) == 0) continue;
    Mat E = s.spaces[at(t, lo)].basis();
    for (int i = 0; i < m.alg().dim(); ++i) {
      int target = t + m.alg().basis(i).degree;
      if (target < lo || target > hi) continue;
      const Mat* a = m.stored_action(i, t);
      if (!a || s.module.dim(target) == 0) continue;
      s.module.set_action(i, t, pivot_coords(s.spaces[at(target, lo)], mul(f, *a, E)));
    }
  }
  return s;
}

Submodule submodule_generated(const GradedModule& m, const std::vector<std::pair<int, Vec>>& vectors) {
  const GradedAlgebra& A = m.alg();
  const Field& f = m.field();
  int min_deg = INT_MAX;
  for (const auto& [t, v] : vectors)
    if (!is_zero(v)) min_deg = std::min(min_deg, t);

  int complete = m.complete_to();
  if (min_deg != INT_MAX) {
    const int top = algebra_top(A);
    bool reach_all = A.finite() || (m.finite() && m.hi() - min_deg <= top);
    if (!reach_all) complete = std::min(complete, top + min_deg);
    if (A.w_lo() < 0 && !m.finite()) complete = std::min(complete, m.complete_to() + A.w_lo());
  }
  int hi = is_unbounded(complete) ? m.hi() : std::min(m.hi(), complete);

  std::vector<Subspace> sp;
  for (int t = m.lo(); t <= std::max(hi, m.lo() - 1); ++t) sp.emplace_back(f, m.dim(t));
  std::deque<std::tuple<int, int, Vec>> work;  // degree, slot, vector
  auto push_split = [&](int t, const Vec& v) {
    if (t < m.lo() || t > hi) return;
    const auto& s = m.slots(t);
    std::vector<int> seen;
    for (size_t k = 0; k < s.size(); ++k) {
      if (v(static_cast<Index>(k)) == 0 || std::find(seen.begin(), seen.end(), s[k]) != seen.end()) continue;
      seen.push_back(s[k]);
      Vec c = Vec::Zero(v.size());
      for (size_t j = 0; j < s.size(); ++j)
        if (s[j] == s[k]) c(static_cast<Index>(j)) = v(static_cast<Index>(j));
      if (sp[at(t, m.lo())].insert(c)) work.emplace_back(t, s[k], c);
    }
  };
  for (const auto& [t, v] : vectors) push_split(t, v);
  while (!work.empty()) {
    auto [t, slot, v] = std::move(work.front());
    work.pop_front();
    for (int i = 0; i < A.dim(); ++i) {
      if (A.basis(i).right != slot) continue;
      int target = t + A.basis(i).degree;
      if (target > hi || target < m.lo()) continue;
      const Mat* a = m.stored_action(i, t);
      if (!a) continue;
      Vec w = mul(f, *a, v);
      if (is_zero(w)) continue;
      if (sp[at(target, m.lo())].insert(w)) work.emplace_back(target, A.basis(i).left, w);
    }
  }
  return submodule_from_subspaces(m, sp, m.lo(), complete);
}

Submodule radical_submodule(const GradedModule& m) {
  const GradedAlgebra& A = m.alg();
  const Field& f = m.field();
  const int top = algebra_top(A);
  int complete = m.complete_to();
  bool reach_all = A.finite() || (m.finite() && m.hi() - m.lo() <= top);
  if (!reach_all) complete = std::min(complete, top + m.lo());
  if (A.w_lo() < 0 && !m.finite()) complete = std::min(complete, m.complete_to() + A.w_lo());
  int hi = is_unbounded(complete) ? m.hi() : std::min(m.hi(), complete);

  std::vector<Subspace> sp;
  for (int t = m.lo(); t <= std::max(hi, m.lo() - 1); ++t) sp.emplace_back(f, m.dim(t));
  for (const Vec& r : A.radical()) {
    int k = A.degree_of(r);
    for (int t = m.lo(); t <= m.hi(); ++t) {
      int target = t + k;
      if (target < m.lo() || target > hi || m.dim(t) == 0) continue;
      Mat acc = Mat::Zero(m.dim(target), m.dim(t));
      for (int i = 0; i < A.dim(); ++i)
        if (r(i) != 0)
          if (const Mat* a = m.stored_action(i, t)) acc += r(i) * *a;
      acc = f.reduce(acc);
      for (Index c = 0; c < acc.cols(); ++c)
        if (!is_zero(Vec(acc.col(c)))) sp[at(target, m.lo())].insert(acc.col(c));
    }
  }
  return submodule_from_subspaces(m, sp, m.lo(), complete);
}

Quotient quotient_module(const GradedModule& m, const Submodule& s) {
  const GradedAlgebra& A = m.alg();
  const Field& f = m.field();
  const GradedModule& S = s.module;
  int complete = std::min(m.complete_to(), S.complete_to());
  int hi = S.finite() ? m.hi() : std::min(m.hi(), S.hi());
  if (!is_unbounded(complete)) hi = std::min(hi, complete);

  // Closure check over the degrees where both sides are known.
  for (int t = m.lo(); t <= std::min(hi, S.hi()); ++t) {
    Subspace st = s.space(t, m.dim(t));
    if (st.dim() == 0) continue;
    Mat E = st.basis();
    for (int i = 0; i < A.dim(); ++i) {
      int target = t + A.basis(i).degree;
      if (target > hi || target < m.lo()) continue;
      const Mat* a = m.stored_action(i, t);
      if (!a) continue;
      Mat img = mul(f, *a, E);
      Subspace tt = s.space(target, m.dim(target));
      for (Index c = 0; c < img.cols(); ++c)
        if (!tt.contains(img.col(c)))
          throw NotASubmodule("NotASubmodule: " + A.basis(i).name + " moves a degree " + std::to_string(t) +
                              " vector outside the subspace");
    }
  }

  Quotient q{GradedModule(m.algebra(), m.lo(), hi, complete), {}, {}, m.lo()};
  for (int t = m.lo(); t <= hi; ++t) {
    Subspace st = s.space(t, m.dim(t));
    std::vector<Index> keep = st.complement_indices();
    std::vector<int> slots;
    for (Index k : keep) slots.push_back(m.slots(t)[static_cast<size_t>(k)]);
    q.module.set_degree(t, std::move(slots));
    Mat P(static_cast<Index>(keep.size()), m.dim(t));
    for (Index j = 0; j < m.dim(t); ++j) {
      Vec e = Vec::Zero(m.dim(t));
      e(j) = 1;
      Vec r = st.reduce(e);
      for (size_t k = 0; k < keep.size(); ++k) P(static_cast<Index>(k), j) = r(keep[k]);
    }
    q.proj.push_back(std::move(P));
    q.lift.push_back(unit_columns(m.dim(t), keep));
  }
  for (int t = m.lo(); t <= hi; ++t) {
    if (q.module.dim(t) == 0) continue;
    for (int i = 0; i < A.dim(); ++i) {
      int target = t + A.basis(i).degree;
      if (target < m.lo() || target > hi || q.module.dim(target) == 0) continue;
      const Mat* a = m.stored_action(i, t);
      if (!a) continue;
      q.module.set_action(i, t, mul(f, q.projection(target), mul(f, *a, q.lifting(t))));
    }
  }
  return q;
}

GradedModule simple_module(const AlgebraPtr& a, int cls) {
  GradedModule p = projective(a, cls);
  Quotient q = quotient_module(p, radical_submodule(p));
  // L is a module over the finite-dimensional H/N, whose degrees all lie in the window.
  GradedModule l = std::move(q.module);
  int last = l.lo() - 1;
  for (int t = l.lo(); t <= l.hi(); ++t)
    if (l.dim(t) != 0) last = t;
  l.trim_to(last);
  l.set_complete(kUnbounded);
  return l;
}

Truncation truncate_sigma(const GradedModule& m, const std::set<int>& sigma) {
  const GradedAlgebra& A = m.alg();
  std::vector<std::pair<int, Vec>> gens;
  for (int t = m.lo(); t <= m.hi(); ++t) {
    const auto& s = m.slots(t);
    for (size_t k = 0; k < s.size(); ++k)
      if (!sigma.count(A.slot_class(s[k]))) {
        Vec e = Vec::Zero(m.dim(t));
        e(static_cast<Index>(k)) = 1;
        gens.emplace_back(t, e);
      }
  }
  Submodule o = submodule_generated(m, gens);
  Quotient q = quotient_module(m, o);
  return {std::move(o), std::move(q)};
}

LaurentPoly graded_multiplicity(const GradedModule& m, int cls) {
  const int des = m.alg().designated(cls);
  LaurentPoly p;
  for (int t = m.lo(); t <= m.hi(); ++t) {
    auto n = m.slot_indices(t, des).size();
    if (n) p.set(t, Integer(static_cast<long>(n)));
  }
  return p.truncated(m.complete_to());
}

std::vector<Generator> minimal_generators(const GradedModule& m, int* exact_to) {
  std::vector<Generator> out;
  const GradedAlgebra& A = m.alg();
  if (!m.free_summands().empty()) {
    for (const auto& s : m.free_summands()) {
      Vec v = Vec::Zero(m.dim(s.shift));
      v(s.index) = 1;
      out.push_back({s.shift, A.designated(s.cls), v});
    }
    if (exact_to) *exact_to = kUnbounded;
    return out;
  }
  Submodule r = radical_submodule(m);
  int e = r.module.complete_to();
  int top = is_unbounded(e) ? m.hi() : std::min(m.hi(), e);
  for (int t = m.lo(); t <= top; ++t) {
    Subspace span = r.space(t, m.dim(t));
    for (size_t c = 0; c < A.classes().size(); ++c) {
      int des = A.designated(static_cast<int>(c));
      for (Index j : m.slot_indices(t, des)) {
        Vec v = Vec::Zero(m.dim(t));
        v(j) = 1;
        if (span.insert(v)) out.push_back({t, des, v});
      }
    }
  }
  if (exact_to) *exact_to = is_unbounded(e) ? (m.finite() ? kUnbounded : m.hi()) : top;
  return out;
}

// ---------------------------------------------------------------------------
// Hom spaces

Presentation present(const GradedModule& u) {
  const GradedAlgebra& A = u.alg();
  const Field& f = u.field();
  Presentation p;
  p.gens = minimal_generators(u);
  p.lo = u.lo();
  p.top = u.hi();
  // A finite module still has relations above its top degree.
  if (u.finite())
    for (const auto& g : p.gens) p.top = std::max(p.top, g.degree + algebra_top(A));
  for (int t = u.lo(); t <= p.top; ++t) {
    Presentation::Degree d;
    std::vector<Vec> cols;
    for (size_t g = 0; g < p.gens.size(); ++g) {
      const Generator& gen = p.gens[g];
      for (int b : A.in_degree(t - gen.degree)) {
        if (A.basis(b).right != gen.slot) continue;
        d.domain.emplace_back(static_cast<int>(g), b);
        const Mat* a = u.stored_action(b, gen.degree);
        cols.push_back(a ? mul(f, *a, gen.v) : Vec(Vec::Zero(u.dim(t))));
      }
    }
    d.phi = Mat::Zero(u.dim(t), static_cast<Index>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) d.phi.col(static_cast<Index>(c)) = cols[c];
    d.relations = kernel(f, d.phi);
    auto sol = solve(f, d.phi, Mat::Identity(u.dim(t), u.dim(t)));
    if (auto* s = std::get_if<Mat>(&sol)) d.section = *s;
    p.degrees.push_back(std::move(d));
  }
  return p;
}

namespace {

// Image in V_{t+n} of the domain element (g, b) under generator images w.
Vec domain_image(const GradedModule& v, const Generator& gen, int b, int n, const Vec& w) {
  const Mat* a = v.stored_action(b, gen.degree + n);
  int target = gen.degree + n + v.alg().basis(b).degree;
  if (!a) return Vec::Zero(v.dim(target));
  return mul(v.field(), *a, w);
}

}  // namespace

ModuleMap map_from_images(const Presentation& p, const GradedModule& u, const GradedModule& v, int n,
                          const std::vector<Vec>& images) {
  const Field& f = u.field();
  ModuleMap m;
  m.degree = n;
  m.src_lo = u.lo();
  m.valid_to = u.finite() ? kUnbounded : u.hi();
  for (int t = u.lo(); t <= u.hi(); ++t) {
    const auto& d = p.degrees[at(t, p.lo)];
    if (u.dim(t) == 0) {
      m.mats.push_back(Mat::Zero(v.dim(t + n), 0));
      continue;
    }
    if (!v.known(t + n) || !d.section) {
      m.valid_to = t - 1;
      break;
    }
    Mat F = Mat::Zero(v.dim(t + n), static_cast<Index>(d.domain.size()));
    bool unknown = false;
    for (size_t c = 0; c < d.domain.size(); ++c) {
      auto [g, b] = d.domain[c];
      const Generator& gen = p.gens[static_cast<size_t>(g)];
      if (!v.known(gen.degree + n)) {
        unknown = true;
        break;
      }
      F.col(static_cast<Index>(c)) = domain_image(v, gen, b, n, images[static_cast<size_t>(g)]);
    }
    if (unknown) {
      m.valid_to = t - 1;
      break;
    }
    m.mats.push_back(mul(f, F, *d.section));
  }
  return m;
}

std::vector<ModuleMap> hom_space(const Presentation& p, const GradedModule& u, const GradedModule& v, int n) {
  const Field& f = u.field();
  // Unknowns: coordinates of each generator image in e_slot V_{d+n}.
  struct Unknown {
    size_t gen;
    Index coord;
  };
  std::vector<Unknown> unk;
  for (size_t g = 0; g < p.gens.size(); ++g) {
    const Generator& gen = p.gens[g];
    if (!v.known(gen.degree + n)) throw HorizonTooLow(gen.degree + n);
    for (Index j : v.slot_indices(gen.degree + n, gen.slot)) unk.push_back({g, j});
  }
  const Index m = static_cast<Index>(unk.size());
  std::vector<RowVec> rows;
  if (u.free_summands().empty()) {
    for (int t = u.lo(); t <= p.top; ++t) {
      const auto& d = p.degrees[at(t, p.lo)];
      if (d.relations.cols() == 0 || !v.known(t + n)) continue;
      const Index vt = v.dim(t + n);
      if (vt == 0) continue;
      Mat C = Mat::Zero(vt * d.relations.cols(), m);
      for (Index j = 0; j < m; ++j) {
        const auto& x = unk[static_cast<size_t>(j)];
        const Generator& gen = p.gens[x.gen];
        Vec w = Vec::Zero(v.dim(gen.degree + n));
        w(x.coord) = 1;
        Mat img = Mat::Zero(vt, d.relations.cols());
        for (size_t c = 0; c < d.domain.size(); ++c) {
          if (static_cast<size_t>(d.domain[c].first) != x.gen) continue;
          Vec col = domain_image(v, gen, d.domain[c].second, n, w);
          if (is_zero(col)) continue;
          img += col * d.relations.row(static_cast<Index>(c));
        }
        img = f.reduce(img);
        for (Index r = 0; r < d.relations.cols(); ++r) C.block(r * vt, j, vt, 1) = img.col(r);
      }
      for (Index r = 0; r < C.rows(); ++r)
        if (!is_zero(Vec(C.row(r).transpose()))) rows.push_back(C.row(r));
    }
  }
  Mat sols;
  if (rows.empty()) {
    sols = Mat::Identity(m, m);
  } else {
    Mat C(static_cast<Index>(rows.size()), m);
    for (size_t r = 0; r < rows.size(); ++r) C.row(static_cast<Index>(r)) = rows[r];
    sols = kernel(f, C);
  }
  std::vector<ModuleMap> out;
  for (Index s = 0; s < sols.cols(); ++s) {
    std::vector<Vec> images;
    for (const auto& gen : p.gens) images.push_back(Vec::Zero(v.dim(gen.degree + n)));
    for (Index j = 0; j < m; ++j) {
      const auto& x = unk[static_cast<size_t>(j)];
      images[x.gen](x.coord) = sols(j, s);
    }
    out.push_back(map_from_images(p, u, v, n, images));
  }
  return out;
}

std::vector<ModuleMap> hom_space(const GradedModule& u, const GradedModule& v, int n) {
  return hom_space(present(u), u, v, n);
}

std::vector<ModuleMap> hom_from_free(const GradedModule& u, const GradedModule& v, int n) {
  if (u.free_summands().empty() && !u.is_zero_module()) throw std::invalid_argument("hom_from_free: module is not free");
  return hom_space(u, v, n);
}

bool is_equivariant(const ModuleMap& f, const GradedModule& u, const GradedModule& v) {
  const GradedAlgebra& A = u.alg();
  const Field& fld = u.field();
  for (int t = u.lo(); t <= u.hi(); ++t) {
    const Mat* ft = f.at(t);
    if (!ft || u.dim(t) == 0) continue;
    for (int i = 0; i < A.dim(); ++i) {
      int k = A.basis(i).degree;
      const Mat* fk = f.at(t + k);
      auto au = u.action(i, t);
      auto av = v.action(i, t + f.degree);
      if (!au || !av) continue;
      if (!fk) {
        if (u.dim(t + k) == 0 && (t + k < u.lo() || u.finite())) {
          if (!is_zero(mul(fld, *av, *ft))) return false;
        }
        continue;
      }
      if (mul(fld, *av, *ft) != mul(fld, *fk, *au)) return false;
    }
  }
  return true;
}

Submodule kernel_module(const ModuleMap& f, const GradedModule& u, const GradedModule& /*v*/) {
  const Field& fld = u.field();
  std::vector<Subspace> sp;
  int complete = u.complete_to();
  if (!is_unbounded(f.valid_to)) complete = std::min(complete, f.valid_to);
  for (int t = u.lo(); t <= u.hi(); ++t) {
    const Mat* m = f.at(t);
    if (!m) break;
    sp.push_back(Subspace::span(fld, kernel(fld, *m)));
  }
  if (static_cast<int>(sp.size()) < u.hi() - u.lo() + 1) complete = std::min(complete, u.lo() + static_cast<int>(sp.size()) - 1);
  return submodule_from_subspaces(u, sp, u.lo(), complete);
}

Submodule image_module(const ModuleMap& f, const GradedModule& u, const GradedModule& v) {
  const Field& fld = u.field();
  std::vector<Subspace> sp;
  int complete = v.complete_to();
  int last = u.finite() && is_unbounded(f.valid_to) ? kUnbounded : std::min(u.hi(), f.valid_to) + f.degree;
  complete = std::min(complete, last);
  for (int t = v.lo(); t <= v.hi(); ++t) {
    if (!is_unbounded(complete) && t > complete) break;
    const Mat* m = f.at(t - f.degree);
    sp.push_back(m ? Subspace::span(fld, *m) : Subspace(fld, v.dim(t)));
  }
  return submodule_from_subspaces(v, sp, v.lo(), complete);
}

GradedModule dual(const GradedModule& m, const Involution& tau) {
  if (!m.finite()) throw InfiniteDimensional("InfiniteDimensional: the dual needs a module known to be finite");
  const GradedAlgebra& A = m.alg();
  const Field& f = m.field();
  GradedModule d(m.algebra(), -m.hi(), -m.lo(), kUnbounded);
  for (int t = d.lo(); t <= d.hi(); ++t) {
    std::vector<int> s;
    for (int x : m.slots(-t)) s.push_back(tau.slot_image[static_cast<size_t>(x)]);
    d.set_degree(t, std::move(s));
  }
  // (h.phi)(v) = phi(tau(h) v); on degree -t' the transpose of tau(h) acting on M_{-t'-k}.
  for (int t = d.lo(); t <= d.hi(); ++t) {
    if (d.dim(t) == 0) continue;
    for (int i = 0; i < A.dim(); ++i) {
      int k = A.basis(i).degree;
      int src = -t - k;
      if (m.dim(src) == 0) continue;
      Mat acc = Mat::Zero(m.dim(-t), m.dim(src));
      bool any = false;
      for (int j = 0; j < A.dim(); ++j) {
        const Rational& c = tau.matrix(j, i);
        if (c == 0) continue;
        if (const Mat* a = m.stored_action(j, src)) {
          acc += c * *a;
          any = true;
        }
      }
      if (any) d.set_action(i, t, f.reduce(Mat(acc.transpose())));
    }
  }
  return d;
}

std::vector<Subspace> socle(const GradedModule& m) {
  const GradedAlgebra& A = m.alg();
  const Field& f = m.field();
  std::vector<Subspace> out;
  for (int t = m.lo(); t <= m.hi(); ++t) {
    std::vector<RowVec> rows;
    for (const Vec& r : A.radical()) {
      int target = t + A.degree_of(r);
      if (m.dim(target) == 0 || m.dim(t) == 0) continue;
      Mat acc = Mat::Zero(m.dim(target), m.dim(t));
      for (int i = 0; i < A.dim(); ++i)
        if (r(i) != 0)
          if (const Mat* a = m.stored_action(i, t)) acc += r(i) * *a;
      acc = f.reduce(acc);
      for (Index k = 0; k < acc.rows(); ++k) rows.push_back(acc.row(k));
    }
    Mat C(static_cast<Index>(rows.size()), m.dim(t));
    for (size_t k = 0; k < rows.size(); ++k) C.row(static_cast<Index>(k)) = rows[k];
    out.push_back(rows.empty() ? Subspace::span(f, Mat::Identity(m.dim(t), m.dim(t))) : Subspace::span(f, kernel(f, C)));
  }
  return out;
}

bool certify_finite(GradedModule& m, int generated_by) {
  if (m.finite()) return true;
  const int g = m.alg().gen_bound();
  if (g <= 0 || !m.alg().positively_graded()) return false;
  const int top = std::min(m.hi(), m.complete_to());
  for (int s = std::max(generated_by + 1, m.lo()); s + g - 1 <= top; ++s) {
    bool band = true;
    for (int t = s; t < s + g && band; ++t) band = m.dim(t) == 0;
    if (!band) continue;
    int last = m.lo() - 1;
    for (int t = m.lo(); t < s; ++t)
      if (m.dim(t) != 0) last = t;
    m.trim_to(last);
    m.set_complete(kUnbounded);
    return true;
  }
  return false;
}

}  // namespace laurentia
