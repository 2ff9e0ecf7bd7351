#include "laurentia/strat.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace laurentia {

namespace {

int algebra_top(const GradedAlgebra& a) { return a.finite() ? a.w_hi() : std::min(a.w_hi(), a.complete_to()); }

int sat_add(int a, int b) {
  if (is_unbounded(a) || is_unbounded(b)) return kUnbounded;
  return a + b;
}

Vec unit(Index n, Index k) {
  Vec v = Vec::Zero(n);
  v(k) = 1;
  return v;
}

std::string horizon_text(int h) { return is_unbounded(h) ? "exact" : "verified to degree " + std::to_string(h); }

// Degree-n coordinates of the basis elements of a, for converting to and from full vectors.
struct DegreeIndex {
  std::vector<int> pos;  // basis index -> position in its degree
  explicit DegreeIndex(const GradedAlgebra& a) : pos(static_cast<size_t>(a.dim()), -1) {
    for (int n = a.w_lo(); n <= a.w_hi(); ++n) {
      const auto& idx = a.in_degree(n);
      for (size_t k = 0; k < idx.size(); ++k) pos[static_cast<size_t>(idx[k])] = static_cast<int>(k);
    }
  }
};

Vec restrict_degree(const GradedAlgebra& a, const Vec& full, int n) {
  const auto& idx = a.in_degree(n);
  Vec out(static_cast<Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) out(static_cast<Index>(k)) = full(idx[k]);
  return out;
}

Vec expand_degree(const GradedAlgebra& a, const Vec& part, int n) {
  Vec out = Vec::Zero(a.dim());
  const auto& idx = a.in_degree(n);
  for (size_t k = 0; k < idx.size(); ++k) out(idx[k]) = part(static_cast<Index>(k));
  return out;
}

// Number of basis elements of degree t - shift with right slot designated(cls).
int part_dim(const GradedAlgebra& a, int cls, int shift, int t) {
  int des = a.designated(cls), n = 0;
  for (int b : a.in_degree(t - shift))
    if (a.basis(b).right == des) ++n;
  return n;
}

// Coefficients of prod_i 1/(1 - q^{d_i}) through degree top.
std::vector<long> hilbert_of_polynomial(const std::vector<int>& degs, int top) {
  std::vector<long> c(static_cast<size_t>(top + 1), 0);
  c[0] = 1;
  for (int d : degs)
    for (int t = d; t <= top; ++t) c[static_cast<size_t>(t)] += c[static_cast<size_t>(t - d)];
  return c;
}

// EndoAlgebra on the basis elements of eHe (e designated for cls), with the algebra product.
EndoAlgebra corner_algebra(const GradedAlgebra& h, int cls) {
  const int des = h.designated(cls);
  EndoAlgebra b;
  b.pi = cls;
  b.complete = h.finite() ? kUnbounded : algebra_top(h);
  std::vector<int> elems;
  for (int n = h.w_lo(); n <= algebra_top(h); ++n)
    for (int x : h.in_degree(n))
      if (h.basis(x).left == des && h.basis(x).right == des) {
        elems.push_back(x);
        b.degrees.push_back(n);
      }
  std::vector<int> where(static_cast<size_t>(h.dim()), -1);
  for (size_t k = 0; k < elems.size(); ++k) where[static_cast<size_t>(elems[k])] = static_cast<int>(k);
  int zero_count = 0;
  for (int d : b.degrees) {
    if (d < 0 && b.connected) {
      b.connected = false;
      b.witness = "basis element in degree " + std::to_string(d);
    }
    if (d == 0) ++zero_count;
  }
  if (b.connected && zero_count != 1) {
    b.connected = false;
    b.witness = "degree-0 part has dimension " + std::to_string(zero_count);
  }
  for (int i : elems)
    for (int j : elems) {
      const auto& p = h.product(i, j);
      if (p.above) {
        b.table.emplace_back(std::nullopt);
        continue;
      }
      Vec v = Vec::Zero(b.dim());
      for (const auto& [k, c] : p.value) v(where[static_cast<size_t>(k)]) = c;
      b.table.emplace_back(v);
    }
  return b;
}

// Rank over B of a span X of basis elements under one-sided multiplication by B_+.
LaurentPoly one_sided_rank(const GradedAlgebra& h, const std::vector<int>& x, const std::vector<int>& bplus, bool right,
                           int complete) {
  const Field& f = h.field();
  LaurentPoly r(complete);
  for (int n = h.w_lo(); n <= algebra_top(h); ++n) {
    if (!is_unbounded(complete) && n > complete) break;
    std::vector<int> xs;
    for (int e : x)
      if (h.basis(e).degree == n) xs.push_back(e);
    if (xs.empty()) continue;
    Subspace s(f, static_cast<Index>(h.in_degree(n).size()));
    for (int e : x)
      for (int b : bplus) {
        if (h.basis(e).degree + h.basis(b).degree != n) continue;
        const auto& p = right ? h.product(e, b) : h.product(b, e);
        if (p.above || p.value.empty()) continue;
        Vec full = Vec::Zero(h.dim());
        for (const auto& [k, c] : p.value) full(k) = c;
        s.insert(restrict_degree(h, full, n));
      }
    long k = static_cast<long>(xs.size()) - static_cast<long>(s.dim());
    if (k) r.set(n, Integer(k));
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// OrderSpec

OrderSpec::OrderSpec(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& covers)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw OrderError("the label set must be nonempty");
  const size_t n = labels_.size();
  lt_.assign(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : covers) {
    int i = index(a), j = index(b);
    covers_.emplace_back(i, j);
    lt_[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
  }
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (lt_[i][k])
        for (size_t j = 0; j < n; ++j)
          if (lt_[k][j]) lt_[i][j] = true;
  for (size_t i = 0; i < n; ++i)
    if (lt_[i][i]) throw OrderError("the cover relations contain a cycle through '" + labels_[i] + "'");
}

int OrderSpec::index(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  throw OrderError("unknown label '" + label + "' in the order");
}

std::set<int> OrderSpec::below_eq(int p) const {
  std::set<int> s;
  for (int i = 0; i < size(); ++i)
    if (leq(i, p)) s.insert(i);
  return s;
}

std::set<int> OrderSpec::below(int p) const {
  std::set<int> s = below_eq(p);
  s.erase(p);
  return s;
}

std::set<int> OrderSpec::above_eq(int p) const {
  std::set<int> s;
  for (int i = 0; i < size(); ++i)
    if (leq(p, i)) s.insert(i);
  return s;
}

int OrderSpec::length(const std::set<int>& s) const {
  std::vector<int> ext = linear_extension();
  std::vector<int> len(static_cast<size_t>(size()), 0);
  int best = 0;
  for (int v : ext) {
    if (!s.count(v)) continue;
    for (int u : s)
      if (less(u, v)) len[static_cast<size_t>(v)] = std::max(len[static_cast<size_t>(v)], len[static_cast<size_t>(u)] + 1);
    best = std::max(best, len[static_cast<size_t>(v)]);
  }
  return best;
}

int OrderSpec::length() const {
  std::set<int> all;
  for (int i = 0; i < size(); ++i) all.insert(i);
  return length(all);
}

std::vector<int> OrderSpec::linear_extension() const {
  std::vector<int> out;
  std::vector<bool> taken(static_cast<size_t>(size()), false);
  while (static_cast<int>(out.size()) < size()) {
    for (int i = 0; i < size(); ++i) {
      if (taken[static_cast<size_t>(i)]) continue;
      bool ready = true;
      for (int j = 0; j < size() && ready; ++j)
        if (less(j, i) && !taken[static_cast<size_t>(j)]) ready = false;
      if (ready) {
        taken[static_cast<size_t>(i)] = true;
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

OrderSpec OrderSpec::restricted(const std::vector<std::string>& labels) const {
  std::vector<std::pair<std::string, std::string>> cov;
  for (const auto& a : labels)
    for (const auto& b : labels)
      if (less(index(a), index(b))) cov.emplace_back(a, b);
  return OrderSpec(labels, cov);
}

// ---------------------------------------------------------------------------
// Endomorphism algebras and class membership

std::vector<int> EndoAlgebra::in_degree(int t) const {
  std::vector<int> out;
  for (int k = 0; k < dim(); ++k)
    if (degrees[static_cast<size_t>(k)] == t) out.push_back(k);
  return out;
}

LaurentPoly EndoAlgebra::dim_q() const {
  LaurentPoly p;
  for (int d : degrees)
    if (is_unbounded(complete) || d <= complete) p.add_to(d, 1);
  return p.truncated(complete);
}

ClassReport class_membership(const EndoAlgebra& b, const std::string& cls) {
  ClassReport r;
  r.verdict.horizon = b.complete;
  if (cls == "any") return r;
  if (cls != "F" && cls != "connected" && cls != "polynomial")
    throw std::invalid_argument("unknown class '" + cls + "' (expected F, connected, polynomial or any)");
  if (!b.connected) {
    r.verdict.fail("B is not connected: " + b.witness);
    return r;
  }
  if (cls == "connected") return r;
  if (cls == "F") {
    for (int d : b.degrees)
      if (d > 0) {
        r.verdict.fail("B is not F: nonzero in degree " + std::to_string(d));
        break;
      }
    return r;
  }
  // polynomial: commutative, and the Hilbert series of its minimal generators.
  const Field f;
  for (int i = 0; i < b.dim(); ++i)
    for (int j = i + 1; j < b.dim(); ++j) {
      const auto& x = b.product(i, j);
      const auto& y = b.product(j, i);
      if (x && y && *x != *y) {
        r.verdict.fail("B is not commutative in degree " +
                       std::to_string(b.degrees[static_cast<size_t>(i)] + b.degrees[static_cast<size_t>(j)]));
        return r;
      }
    }
  const int maxdeg = b.degrees.empty() ? 0 : b.degrees.back();
  const int gen_top = is_unbounded(b.complete) ? maxdeg : std::min(maxdeg, b.complete);
  for (int t = 1; t <= gen_top; ++t) {
    auto here = b.in_degree(t);
    if (here.empty()) continue;
    Subspace sq(b.table.empty() ? Field() : f, b.dim());
    for (int i = 0; i < b.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j) {
        int di = b.degrees[static_cast<size_t>(i)], dj = b.degrees[static_cast<size_t>(j)];
        if (di < 1 || dj < 1 || di + dj != t) continue;
        if (const auto& p = b.product(i, j)) sq.insert(*p);
      }
    for (int k : here)
      if (sq.insert(unit(b.dim(), k))) {
        r.generator_degrees.push_back(t);
        r.generators.push_back(unit(b.dim(), k));
      }
  }
  int top = b.complete;
  if (is_unbounded(top)) top = maxdeg + (r.generator_degrees.empty() ? 0 : r.generator_degrees.back());
  auto expect = hilbert_of_polynomial(r.generator_degrees, std::max(top, 0));
  for (int t = 0; t <= top; ++t) {
    long have = static_cast<long>(b.in_degree(t).size());
    if (have != expect[static_cast<size_t>(t)]) {
      std::ostringstream os;
      os << "B is not polynomial: Hilbert series differs in degree " << t << " (expected "
         << expect[static_cast<size_t>(t)] << ", found " << have << ")";
      r.verdict.fail(os.str());
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Right modules over B

RankReport right_rank(const RightModule& m, const EndoAlgebra& b) {
  const Field f;
  RankReport r;
  if (!b.connected) {
    r.free.fail("B is not connected");
    r.fgen.fail("B is not connected");
    return r;
  }
  const bool m_finite = is_unbounded(m.complete);
  int first = m.lo;
  while (first < m.hi && m.dim(first) == 0) ++first;
  int hgen = std::min(m.complete, sat_add(b.complete, first));
  if (m_finite && hgen >= m.hi) hgen = kUnbounded;
  const int gen_top = is_unbounded(hgen) ? m.hi : std::min(m.hi, hgen);

  std::vector<std::pair<int, Vec>> gens;
  for (int t = m.lo; t <= gen_top; ++t) {
    if (m.dim(t) == 0) continue;
    Subspace s(f, m.dim(t));
    for (int src = m.lo; src < t; ++src)
      for (int k : b.in_degree(t - src))
        for (Index j = 0; j < m.dim(src); ++j)
          if (auto w = m.act(src, unit(m.dim(src), j), k)) s.insert(*w);
    for (Index j = 0; j < m.dim(t); ++j)
      if (s.insert(unit(m.dim(t), j))) gens.emplace_back(t, unit(m.dim(t), j));
  }
  r.rank = LaurentPoly(hgen);
  for (const auto& [d, v] : gens) {
    r.rank.add_to(d, 1);
    r.generator_degrees.push_back(d);
  }
  r.rank = r.rank.truncated(hgen);
  r.fgen.horizon = hgen;
  r.fgen.witness = "no new minimal generators through degree " + std::string(is_unbounded(hgen) ? "infinity" : std::to_string(hgen));

  // Injectivity and surjectivity of the sum of shifted copies of B.
  int top;
  const int bmax = b.degrees.empty() ? 0 : b.degrees.back();
  const int gmin = gens.empty() ? m.lo : gens.front().first;
  const int gmax = gens.empty() ? m.hi : gens.back().first;
  if (m_finite && is_unbounded(b.complete)) top = std::max(m.hi, gmax + bmax);
  else if (m_finite) top = gmin + b.complete;
  else top = std::min(m.complete, sat_add(b.complete, gmin));
  top = std::min(top, is_unbounded(hgen) ? top : std::max(hgen, m.hi));
  r.free.horizon = m_finite && is_unbounded(b.complete) ? kUnbounded : top;
  for (int t = m.lo; t <= top; ++t) {
    std::vector<Vec> cols;
    bool unknown = false;
    for (const auto& [d, v] : gens)
      for (int k : b.in_degree(t - d)) {
        auto w = m.act(d, v, k);
        if (!w) {
          unknown = true;
          break;
        }
        cols.push_back(w->size() ? *w : Vec(Vec::Zero(m.dim(t))));
      }
    if (unknown) {
      r.free.horizon = t - 1;
      break;
    }
    if (static_cast<int>(cols.size()) != m.dim(t)) {
      std::ostringstream os;
      os << "degree " << t << ": dimension " << m.dim(t) << " but rank times B gives " << cols.size();
      r.free.fail(os.str());
      r.free.horizon = t;
      break;
    }
    if (cols.empty()) continue;
    Mat c(m.dim(t), static_cast<Index>(cols.size()));
    for (size_t k = 0; k < cols.size(); ++k) c.col(static_cast<Index>(k)) = cols[k];
    if (rank(f, c) != static_cast<Index>(cols.size())) {
      r.free.fail("degree " + std::to_string(t) + ": the generators satisfy a relation over B");
      r.free.horizon = t;
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Standard modules

Vec algebra_element(const GradedAlgebra& a, int cls, int shift, int t, const Vec& v) {
  const int des = a.designated(cls);
  Vec x = Vec::Zero(a.dim());
  Index k = 0;
  for (int b : a.in_degree(t - shift))
    if (a.basis(b).right == des) x(b) = v(k++);
  return x;
}

GradedModule proper_standard(const AlgebraPtr& a, int pi, const OrderSpec& order, bool* finite) {
  GradedModule p = projective(a, pi);
  Submodule rad = radical_submodule(p);
  const std::set<int> lower = order.below(pi);
  std::vector<std::pair<int, Vec>> gens;
  for (int t = p.lo(); t <= rad.module.hi(); ++t) {
    const Subspace sp = rad.space(t, p.dim(t));
    for (Index k = 0; k < sp.dim(); ++k) {
      int slot = p.slots(t)[static_cast<size_t>(sp.pivots()[static_cast<size_t>(k)])];
      if (!lower.count(a->slot_class(slot))) gens.emplace_back(t, sp.row(k));
    }
  }
  Submodule o = submodule_generated(p, gens);
  // Generated by the radical rows outside the lower set, so exact only where rad is.
  if (!rad.module.finite()) o.module.set_complete(std::min(o.module.complete_to(), rad.module.complete_to()));
  GradedModule bar = quotient_module(p, o).module;
  bool fin = false;
  if (lower.empty()) {
    // P / rad P is a module over the finite-dimensional H/N.
    int last = bar.lo() - 1;
    for (int t = bar.lo(); t <= bar.hi(); ++t)
      if (bar.dim(t)) last = t;
    bar.trim_to(last);
    bar.set_complete(kUnbounded);
    fin = true;
  } else {
    fin = certify_finite(bar, 0);
  }
  if (finite) *finite = fin;
  return bar;
}

EndoAlgebra endo_algebra(const StandardData& d) {
  const GradedModule& D = d.delta;
  const GradedAlgebra& A = D.alg();
  const int des = A.designated(d.pi);
  EndoAlgebra b;
  b.pi = d.pi;
  b.complete = D.complete_to();
  std::vector<std::pair<int, Index>> where;
  for (int t = D.lo(); t <= D.hi(); ++t)
    for (Index j : D.slot_indices(t, des)) {
      b.degrees.push_back(t);
      where.emplace_back(t, j);
    }
  int zero_count = 0;
  for (int t : b.degrees) {
    if (t < 0 && b.connected) {
      b.connected = false;
      b.witness = "End(Delta) is nonzero in degree " + std::to_string(t);
    }
    if (t == 0) ++zero_count;
  }
  if (b.connected && zero_count != 1) {
    b.connected = false;
    b.witness = "degree-0 endomorphisms have dimension " + std::to_string(zero_count);
  }
  for (int k = 0; k < b.dim(); ++k) {
    auto [tk, pk] = where[static_cast<size_t>(k)];
    Vec lifted = mul(A.field(), d.to_delta.lifting(tk), unit(D.dim(tk), pk));
    Vec x = algebra_element(A, d.pi, 0, tk, lifted);
    for (int l = 0; l < b.dim(); ++l) {
      auto [tl, pl] = where[static_cast<size_t>(l)];
      int t = tk + tl;
      if (!D.known(t)) {
        b.table.emplace_back(std::nullopt);
        continue;
      }
      Vec out = Vec::Zero(b.dim());
      if (t <= D.hi()) {
        auto y = D.apply(x, tl, unit(D.dim(tl), pl));
        if (!y) {
          b.table.emplace_back(std::nullopt);
          continue;
        }
        for (int m : b.in_degree(t)) out(m) = (*y)(where[static_cast<size_t>(m)].second);
      }
      b.table.emplace_back(out);
    }
  }
  return b;
}

StandardData standard_module(const AlgebraPtr& a, int pi, const OrderSpec& order) {
  StandardData d;
  d.pi = pi;
  d.P = projective(a, pi);
  Truncation t = truncate_sigma(d.P, order.below_eq(pi));
  d.K = std::move(t.O);
  d.to_delta = std::move(t.Q);
  d.delta = d.to_delta.module;
  certify_finite(d.delta, 0);
  d.bar_delta = proper_standard(a, pi, order, &d.bar_finite);
  d.B = endo_algebra(d);
  return d;
}

Stratification::Stratification(AlgebraPtr a, OrderSpec order) : alg_(std::move(a)) {
  order_ = order.restricted(alg_->classes());
  data_.resize(alg_->classes().size());
  detail::parallel_for(size(), [&](int pi) { data_[static_cast<size_t>(pi)] = standard_module(alg_, pi, order_); });
}

namespace {

// Delta(pi) restricted to the slots of one class (or all slots when sigma < 0).
RightModule corner_module(const Stratification& s, int sigma, int pi) {
  const StandardData& d = s.at(pi);
  const GradedModule& D = d.delta;
  const GradedAlgebra& A = s.alg();
  const int ds = sigma < 0 ? -1 : A.designated(sigma), dp = A.designated(pi);
  auto coords = [&D, ds](int t) {
    if (ds >= 0) return D.slot_indices(t, ds);
    std::vector<Index> all(static_cast<size_t>(D.dim(t)));
    for (Index k = 0; k < D.dim(t); ++k) all[static_cast<size_t>(k)] = k;
    return all;
  };
  RightModule m;
  m.lo = D.lo();
  m.hi = D.hi();
  m.complete = D.complete_to();
  for (int t = m.lo; t <= m.hi; ++t) m.dims.push_back(static_cast<int>(coords(t).size()));
  m.act = [&d, &A, dp, coords](int t, const Vec& v, int b) -> std::optional<Vec> {
    const GradedModule& D = d.delta;
    auto idx = coords(t);
    Vec full = Vec::Zero(D.dim(t));
    for (size_t k = 0; k < idx.size(); ++k) full(idx[k]) = v(static_cast<Index>(k));
    Vec x = algebra_element(A, d.pi, 0, t, mul(A.field(), d.to_delta.lifting(t), full));
    const int tb = d.B.degrees[static_cast<size_t>(b)];
    auto bpos = D.slot_indices(tb, dp);
    auto same = d.B.in_degree(tb);
    Index j = bpos[static_cast<size_t>(std::find(same.begin(), same.end(), b) - same.begin())];
    auto y = D.apply(x, tb, unit(D.dim(tb), j));
    if (!y) return std::nullopt;
    auto out_idx = coords(t + tb);
    Vec out(static_cast<Index>(out_idx.size()));
    for (size_t k = 0; k < out_idx.size(); ++k) out(static_cast<Index>(k)) = (*y)(out_idx[k]);
    return out;
  };
  return m;
}

}  // namespace

RightModule hom_module(const Stratification& s, int sigma, int pi) { return corner_module(s, sigma, pi); }

RightModule delta_module(const Stratification& s, int pi) { return corner_module(s, -1, pi); }

RankReport free_rank_check(const Stratification& s, int sigma, int pi) {
  return right_rank(hom_module(s, sigma, pi), s.at(pi).B);
}

// ---------------------------------------------------------------------------
// Delta filtrations

Filtration delta_filtration(const GradedModule& v, const Stratification& s) {
  const GradedAlgebra& A = s.alg();
  const OrderSpec& order = s.order();
  const int n = s.size();
  Filtration out;
  out.multiplicity.assign(static_cast<size_t>(n), LaurentPoly());

  // Grothendieck pre-check, maximal labels first.
  {
    std::vector<LaurentPoly> cand(static_cast<size_t>(n));
    std::vector<int> ext = order.linear_extension();
    for (auto it = ext.rbegin(); it != ext.rend(); ++it) {
      int sg = *it;
      LaurentPoly rem = graded_multiplicity(v, sg);
      for (int rho = 0; rho < n; ++rho)
        if (order.less(sg, rho)) rem = rem - cand[static_cast<size_t>(rho)] * graded_multiplicity(s.at(rho).delta, sg);
      auto q = exact_divide(rem, s.at(sg).B.dim_q());
      if (auto* nd = std::get_if<NotDivisible>(&q)) {
        out.ok = false;
        out.fail_pi = sg;
        out.fail_degree = nd->degree;
        out.witness = "Grothendieck check: multiplicity of Delta(" + order.label(sg) + ") is not a Laurent polynomial (degree " +
                      std::to_string(nd->degree) + ")";
        return out;
      }
      LaurentPoly m = std::get<LaurentPoly>(q);
      if (!is_nonnegative(m)) {
        int bad = 0;
        for (const auto& [d, c] : m.coeffs())
          if (c < 0) {
            bad = d;
            break;
          }
        out.ok = false;
        out.fail_pi = sg;
        out.fail_degree = bad;
        out.witness = "Grothendieck check: multiplicity of Delta(" + order.label(sg) + ") would be negative in degree " +
                      std::to_string(bad) + ": " + m.str();
        return out;
      }
      cand[static_cast<size_t>(sg)] = m;
    }
  }

  GradedModule r = v;
  int guard = 0;
  for (int t = v.lo(); t <= v.hi(); ++t) guard += v.dim(t);
  for (int step = 0; step <= guard + 1; ++step) {
    bool zero = true;
    for (int t = r.lo(); t <= r.hi() && zero; ++t) zero = r.dim(t) == 0;
    if (zero) {
      out.horizon = r.complete_to();
      for (auto& m : out.multiplicity) m = m.truncated(out.horizon);
      return out;
    }
    int exact = 0;
    auto gens = minimal_generators(r, &exact);
    if (gens.empty()) {
      out.ok = false;
      out.witness = "remaining module has no generators through degree " + std::to_string(exact);
      return out;
    }
    // Minimal label among the head constituents, then declaration order, then degree.
    int sg = -1;
    for (const auto& g : gens) {
      int c = A.slot_class(g.slot);
      bool minimal = true;
      for (const auto& h : gens)
        if (order.less(A.slot_class(h.slot), c)) minimal = false;
      if (minimal && (sg < 0 || c < sg)) sg = c;
    }
    const Generator* pick = nullptr;
    for (const auto& g : gens)
      if (A.slot_class(g.slot) == sg && (!pick || g.degree < pick->degree)) pick = &g;
    const int m = pick->degree;
    const GradedModule& target = s.at(sg).delta;
    std::vector<ModuleMap> maps;
    try {
      maps = hom_space(r, target, -m);
    } catch (const HorizonTooLow& e) {
      out.ok = false;
      out.fail_pi = sg;
      out.fail_degree = m;
      out.witness = "horizon too low to map onto Delta(" + order.label(sg) + ") (degree " + std::to_string(e.needed_degree) + ")";
      return out;
    }
    auto top = target.slot_indices(0, A.designated(sg));
    const ModuleMap* f = nullptr;
    for (const auto& h : maps) {
      const Mat* fm = h.at(m);
      if (!fm || top.empty()) continue;
      Vec img = mul(A.field(), *fm, pick->v);
      if (img(top.front()) != 0) {
        f = &h;
        break;
      }
    }
    if (!f) {
      out.ok = false;
      out.fail_pi = sg;
      out.fail_degree = m;
      out.witness = "head L(" + order.label(sg) + ") in degree " + std::to_string(m) + " does not lift to a map onto q^" +
                    std::to_string(m) + " Delta(" + order.label(sg) + ")";
      return out;
    }
    out.factors.push_back({m, sg});
    out.multiplicity[static_cast<size_t>(sg)].add_to(m, 1);
    Submodule k = kernel_module(*f, r, target);
    r = std::move(k.module);
  }
  out.ok = false;
  out.witness = "filtration did not terminate";
  return out;
}

// ---------------------------------------------------------------------------
// Axioms

StratReport check_axioms(const Stratification& s, const std::string& cls) {
  const OrderSpec& order = s.order();
  const int n = s.size();
  StratReport rep;
  rep.cls = cls;
  rep.per_pi.resize(static_cast<size_t>(n));
  rep.decomposition.assign(static_cast<size_t>(n), std::vector<LaurentPoly>(static_cast<size_t>(n)));
  rep.p_delta.assign(static_cast<size_t>(n), std::vector<LaurentPoly>(static_cast<size_t>(n)));
  std::vector<Filtration> pfilt(static_cast<size_t>(n));

  detail::parallel_for(n, [&](int pi) {
    const StandardData& d = s.at(pi);
    PiReport& r = rep.per_pi[static_cast<size_t>(pi)];
    r.dim_delta = d.delta.dim_q();
    r.dim_bar_delta = d.bar_delta.dim_q();
    r.dim_B = d.B.dim_q();
    r.cls = class_membership(d.B, cls);

    r.k_filtration = delta_filtration(d.K.module, s);
    r.sc1.horizon = r.k_filtration.horizon;
    if (!r.k_filtration.ok) {
      r.sc1.fail("SC1 fails at π = " + order.label(pi) + ": K(" + order.label(pi) + ") has no Δ-filtration (" +
                 r.k_filtration.witness + ")");
    } else {
      for (const auto& f : r.k_filtration.factors)
        if (!order.less(pi, f.pi))
          r.sc1.fail("SC1 fails at π = " + order.label(pi) + ": factor Δ(" + order.label(f.pi) + ") with " +
                     order.label(f.pi) + (order.less(f.pi, pi) ? " < " : " not > ") + order.label(pi));
    }

    r.rank.resize(static_cast<size_t>(n));
    for (int sg = 0; sg < n; ++sg) {
      RankReport rr = free_rank_check(s, sg, pi);
      r.rank[static_cast<size_t>(sg)] = rr.rank;
      r.hwc.horizon = std::min(r.hwc.horizon, rr.free.horizon);
      r.fgen.horizon = std::min(r.fgen.horizon, rr.fgen.horizon);
      if (!rr.free.pass)
        r.hwc.fail("HWC fails at (σ, π) = (" + order.label(sg) + ", " + order.label(pi) + "): " + rr.free.witness);
      if (!rr.fgen.pass)
        r.fgen.fail("FGen fails at (σ, π) = (" + order.label(sg) + ", " + order.label(pi) + "): " + rr.fgen.witness);
    }

    for (int sg = 0; sg < n; ++sg) {
      LaurentPoly dl = graded_multiplicity(d.delta, sg);
      rep.decomposition[static_cast<size_t>(pi)][static_cast<size_t>(sg)] = dl;
      if (!dl.agrees_with(d.B.dim_q() * graded_multiplicity(d.bar_delta, sg)))
        r.grothendieck.fail("[Δ(" + order.label(pi) + "):L(" + order.label(sg) + ")] differs from dim B · [Δ̄:L]");
      if (!dl.is_zero() && !order.leq(sg, pi))
        r.grothendieck.fail("Δ(" + order.label(pi) + ") has the factor L(" + order.label(sg) + ") outside the lower set");
    }
    if (!graded_multiplicity(d.delta, pi).agrees_with(d.B.dim_q()))
      r.grothendieck.fail("[Δ(" + order.label(pi) + "):L(" + order.label(pi) + ")] differs from dim B");

    pfilt[static_cast<size_t>(pi)] = delta_filtration(d.P, s);
  });

  for (int pi = 0; pi < n; ++pi) {
    const auto& f = pfilt[static_cast<size_t>(pi)];
    if (f.ok) rep.p_delta[static_cast<size_t>(pi)] = f.multiplicity;
  }

  bool sc1 = true, sc2 = true, hwc = true, fgen = true;
  int h = kUnbounded;
  for (int pi = 0; pi < n; ++pi) {
    const PiReport& r = rep.per_pi[static_cast<size_t>(pi)];
    if (!r.sc1.pass) {
      sc1 = false;
      rep.witnesses.push_back(r.sc1.witness);
    }
    h = std::min({h, r.sc1.horizon, r.cls.verdict.horizon, r.hwc.horizon});
  }
  for (int pi = 0; pi < n; ++pi) {
    const PiReport& r = rep.per_pi[static_cast<size_t>(pi)];
    if (!r.cls.verdict.pass) {
      sc2 = false;
      rep.witnesses.push_back("SC2 fails at π = " + order.label(pi) + ": " + r.cls.verdict.witness);
    }
  }
  for (int pi = 0; pi < n; ++pi) {
    const PiReport& r = rep.per_pi[static_cast<size_t>(pi)];
    if (!r.hwc.pass) {
      hwc = false;
      rep.witnesses.push_back(r.hwc.witness);
    }
    if (!r.fgen.pass) {
      fgen = false;
      rep.witnesses.push_back(r.fgen.witness);
    }
  }
  rep.horizon = h;
  if (sc1 && sc2 && hwc) {
    rep.pass = true;
    rep.verdict = cls + " highest weight, " + horizon_text(h);
  } else if (sc1 && sc2 && fgen) {
    rep.weak = true;
    rep.verdict = "weakly " + cls + " highest weight, " + horizon_text(h);
  } else {
    rep.verdict = "not " + cls + " highest weight";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// BGG reciprocity

BggReport bgg_check(const Stratification& s, const Involution* tau) {
  const OrderSpec& order = s.order();
  const GradedAlgebra& A = s.alg();
  const int n = s.size();
  BggReport rep;
  rep.left.assign(static_cast<size_t>(n), std::vector<LaurentPoly>(static_cast<size_t>(n)));
  rep.right = rep.left;

  std::vector<Filtration> filt(static_cast<size_t>(n));
  detail::parallel_for(n, [&](int pi) { filt[static_cast<size_t>(pi)] = delta_filtration(s.at(pi).P, s); });
  for (int pi = 0; pi < n; ++pi) {
    const auto& f = filt[static_cast<size_t>(pi)];
    if (!f.ok) {
      rep.pass = false;
      rep.witnesses.push_back("P(" + order.label(pi) + ") has no Δ-filtration: " + f.witness);
      continue;
    }
    rep.left[static_cast<size_t>(pi)] = f.multiplicity;
  }

  auto op = std::make_shared<GradedAlgebra>(opposite(A));
  for (int sg = 0; sg < n; ++sg) {
    GradedModule bar_op = proper_standard(op, sg, order);
    for (int pi = 0; pi < n; ++pi) rep.right[static_cast<size_t>(pi)][static_cast<size_t>(sg)] = graded_multiplicity(bar_op, pi);
  }
  auto compare = [&](const std::vector<std::vector<LaurentPoly>>& rhs, const std::string& what) {
    for (int pi = 0; pi < n; ++pi)
      for (int sg = 0; sg < n; ++sg) {
        const LaurentPoly& l = rep.left[static_cast<size_t>(pi)][static_cast<size_t>(sg)];
        const LaurentPoly& r = rhs[static_cast<size_t>(pi)][static_cast<size_t>(sg)];
        rep.horizon = std::min({rep.horizon, l.valid_to(), r.valid_to()});
        if (!l.agrees_with(r)) {
          rep.pass = false;
          rep.witnesses.push_back("(P(" + order.label(pi) + "):Δ(" + order.label(sg) + "))_q = " + l.str() + " but " + what +
                                  " = " + r.str());
        }
      }
  };
  compare(rep.right, "[∇̄(" + std::string("σ") + "):L(π)]_{q^-1}");

  if (tau) {
    rep.tau_checked = true;
    if (!is_balanced(A, *tau)) {
      rep.pass = false;
      for (size_t sl = 0; sl < tau->slot_image.size(); ++sl)
        if (A.slot_class(tau->slot_image[sl]) != A.slot_class(static_cast<int>(sl))) {
          rep.witnesses.push_back("NotBalanced: τ moves the class " + A.classes()[static_cast<size_t>(A.slot_class(static_cast<int>(sl)))]);
          break;
        }
      return rep;
    }
    rep.right_tau.assign(static_cast<size_t>(n), std::vector<LaurentPoly>(static_cast<size_t>(n)));
    for (int sg = 0; sg < n; ++sg)
      for (int pi = 0; pi < n; ++pi)
        rep.right_tau[static_cast<size_t>(pi)][static_cast<size_t>(sg)] = graded_multiplicity(s.at(sg).bar_delta, pi);
    compare(rep.right_tau, "[Δ̄(σ):L(π)]_q");

    for (int sg = 0; sg < n; ++sg) {
      const StandardData& d = s.at(sg);
      if (!d.bar_finite) {
        rep.pass = false;
        rep.witnesses.push_back("Δ̄(" + order.label(sg) + ") is not certified finite within the window");
        continue;
      }
      GradedModule nabla = dual(d.bar_delta, *tau);
      auto soc = socle(nabla);
      int total = 0;
      bool at_top = false;
      for (int t = nabla.lo(); t <= nabla.hi(); ++t) {
        const Subspace& sp = soc[static_cast<size_t>(t - nabla.lo())];
        total += static_cast<int>(sp.dim());
        if (t == 0 && sp.dim() == 1) {
          auto idx = nabla.slot_indices(0, A.designated(sg));
          at_top = !idx.empty() && sp.contains(unit(nabla.dim(0), idx.front()));
        }
      }
      if (total != 1 || !at_top) {
        rep.pass = false;
        rep.witnesses.push_back("socle of ∇̄(" + order.label(sg) + ") is not L(" + order.label(sg) + ")");
      }
      for (int pi = 0; pi < n; ++pi) {
        const GradedModule& delta = s.at(pi).delta;
        for (int deg = nabla.lo(); deg <= nabla.hi(); ++deg) {
          size_t dim = hom_space(delta, nabla, deg).size();
          size_t want = (pi == sg && deg == 0) ? 1 : 0;
          if (dim != want) {
            rep.pass = false;
            rep.witnesses.push_back("dim Hom(Δ(" + order.label(pi) + "), ∇̄(" + order.label(sg) + "))_" + std::to_string(deg) +
                                    " = " + std::to_string(dim));
          }
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Heredity chains

HeredityChain heredity_chain(const AlgebraPtr& a, const OrderSpec& order_in, const std::string& cls) {
  const OrderSpec order = order_in.restricted(a->classes());
  HeredityChain hc;
  hc.extension = order.linear_extension();
  AlgebraPtr cur = a;
  for (int k = order.size() - 1; k >= 0; --k) {
    const std::string label = order.label(hc.extension[static_cast<size_t>(k)]);
    const int pi = order.index(label);
    const GradedAlgebra& H = *cur;
    const Field& f = H.field();
    ChainLayer L;
    L.label = label;
    L.algebra = cur;
    auto found = std::find(H.classes().begin(), H.classes().end(), label);
    if (found == H.classes().end()) {
      L.si2.fail("the idempotent of " + label + " already lies in an earlier layer");
      hc.layers.push_back(std::move(L));
      hc.pass = false;
      hc.witness = "layer " + std::to_string(hc.layers.size()) + " (" + label + "): " + hc.layers.back().si2.witness;
      break;
    }
    const int c = static_cast<int>(found - H.classes().begin());
    const int des = H.designated(c);
    const int top = algebra_top(H);
    DegreeIndex di(H);

    // J = H e H, degreewise.
    L.complete = H.finite() ? kUnbounded : (H.w_lo() < 0 ? top + H.w_lo() : top);
    for (int n = H.w_lo(); n <= H.w_hi(); ++n) L.J.emplace_back(f, static_cast<Index>(H.in_degree(n).size()));
    for (int x = 0; x < H.dim(); ++x) {
      if (H.slot_class(H.basis(x).right) != c) continue;
      for (int y = 0; y < H.dim(); ++y) {
        if (H.slot_class(H.basis(y).left) != c) continue;
        const auto& p = H.product(x, y);
        int n = H.basis(x).degree + H.basis(y).degree;
        if (p.above || p.value.empty() || n > H.w_hi()) continue;
        Vec v = Vec::Zero(static_cast<Index>(H.in_degree(n).size()));
        for (const auto& [b, coef] : p.value) v(di.pos[static_cast<size_t>(b)]) = coef;
        L.J[static_cast<size_t>(n - H.w_lo())].insert(v);
      }
    }
    L.dim_J = LaurentPoly(L.complete);
    for (int n = H.w_lo(); n <= H.w_hi(); ++n) {
      if (!is_unbounded(L.complete) && n > L.complete) break;
      Index d = L.J[static_cast<size_t>(n - H.w_lo())].dim();
      if (d) L.dim_J.set(n, Integer(static_cast<long>(d)));
    }
    L.dim_J = L.dim_J.truncated(L.complete);

    // Only classes below the layer's label may connect to it.
    for (int c2 = 0; c2 < static_cast<int>(H.classes().size()); ++c2) {
      if (c2 == c) continue;
      const int s2 = H.designated(c2);
      bool linked = false;
      for (int x = 0; x < H.dim() && !linked; ++x) {
        const auto& b = H.basis(x);
        linked = (b.left == s2 && b.right == des) || (b.left == des && b.right == s2);
      }
      const int sg = order.index(H.classes()[static_cast<size_t>(c2)]);
      if (linked && !order.less(sg, pi))
        L.order.fail("e_" + H.classes()[static_cast<size_t>(c2)] + " H e_" + label + " or its mirror is nonzero but " +
                     H.classes()[static_cast<size_t>(c2)] + " is not below " + label);
    }

    // SI1: e_pi (H / J) = 0.
    for (int x = 0; x < H.dim() && L.si1.pass; ++x) {
      const auto& b = H.basis(x);
      if (H.slot_class(b.left) != c) continue;
      if (!is_unbounded(L.complete) && b.degree > L.complete) continue;
      if (!L.J[static_cast<size_t>(b.degree - H.w_lo())].contains(unit(static_cast<Index>(H.in_degree(b.degree).size()),
                                                                       di.pos[static_cast<size_t>(x)])))
        L.si1.fail("Hom(J, H/J) ≠ 0: " + b.name + " survives in e_" + label + "(H/J)");
    }
    L.si1.horizon = L.complete;

    // SI2: J is a sum of shifted copies of P(pi).
    GradedModule reg = regular_module(cur);
    std::vector<Subspace> jsp(L.J.begin(), L.J.begin() + std::min<long>(static_cast<long>(L.J.size()), reg.hi() - reg.lo() + 1));
    Submodule jm = submodule_from_subspaces(reg, jsp, reg.lo(), L.complete);
    int exact = 0;
    auto gens = minimal_generators(jm.module, &exact);
    L.multiplicity = LaurentPoly(exact);
    for (const auto& g : gens) {
      if (H.slot_class(g.slot) != c)
        L.si2.fail("J has a generator of class " + H.classes()[static_cast<size_t>(H.slot_class(g.slot))] + " in degree " +
                   std::to_string(g.degree));
      L.multiplicity.add_to(g.degree, 1);
    }
    L.multiplicity = L.multiplicity.truncated(exact);
    GradedModule pbar = projective(cur, c);
    LaurentPoly expect = L.multiplicity * pbar.dim_q();
    if (!L.dim_J.agrees_with(expect)) L.si2.fail("dim_q J = " + L.dim_J.str() + " but m(q) dim_q P = " + expect.str());
    L.si2.horizon = std::min(L.complete, exact);

    // J^2 = J.
    for (int n = H.w_lo(); n <= H.w_hi() && L.idempotent.pass; ++n) {
      if (!is_unbounded(L.complete) && n > L.complete) break;
      const Subspace& target = L.J[static_cast<size_t>(n - H.w_lo())];
      Subspace sq(f, target.ambient());
      for (int n1 = H.w_lo(); n1 <= H.w_hi(); ++n1) {
        int n2 = n - n1;
        if (n2 < H.w_lo() || n2 > H.w_hi()) continue;
        const Subspace& j1 = L.J[static_cast<size_t>(n1 - H.w_lo())];
        const Subspace& j2 = L.J[static_cast<size_t>(n2 - H.w_lo())];
        for (Index r1 = 0; r1 < j1.dim(); ++r1)
          for (Index r2 = 0; r2 < j2.dim(); ++r2) {
            auto p = H.multiply(expand_degree(H, j1.row(r1), n1), expand_degree(H, j2.row(r2), n2));
            if (p) sq.insert(restrict_degree(H, *p, n));
          }
        if (sq.dim() == target.dim()) break;
      }
      if (sq.dim() != target.dim()) L.idempotent.fail("J^2 ≠ J in degree " + std::to_string(n));
    }

    // Class of eHe.
    EndoAlgebra B = corner_algebra(H, c);
    ClassReport cr = class_membership(B, cls);
    L.cls = cr.verdict;

    // Freeness of e_sigma P(pi) over eHe.
    std::vector<int> bidx;
    for (int x = 0; x < H.dim(); ++x)
      if (H.basis(x).left == des && H.basis(x).right == des) bidx.push_back(x);
    std::sort(bidx.begin(), bidx.end(), [&](int x, int y) { return H.basis(x).degree < H.basis(y).degree; });
    for (int c2 = 0; c2 < static_cast<int>(H.classes().size()) && L.freeness.pass; ++c2) {
      const int s2 = H.designated(c2);
      std::vector<std::vector<int>> elems;
      RightModule m;
      m.lo = H.w_lo();
      m.hi = top;
      m.complete = H.finite() ? kUnbounded : top;
      for (int n = m.lo; n <= m.hi; ++n) {
        std::vector<int> e;
        for (int x : H.in_degree(n))
          if (H.basis(x).left == s2 && H.basis(x).right == des) e.push_back(x);
        m.dims.push_back(static_cast<int>(e.size()));
        elems.push_back(std::move(e));
      }
      m.act = [&H, &bidx, elems, lo = m.lo, hi = m.hi](int t, const Vec& v, int b) -> std::optional<Vec> {
        int tb = H.basis(bidx[static_cast<size_t>(b)]).degree;
        int n = t + tb;
        Vec out = Vec::Zero(n < lo || n > hi ? 0 : static_cast<Index>(elems[static_cast<size_t>(n - lo)].size()));
        const auto& src = elems[static_cast<size_t>(t - lo)];
        for (size_t k = 0; k < src.size(); ++k) {
          if (v(static_cast<Index>(k)) == 0) continue;
          const auto& p = H.product(src[k], bidx[static_cast<size_t>(b)]);
          if (p.above) return std::nullopt;
          for (const auto& [e, coef] : p.value) {
            const auto& dst = elems[static_cast<size_t>(n - lo)];
            auto it = std::find(dst.begin(), dst.end(), e);
            out(it - dst.begin()) += v(static_cast<Index>(k)) * coef;
          }
        }
        return H.field().reduce(out);
      };
      RankReport rr = right_rank(m, B);
      if (!rr.free.pass)
        L.freeness.fail("e_" + H.classes()[static_cast<size_t>(c2)] + " P(" + label + ") is not free over eHe: " + rr.free.witness);
      L.freeness.horizon = std::min(L.freeness.horizon, rr.free.horizon);
    }

    const bool ok = L.pass();
    std::string why;
    if (!L.order.pass) why = "order: " + L.order.witness;
    else if (!L.si1.pass) why = "SI1: " + L.si1.witness;
    else if (!L.si2.pass) why = "SI2: " + L.si2.witness;
    else if (!L.idempotent.pass) why = "J^2 = J: " + L.idempotent.witness;
    else if (!L.cls.pass) why = "class: " + L.cls.witness;
    else if (!L.freeness.pass) why = "freeness: " + L.freeness.witness;
    std::vector<Subspace> J = L.J;
    int complete = L.complete;
    hc.layers.push_back(std::move(L));
    if (!ok) {
      hc.pass = false;
      hc.witness = "layer " + std::to_string(hc.layers.size()) + " (" + label + "): " + why;
      break;
    }
    if (k > 0) cur = std::make_shared<GradedAlgebra>(quotient_algebra(H, J, complete));
  }
  return hc;
}

// ---------------------------------------------------------------------------
// Resolutions and Ext

ProjectiveResolution resolve(const GradedModule& v, int steps) {
  const AlgebraPtr& a = v.algebra();
  ProjectiveResolution r;
  GradedModule cur = v;
  std::optional<Submodule> emb;  // cur inside the previous term
  for (int j = 0; j <= steps; ++j) {
    bool zero = true;
    for (int t = cur.lo(); t <= cur.hi() && zero; ++t) zero = cur.dim(t) == 0;
    if (zero) {
      r.length = j - 1;
      r.horizon = std::min(r.horizon, cur.complete_to());
      break;
    }
    int exact = 0;
    auto gens = minimal_generators(cur, &exact);
    if (gens.empty()) {
      r.horizon = std::min(r.horizon, exact);
      break;
    }
    std::vector<GradedModule> parts;
    std::vector<Vec> images;
    for (const auto& g : gens) {
      parts.push_back(projective(a, a->slot_class(g.slot), g.degree));
      images.push_back(emb ? Vec(mul(a->field(), emb->embedding(g.degree, emb->space(g.degree, 0).ambient()), g.v)) : g.v);
    }
    // Embedding coordinates need the ambient dimension, which the space records.
    if (emb)
      for (size_t k = 0; k < gens.size(); ++k) {
        const Subspace sp = emb->spaces[static_cast<size_t>(gens[k].degree - emb->lo)];
        images[k] = mul(a->field(), sp.basis(), gens[k].v);
      }
    GradedModule P = parts.size() == 1 ? parts.front() : direct_sum(parts);
    std::vector<Generator> pg;
    for (const auto& s : P.free_summands()) pg.push_back({s.shift, a->designated(s.cls), unit(P.dim(s.shift), s.index)});
    r.terms.push_back(P);
    r.generators.push_back(pg);
    r.images.push_back(images);
    r.exact_to.push_back(exact);
    if (!cur.free_summands().empty()) {
      r.length = j;
      break;
    }
    if (j == steps) break;
    const GradedModule& target = j == 0 ? v : r.terms[static_cast<size_t>(j - 1)];
    ModuleMap f = map_from_images(present(P), P, target, 0, images);
    Submodule k = kernel_module(f, P, target);
    r.horizon = std::min(r.horizon, k.module.complete_to());
    cur = k.module;
    emb = std::move(k);
  }
  return r;
}

namespace {

// Coordinates of Hom(P_j, W)_n: (generator, basis index of W) pairs.
struct Cochain {
  std::vector<std::pair<int, Index>> coords;
};

Cochain cochain(const std::vector<Generator>& gens, const GradedModule& w, int n) {
  Cochain c;
  for (size_t g = 0; g < gens.size(); ++g)
    for (Index k : w.slot_indices(gens[g].degree + n, gens[g].slot)) c.coords.emplace_back(static_cast<int>(g), k);
  return c;
}

// delta: Hom(P_j, W)_n -> Hom(P_{j+1}, W)_n, f |-> f o d.
Mat coboundary(const ProjectiveResolution& r, int j, const GradedModule& w, int n, const Cochain& src, const Cochain& dst) {
  const GradedAlgebra& A = w.alg();
  const auto& gj = r.generators[static_cast<size_t>(j)];
  const auto& gk = r.generators[static_cast<size_t>(j + 1)];
  const auto& imgs = r.images[static_cast<size_t>(j + 1)];
  Mat d = Mat::Zero(static_cast<Index>(dst.coords.size()), static_cast<Index>(src.coords.size()));
  // Components of each d(h) along the summands of P_j, as algebra elements.
  std::vector<std::vector<Vec>> comp(gk.size());
  for (size_t h = 0; h < gk.size(); ++h) {
    const int t = gk[h].degree;
    Index off = 0;
    for (size_t g = 0; g < gj.size(); ++g) {
      const int cls = A.slot_class(gj[g].slot);
      const int len = part_dim(A, cls, gj[g].degree, t);
      Vec part = imgs[h].segment(off, len);
      comp[h].push_back(algebra_element(A, cls, gj[g].degree, t, part));
      off += len;
    }
  }
  std::vector<Index> row_start(gk.size(), 0);
  {
    Index acc = 0;
    for (size_t h = 0; h < gk.size(); ++h) {
      row_start[h] = acc;
      acc += static_cast<Index>(w.slot_indices(gk[h].degree + n, gk[h].slot).size());
    }
  }
  for (size_t col = 0; col < src.coords.size(); ++col) {
    auto [g, k] = src.coords[col];
    const int tg = gj[static_cast<size_t>(g)].degree + n;
    Vec wv = unit(w.dim(tg), k);
    for (size_t h = 0; h < gk.size(); ++h) {
      const Vec& x = comp[h][static_cast<size_t>(g)];
      if (is_zero(x)) continue;
      auto y = w.apply(x, tg, wv);
      if (!y || y->size() == 0) continue;
      auto idx = w.slot_indices(gk[h].degree + n, gk[h].slot);
      for (size_t q = 0; q < idx.size(); ++q) d(row_start[h] + static_cast<Index>(q), static_cast<Index>(col)) = (*y)(idx[q]);
    }
  }
  return d;
}

}  // namespace

ExtResult ext_from_resolution(const ProjectiveResolution& r, const GradedModule& w, int i) {
  if (!w.finite()) throw HorizonTooLow(sat_add(w.complete_to(), 1));
  const Field& f = w.field();
  ExtResult out;
  const int terms = static_cast<int>(r.terms.size());
  auto exact_of = [&](int j) {
    if (j < terms) return r.exact_to[static_cast<size_t>(j)];
    if (r.length >= 0 && j > r.length) return kUnbounded;
    return INT_MIN / 4;
  };
  int ex = std::min(exact_of(i), exact_of(i + 1));
  if (!is_unbounded(r.horizon) && r.length < 0) ex = std::min(ex, r.horizon);
  out.exact_from = is_unbounded(ex) ? -kUnbounded : w.hi() - ex;
  if (i >= terms) return out;
  const auto& gi = r.generators[static_cast<size_t>(i)];
  if (gi.empty()) return out;
  int dmin = INT_MAX, dmax = INT_MIN;
  for (const auto& g : gi) {
    dmin = std::min(dmin, g.degree);
    dmax = std::max(dmax, g.degree);
  }
  for (int n = w.lo() - dmax; n <= w.hi() - dmin; ++n) {
    if (n < out.exact_from) continue;
    Cochain ci = cochain(gi, w, n);
    if (ci.coords.empty()) continue;
    Index rank_out = 0, rank_in = 0;
    if (i + 1 < terms) {
      Cochain cn = cochain(r.generators[static_cast<size_t>(i + 1)], w, n);
      if (!cn.coords.empty()) rank_out = rank(f, coboundary(r, i, w, n, ci, cn));
    }
    if (i >= 1) {
      Cochain cp = cochain(r.generators[static_cast<size_t>(i - 1)], w, n);
      if (!cp.coords.empty()) rank_in = rank(f, coboundary(r, i - 1, w, n, cp, ci));
    }
    long d = static_cast<long>(ci.coords.size()) - static_cast<long>(rank_out) - static_cast<long>(rank_in);
    if (d) out.dims.set(n, Integer(d));
  }
  return out;
}

ExtResult ext_against_finite(const GradedModule& v, const GradedModule& w, int i) {
  return ext_from_resolution(resolve(v, i + 1), w, i);
}

// ---------------------------------------------------------------------------
// Resolution checks

namespace {

// Right action of B's element z (coordinates over B) on Delta(pi), degree t -> t + deg z.
Mat right_action(const StandardData& d, const Vec& z, int t) {
  const GradedModule& D = d.delta;
  const GradedAlgebra& A = D.alg();
  const int des = A.designated(d.pi);
  int dz = 0;
  for (int k = 0; k < d.B.dim(); ++k)
    if (z(k) != 0) dz = d.B.degrees[static_cast<size_t>(k)];
  Vec zv = Vec::Zero(D.dim(dz));
  auto idx = D.slot_indices(dz, des);
  auto bdeg = d.B.in_degree(dz);
  for (size_t k = 0; k < bdeg.size(); ++k) zv(idx[k]) = z(bdeg[k]);
  Mat out = Mat::Zero(D.dim(t + dz), D.dim(t));
  for (Index j = 0; j < D.dim(t); ++j) {
    Vec x = algebra_element(A, d.pi, 0, t, mul(A.field(), d.to_delta.lifting(t), unit(D.dim(t), j)));
    auto y = D.apply(x, dz, zv);
    if (y && y->size()) out.col(j) = *y;
  }
  return out;
}

Verdict koszul_check(const StandardData& d, const ClassReport& cr) {
  const Field f;
  const GradedModule& D = d.delta;
  Verdict v;
  const int k = static_cast<int>(cr.generators.size());
  std::vector<int> deg = cr.generator_degrees;
  int horizon = std::min(D.complete_to(), d.bar_delta.complete_to());
  if (is_unbounded(horizon)) {
    int sum = 0;
    for (int x : deg) sum += x;
    horizon = D.hi() + sum;
  }
  v.horizon = horizon;
  const unsigned nsub = 1u << k;
  auto subset_deg = [&](unsigned s) {
    int t = 0;
    for (int i = 0; i < k; ++i)
      if (s & (1u << i)) t += deg[static_cast<size_t>(i)];
    return t;
  };
  auto popcount = [](unsigned s) { return __builtin_popcount(s); };
  for (int T = D.lo(); T <= horizon; ++T) {
    // C_j(T) = sum over |S| = j of Delta_{T - deg S}.
    std::vector<std::vector<unsigned>> subsets(static_cast<size_t>(k + 1));
    for (unsigned s = 0; s < nsub; ++s) subsets[static_cast<size_t>(popcount(s))].push_back(s);
    auto block_dim = [&](unsigned s) { return static_cast<Index>(D.dim(T - subset_deg(s))); };
    std::vector<Mat> dmat(static_cast<size_t>(k + 1));
    for (int j = 1; j <= k; ++j) {
      Index rows = 0, cols = 0;
      std::map<unsigned, Index> roff, coff;
      for (unsigned s : subsets[static_cast<size_t>(j - 1)]) roff[s] = rows, rows += block_dim(s);
      for (unsigned s : subsets[static_cast<size_t>(j)]) coff[s] = cols, cols += block_dim(s);
      Mat m = Mat::Zero(rows, cols);
      for (unsigned s : subsets[static_cast<size_t>(j)]) {
        int pos = 0;
        for (int i = 0; i < k; ++i) {
          if (!(s & (1u << i))) continue;
          unsigned s2 = s & ~(1u << i);
          int t = T - subset_deg(s);
          if (block_dim(s) && block_dim(s2)) {
            Mat act = right_action(d, cr.generators[static_cast<size_t>(i)], t);
            if (pos % 2) act = -act;
            m.block(roff[s2], coff[s], act.rows(), act.cols()) = act;
          }
          ++pos;
        }
      }
      dmat[static_cast<size_t>(j)] = f.reduce(m);
    }
    for (int j = 1; j + 1 <= k; ++j)
      if (dmat[static_cast<size_t>(j)].cols() && dmat[static_cast<size_t>(j + 1)].cols() &&
          !is_zero(mul(f, dmat[static_cast<size_t>(j)], dmat[static_cast<size_t>(j + 1)]))) {
        v.fail("Koszul differential does not square to zero in degree " + std::to_string(T));
        return v;
      }
    for (int j = 0; j <= k; ++j) {
      Index cdim = 0;
      for (unsigned s : subsets[static_cast<size_t>(j)]) cdim += block_dim(s);
      Index rout = j >= 1 && dmat[static_cast<size_t>(j)].size() ? rank(f, dmat[static_cast<size_t>(j)]) : 0;
      Index rin = j + 1 <= k && dmat[static_cast<size_t>(j + 1)].size() ? rank(f, dmat[static_cast<size_t>(j + 1)]) : 0;
      Index h = cdim - rout - rin;
      Index want = j == 0 ? d.bar_delta.dim(T) : 0;
      if (h != want) {
        v.fail("Koszul complex of Δ̄(" + std::to_string(d.pi) + ") has homology " + std::to_string(h) + " in position " +
               std::to_string(j) + ", degree " + std::to_string(T));
        return v;
      }
    }
  }
  return v;
}

}  // namespace

ResolutionReport resolution_checks(const Stratification& s, const std::string& cls) {
  (void)cls;
  const OrderSpec& order = s.order();
  const GradedAlgebra& A = s.alg();
  const int n = s.size();
  ResolutionReport rep;
  rep.pd.assign(static_cast<size_t>(n), -1);
  rep.pd_bound.assign(static_cast<size_t>(n), 0);
  rep.koszul.resize(static_cast<size_t>(n));
  std::vector<ClassReport> poly(static_cast<size_t>(n));
  detail::parallel_for(n, [&](int pi) {
    const StandardData& d = s.at(pi);
    rep.pd_bound[static_cast<size_t>(pi)] = order.length(order.above_eq(pi));
    ProjectiveResolution r = resolve(d.delta, order.length() + 2);
    rep.pd[static_cast<size_t>(pi)] = r.length;
    poly[static_cast<size_t>(pi)] = class_membership(d.B, "polynomial");
    if (poly[static_cast<size_t>(pi)].verdict.pass)
      rep.koszul[static_cast<size_t>(pi)] = koszul_check(d, poly[static_cast<size_t>(pi)]);
  });
  int max_d = 0;
  bool all_poly = true;
  for (int pi = 0; pi < n; ++pi) {
    const std::string& l = order.label(pi);
    int pd = rep.pd[static_cast<size_t>(pi)], bound = rep.pd_bound[static_cast<size_t>(pi)];
    if (pd < 0 || pd > bound) {
      rep.pass = false;
      rep.witnesses.push_back("pd Δ(" + l + ") = " + (pd < 0 ? std::string("unknown") : std::to_string(pd)) +
                              " exceeds l(Π_{≥" + l + "}) = " + std::to_string(bound));
    }
    if (!rep.koszul[static_cast<size_t>(pi)].pass) {
      rep.pass = false;
      rep.witnesses.push_back(rep.koszul[static_cast<size_t>(pi)].witness);
    }
    if (poly[static_cast<size_t>(pi)].verdict.pass)
      max_d = std::max(max_d, static_cast<int>(poly[static_cast<size_t>(pi)].generator_degrees.size()));
    else
      all_poly = false;
  }
  rep.gldim_bound = 2 * order.length() + max_d;
  if (A.finite() && all_poly) {
    AlgebraPtr a = s.algebra();
    for (int pi = 0; pi < n && rep.ext_vanishing.pass; ++pi) {
      GradedModule l = simple_module(a, pi);
      ProjectiveResolution r = resolve(l, rep.gldim_bound + 3);
      for (int sg = 0; sg < n && rep.ext_vanishing.pass; ++sg) {
        GradedModule w = simple_module(a, sg);
        for (int i = rep.gldim_bound + 1; i <= rep.gldim_bound + 2; ++i)
          if (!ext_from_resolution(r, w, i).dims.is_zero())
            rep.ext_vanishing.fail("Ext^" + std::to_string(i) + "(L(" + order.label(pi) + "), L(" + order.label(sg) + ")) ≠ 0");
      }
    }
    if (!rep.ext_vanishing.pass) {
      rep.pass = false;
      rep.witnesses.push_back(rep.ext_vanishing.witness);
    }
  } else {
    rep.ext_vanishing.witness = "not applicable (infinite-dimensional algebra or non-polynomial B)";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Cell data

CellReport cellularize(const HeredityChain& chain, const OrderSpec& order, const Involution& tau) {
  if (chain.layers.empty() || !chain.pass) throw CellError("ChainFailed", "the heredity chain did not verify");
  const AlgebraPtr& orig = chain.layers.front().algebra;
  if (orig->field().characteristic() == 2) throw CellError("CharacteristicTwo", "the involution need not split in characteristic 2");
  verify_involution(*orig, tau);
  if (!is_balanced(*orig, tau)) throw CellError("NotBalanced", "τ does not fix every class");
  const OrderSpec ord = order.restricted(orig->classes());
  CellReport rep;
  Involution cur_tau = tau;
  for (size_t i = 0; i < chain.layers.size(); ++i) {
    const ChainLayer& L = chain.layers[i];
    const GradedAlgebra& H = *L.algebra;
    if (i > 0) cur_tau = involution_on_quotient(*chain.layers[i - 1].algebra, H, cur_tau);
    const int c = H.class_index(L.label);
    const int des = H.designated(c);
    CellLayer cl;
    cl.label = L.label;
    cl.dim_V = proper_standard(orig, ord.index(L.label), ord).dim_q();

    std::vector<int> he, eh, bplus;
    LaurentPoly dim_b;
    for (int x = 0; x < H.dim(); ++x) {
      const auto& b = H.basis(x);
      if (b.right == des) he.push_back(x);
      if (b.left == des) eh.push_back(x);
      if (b.left == des && b.right == des) {
        dim_b.add_to(b.degree, 1);
        if (b.degree > 0) bplus.push_back(x);
      }
    }
    cl.dim_B = dim_b.truncated(L.complete);
    cl.rank_left = one_sided_rank(H, he, bplus, true, L.complete);
    cl.rank_right = one_sided_rank(H, eh, bplus, false, L.complete);
    cl.dim_J = L.dim_J;
    LaurentPoly prod = cl.rank_left * cl.dim_B * cl.rank_right;
    cl.reconcile.horizon = std::min(prod.valid_to(), L.dim_J.valid_to());
    if (!L.dim_J.agrees_with(prod))
      cl.reconcile.fail("dim_q J = " + L.dim_J.str() + " but rank(He) dim B rank(eH) = " + prod.str());

    for (int n = H.w_lo(); n <= H.w_hi() && cl.tau_invariant.pass; ++n) {
      if (!is_unbounded(L.complete) && n > L.complete) break;
      const Subspace& J = L.J[static_cast<size_t>(n - H.w_lo())];
      for (Index k = 0; k < J.dim(); ++k) {
        Vec img = mul(H.field(), cur_tau.matrix, expand_degree(H, J.row(k), n));
        if (!J.contains(restrict_degree(H, img, n))) {
          cl.tau_invariant.fail("τ(J) ⊄ J in degree " + std::to_string(n));
          break;
        }
      }
    }
    if (!cl.reconcile.pass || !cl.tau_invariant.pass) {
      rep.pass = false;
      if (rep.witness.empty())
        rep.witness = "layer " + std::to_string(i + 1) + " (" + L.label + "): " +
                      (cl.reconcile.pass ? "NotTauInvariant: " + cl.tau_invariant.witness : cl.reconcile.witness);
    }
    rep.layers.push_back(std::move(cl));
  }
  return rep;
}

}  // namespace laurentia
