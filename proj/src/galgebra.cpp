#include "laurentia/galgebra.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

namespace laurentia {

namespace {

const std::vector<int> kEmpty;

int index_of(const std::vector<std::string>& v, const std::string& x) {
  auto it = std::find(v.begin(), v.end(), x);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

Vec dense(int n, const SparseVec& s, const Field& f) {
  Vec v = Vec::Zero(n);
  for (const auto& [k, c] : s) v(k) = f.add(v(k), c);
  return v;
}

Vec restrict_to_degree(const GradedAlgebra& a, const Vec& v, int n) {
  const auto& idx = a.in_degree(n);
  Vec r(static_cast<Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) r(static_cast<Index>(k)) = v(idx[k]);
  return r;
}

Vec extend_from_degree(const GradedAlgebra& a, const Vec& r, int n) {
  Vec v = Vec::Zero(a.dim());
  const auto& idx = a.in_degree(n);
  for (size_t k = 0; k < idx.size(); ++k) v(idx[k]) = r(static_cast<Index>(k));
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Relation syntax

Relation parse_relation(const std::string& text) {
  Relation rel;
  // A coefficient may be separated from its path by whitespace instead of '*'.
  const std::string spaced = std::regex_replace(text, std::regex(R"(([0-9])\s+([^\s0-9*+/-]))"), "$1*$2");
  std::string s;
  for (char c : spaced)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw AlgebraError("ParseError", "empty relation");
  size_t i = 0;
  auto is_name_char = [](char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '\'' || u >= 0x80;
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!rel.terms.empty()) {
      throw AlgebraError("ParseError", "expected + or - in relation '" + text + "'");
    }
    PathTerm term;
    term.coeff = sign;
    // Optional rational coefficient followed by '*'.
    size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
    if (j > i && (j == s.size() || s[j] == '*')) {
      term.coeff *= Rational(s.substr(i, j - i));
      i = j;
      if (i < s.size() && s[i] == '*') ++i;
    }
    while (true) {
      size_t st = i;
      while (i < s.size() && is_name_char(s[i])) ++i;
      if (i == st) throw AlgebraError("ParseError", "expected arrow name in relation '" + text + "'");
      term.arrows.push_back(s.substr(st, i - st));
      if (i < s.size() && s[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    rel.terms.push_back(std::move(term));
  }
  return rel;
}

// ---------------------------------------------------------------------------
// GradedAlgebra basics

void GradedAlgebra::index_degrees() {
  by_degree_.assign(static_cast<size_t>(w_hi_ - w_lo_ + 1), {});
  for (int i = 0; i < dim(); ++i) by_degree_[static_cast<size_t>(basis_[static_cast<size_t>(i)].degree - w_lo_)].push_back(i);
}

const std::vector<int>& GradedAlgebra::in_degree(int n) const {
  if (n < w_lo_ || n > w_hi_) return kEmpty;
  return by_degree_[static_cast<size_t>(n - w_lo_)];
}

int GradedAlgebra::class_index(const std::string& label) const {
  int k = index_of(classes_, label);
  if (k < 0) throw std::invalid_argument("unknown label '" + label + "'");
  return k;
}

Vec GradedAlgebra::unit(int i) const {
  Vec v = Vec::Zero(dim());
  v(i) = 1;
  return v;
}

Vec GradedAlgebra::one() const {
  Vec v = Vec::Zero(dim());
  for (const auto& s : slots_) v(s.basis) = 1;
  return v;
}

Vec GradedAlgebra::class_idempotent(int cls) const {
  Vec v = Vec::Zero(dim());
  for (const auto& s : slots_)
    if (s.cls == cls) v(s.basis) = 1;
  return v;
}

std::optional<Vec> GradedAlgebra::multiply(const Vec& a, const Vec& b) const {
  Vec r = Vec::Zero(dim());
  for (int i = 0; i < dim(); ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < dim(); ++j) {
      if (b(j) == 0) continue;
      const Product& p = product(i, j);
      if (p.above) return std::nullopt;
      if (p.value.empty()) continue;
      Rational c = field_.mul(a(i), b(j));
      for (const auto& [k, v] : p.value) r(k) = field_.add(r(k), field_.mul(c, v));
    }
  }
  return r;
}

std::optional<Vec> multiply(const GradedAlgebra& a, const Vec& x, const Vec& y) { return a.multiply(x, y); }

int GradedAlgebra::degree_of(const Vec& a) const {
  for (int i = 0; i < dim(); ++i)
    if (a(i) != 0) return basis_[static_cast<size_t>(i)].degree;
  throw std::invalid_argument("degree of the zero element");
}

Subspace GradedAlgebra::radical_in_degree(int n) const {
  Subspace s(field_, static_cast<Index>(in_degree(n).size()));
  for (const Vec& r : radical_)
    if (degree_of(r) == n) s.insert(restrict_to_degree(*this, r, n));
  return s;
}

// ---------------------------------------------------------------------------
// Quiver mode

GradedAlgebra from_quiver(const QuiverPresentation& p, int window_top, const Field& field) {
  if (window_top < 0) throw std::invalid_argument("window top must be nonnegative");
  if (p.vertices.empty()) throw AlgebraError("InvalidQuiver", "the vertex set must be nonempty");
  std::set<std::string> seen(p.vertices.begin(), p.vertices.end());
  if (seen.size() != p.vertices.size()) throw AlgebraError("InvalidQuiver", "duplicate vertex label");

  const int nv = static_cast<int>(p.vertices.size());
  std::vector<int> asrc, adst, adeg;
  std::vector<std::string> anames;
  int max_deg = 0;
  for (const auto& a : p.arrows) {
    int s = index_of(p.vertices, a.src), t = index_of(p.vertices, a.dst);
    if (s < 0 || t < 0) throw AlgebraError("InvalidQuiver", "arrow '" + a.name + "' has an unknown endpoint");
    if (a.degree < 1) throw AlgebraError("InvalidQuiver", "arrow '" + a.name + "' must have degree >= 1");
    if (index_of(anames, a.name) >= 0) throw AlgebraError("InvalidQuiver", "duplicate arrow '" + a.name + "'");
    anames.push_back(a.name);
    asrc.push_back(s);
    adst.push_back(t);
    adeg.push_back(a.degree);
    max_deg = std::max(max_deg, a.degree);
  }

  struct RelData {
    int src, dst, degree;
    std::vector<std::pair<Rational, std::vector<int>>> terms;
  };
  std::vector<RelData> rels;
  for (size_t r = 0; r < p.relations.size(); ++r) {
    const auto& rel = p.relations[r];
    RelData rd{-1, -1, -1, {}};
    const std::string label = "relation " + std::to_string(r + 1);
    for (const auto& term : rel.terms) {
      if (term.arrows.empty()) throw AlgebraError("InhomogeneousRelation", label + " contains a degree-0 term");
      std::vector<int> path;
      int deg = 0;
      for (const auto& name : term.arrows) {
        int k = index_of(anames, name);
        if (k < 0) throw AlgebraError("UnknownArrow", label + " uses unknown arrow '" + name + "'");
        if (!path.empty() && adst[static_cast<size_t>(path.back())] != asrc[static_cast<size_t>(k)])
          throw AlgebraError("EndpointMismatch", label + ": path is not composable at '" + name + "'");
        path.push_back(k);
        deg += adeg[static_cast<size_t>(k)];
      }
      int s = asrc[static_cast<size_t>(path.front())], t = adst[static_cast<size_t>(path.back())];
      if (rd.degree < 0) {
        rd.src = s;
        rd.dst = t;
        rd.degree = deg;
      } else {
        if (deg != rd.degree)
          throw AlgebraError("InhomogeneousRelation", label + " mixes degrees " + std::to_string(rd.degree) + " and " +
                                                          std::to_string(deg));
        if (s != rd.src || t != rd.dst) throw AlgebraError("EndpointMismatch", label + " mixes endpoints");
      }
      rd.terms.emplace_back(term.coeff, std::move(path));
    }
    if (!rd.terms.empty()) rels.push_back(std::move(rd));
  }

  // Enumerate paths by degree; key (degree, src, dst) -> ordered list.
  struct PathRec {
    std::vector<int> arrows;
    int src, dst, degree;
  };
  std::vector<PathRec> paths;
  for (int v = 0; v < nv; ++v) paths.push_back({{}, v, v, 0});
  for (size_t k = 0; k < paths.size(); ++k) {
    // Extend in place; paths is ordered by construction order within each degree class.
    for (size_t a = 0; a < anames.size(); ++a) {
      if (asrc[a] != paths[k].dst) continue;
      int d = paths[k].degree + adeg[a];
      if (d > window_top) continue;
      PathRec np = paths[k];
      np.arrows.push_back(static_cast<int>(a));
      np.dst = adst[a];
      np.degree = d;
      paths.push_back(std::move(np));
    }
  }
  std::map<std::tuple<int, int, int>, std::vector<int>> groups;
  std::map<std::vector<int>, std::pair<std::tuple<int, int, int>, int>> locate;
  std::vector<size_t> order(paths.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return paths[x].degree < paths[y].degree; });
  for (size_t k : order) {
    const auto& pr = paths[k];
    if (pr.arrows.empty()) continue;
    auto key = std::make_tuple(pr.degree, pr.src, pr.dst);
    auto& g = groups[key];
    locate[pr.arrows] = {key, static_cast<int>(g.size())};
    g.push_back(static_cast<int>(k));
  }

  // Relation ideal slices.
  std::map<std::tuple<int, int, int>, Subspace> ideal;
  for (const auto& [key, members] : groups) ideal.emplace(key, Subspace(field, static_cast<Index>(members.size())));
  std::vector<std::vector<int>> ending_at(static_cast<size_t>(nv)), starting_at(static_cast<size_t>(nv));
  for (size_t k = 0; k < paths.size(); ++k) {
    ending_at[static_cast<size_t>(paths[k].dst)].push_back(static_cast<int>(k));
    starting_at[static_cast<size_t>(paths[k].src)].push_back(static_cast<int>(k));
  }
  for (const auto& rd : rels) {
    for (int u : ending_at[static_cast<size_t>(rd.src)]) {
      const auto& pu = paths[static_cast<size_t>(u)];
      if (pu.degree + rd.degree > window_top) continue;
      for (int w : starting_at[static_cast<size_t>(rd.dst)]) {
        const auto& pw = paths[static_cast<size_t>(w)];
        int d = pu.degree + rd.degree + pw.degree;
        if (d > window_top) continue;
        auto key = std::make_tuple(d, pu.src, pw.dst);
        auto& sub = ideal.at(key);
        Vec v = Vec::Zero(sub.ambient());
        for (const auto& [c, t] : rd.terms) {
          std::vector<int> full = pu.arrows;
          full.insert(full.end(), t.begin(), t.end());
          full.insert(full.end(), pw.arrows.begin(), pw.arrows.end());
          int pos = locate.at(full).second;
          v(pos) = field.add(v(pos), c);
        }
        sub.insert(v);
      }
    }
  }

  GradedAlgebra A;
  A.field_ = field;
  A.mode_ = "quiver";
  A.w_lo_ = 0;
  A.w_hi_ = window_top;
  A.arrows_ = p.arrows;
  A.classes_ = p.vertices;
  for (int v = 0; v < nv; ++v) {
    A.basis_.push_back({p.vertices[static_cast<size_t>(v)], 0, v, v});
    A.paths_.push_back({});
    A.slots_.push_back({v, v});
    A.designated_.push_back(v);
  }
  // Global index of each surviving path; pivots map to -1.
  std::map<std::tuple<int, int, int>, std::vector<int>> global;
  for (const auto& [key, members] : groups) {
    const auto& sub = ideal.at(key);
    std::vector<int> g(members.size(), -1);
    for (Index j : sub.complement_indices()) {
      const auto& pr = paths[static_cast<size_t>(members[static_cast<size_t>(j)])];
      std::string name;
      for (size_t t = 0; t < pr.arrows.size(); ++t)
        name += (t ? "*" : "") + anames[static_cast<size_t>(pr.arrows[t])];
      g[static_cast<size_t>(j)] = A.dim();
      A.basis_.push_back({name, pr.degree, pr.dst, pr.src});
      A.paths_.push_back(pr.arrows);
    }
    global[key] = std::move(g);
  }
  // Sort basis by degree, keeping construction order otherwise.
  std::vector<int> perm(static_cast<size_t>(A.dim()));
  for (int i = 0; i < A.dim(); ++i) perm[static_cast<size_t>(i)] = i;
  std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) { return A.basis_[static_cast<size_t>(x)].degree < A.basis_[static_cast<size_t>(y)].degree; });
  std::vector<int> inv(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) inv[static_cast<size_t>(perm[i])] = static_cast<int>(i);
  {
    std::vector<GradedAlgebra::BasisElem> b2;
    std::vector<std::vector<int>> p2;
    for (int i : perm) {
      b2.push_back(A.basis_[static_cast<size_t>(i)]);
      p2.push_back(A.paths_[static_cast<size_t>(i)]);
    }
    A.basis_ = std::move(b2);
    A.paths_ = std::move(p2);
    for (auto& [key, g] : global)
      for (int& x : g)
        if (x >= 0) x = inv[static_cast<size_t>(x)];
  }
  A.index_degrees();

  std::vector<int> hdims(static_cast<size_t>(window_top + 1), 0);
  for (const auto& b : A.basis_) ++hdims[static_cast<size_t>(b.degree)];
  bool finite = anames.empty();
  for (int m = 1; !finite && m + max_deg - 1 <= window_top; ++m) {
    bool band = true;
    for (int n = m; n < m + max_deg; ++n) band = band && hdims[static_cast<size_t>(n)] == 0;
    finite = band;
  }
  A.complete_to_ = finite ? kUnbounded : window_top;
  A.gen_bound_ = max_deg;

  // Normal form of a path given by arrows in traversal order.
  auto normal_form = [&](const std::vector<int>& arrows, int vertex) -> SparseVec {
    if (arrows.empty()) return {{vertex, Rational(1)}};
    const auto& [key, pos] = locate.at(arrows);
    const auto& g = global.at(key);
    if (g[static_cast<size_t>(pos)] >= 0) return {{g[static_cast<size_t>(pos)], Rational(1)}};
    const auto& sub = ideal.at(key);
    SparseVec out;
    for (Index k = 0; k < sub.dim(); ++k) {
      if (sub.pivots()[static_cast<size_t>(k)] != pos) continue;
      const Vec& row = sub.row(k);
      for (Index j = 0; j < row.size(); ++j)
        if (j != pos && row(j) != 0) out.emplace_back(g[static_cast<size_t>(j)], field.reduce(-row(j)));
    }
    return out;
  };

  const int D = A.dim();
  A.table_.assign(static_cast<size_t>(D * D), {});
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      const auto& bi = A.basis_[static_cast<size_t>(i)];
      const auto& bj = A.basis_[static_cast<size_t>(j)];
      if (bi.right != bj.left) continue;
      auto& prod = A.table_[static_cast<size_t>(i * D + j)];
      if (bi.degree + bj.degree > window_top) {
        prod.above = !finite;
        continue;
      }
      // b_i * b_j: traverse b_j, then b_i.
      std::vector<int> cat = A.paths_[static_cast<size_t>(j)];
      cat.insert(cat.end(), A.paths_[static_cast<size_t>(i)].begin(), A.paths_[static_cast<size_t>(i)].end());
      prod.value = normal_form(cat, bi.left);
    }
  for (int i = 0; i < D; ++i)
    if (A.basis_[static_cast<size_t>(i)].degree >= 1) A.radical_.push_back(A.unit(i));
  return A;
}

// ---------------------------------------------------------------------------
// Table mode

GradedAlgebra from_table(const TableAlgebra& t, const Field& field) {
  if (t.basis.empty() || t.idempotents.empty()) throw AlgebraError("InvalidTable", "empty basis or idempotent list");
  const int D = static_cast<int>(t.basis.size());
  const int ns = static_cast<int>(t.idempotents.size());
  GradedAlgebra A;
  A.field_ = field;
  A.mode_ = "table";
  A.w_lo_ = t.basis.front().degree;
  int top = t.basis.front().degree;
  for (const auto& b : t.basis) {
    A.w_lo_ = std::min(A.w_lo_, b.degree);
    top = std::max(top, b.degree);
    if (b.left < 0 || b.left >= ns || b.right < 0 || b.right >= ns)
      throw AlgebraError("InvalidTable", "basis element '" + b.name + "' has an unknown vertex");
  }
  A.w_hi_ = t.window_top.value_or(top);
  if (top > A.w_hi_) throw AlgebraError("InvalidTable", "basis degree above the declared window");
  A.complete_to_ = t.finite ? kUnbounded : A.w_hi_;
  for (const auto& b : t.basis) A.basis_.push_back({b.name, b.degree, b.left, b.right});
  for (const auto& e : t.idempotents) {
    if (e.element < 0 || e.element >= D) throw AlgebraError("InvalidTable", "idempotent index out of range");
    int c = index_of(A.classes_, e.cls);
    if (c < 0) {
      c = static_cast<int>(A.classes_.size());
      A.classes_.push_back(e.cls);
      A.designated_.push_back(static_cast<int>(A.slots_.size()));
    }
    A.slots_.push_back({e.element, c});
  }
  A.index_degrees();

  for (int s = 0; s < ns; ++s) {
    const auto& b = A.basis_[static_cast<size_t>(A.slots_[static_cast<size_t>(s)].basis)];
    if (b.degree != 0 || b.left != s || b.right != s)
      throw AlgebraError("InvalidTable", "idempotent '" + b.name + "' must have degree 0 and sit at its own vertex");
  }

  A.table_.assign(static_cast<size_t>(D * D), {});
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      const auto& bi = A.basis_[static_cast<size_t>(i)];
      const auto& bj = A.basis_[static_cast<size_t>(j)];
      auto& prod = A.table_[static_cast<size_t>(i * D + j)];
      auto it = t.products.find({i, j});
      const int d = bi.degree + bj.degree;
      if (it == t.products.end()) {
        prod.above = !t.finite && bi.right == bj.left && d > A.w_hi_;
        continue;
      }
      for (const auto& [k, c] : it->second) {
        if (k < 0 || k >= D) throw AlgebraError("InvalidTable", "product refers to an unknown basis element");
        if (field.reduce(c) == 0) continue;
        const auto& bk = A.basis_[static_cast<size_t>(k)];
        if (bk.degree != d)
          throw AlgebraError("InvalidTable", bi.name + "*" + bj.name + " is not homogeneous of degree " + std::to_string(d));
        if (bi.right != bj.left || bk.left != bi.left || bk.right != bj.right)
          throw AlgebraError("InvalidTable", bi.name + "*" + bj.name + " violates the vertex structure");
        prod.value.emplace_back(k, field.reduce(c));
      }
    }

  // Idempotent relations and Peirce placement.
  for (int s = 0; s < ns; ++s)
    for (int u = 0; u < ns; ++u) {
      Vec eu = A.idempotent(u);
      Vec es = A.idempotent(s);
      Vec prod = *A.multiply(es, eu);
      Vec expect = s == u ? es : Vec(Vec::Zero(D));
      if (prod != expect)
        throw AlgebraError("InvalidTable", "idempotents '" + A.basis_[static_cast<size_t>(A.slots_[static_cast<size_t>(s)].basis)].name + "' and '" +
                                               A.basis_[static_cast<size_t>(A.slots_[static_cast<size_t>(u)].basis)].name + "' are not orthogonal idempotents");
    }
  for (int i = 0; i < D; ++i) {
    const auto& b = A.basis_[static_cast<size_t>(i)];
    auto l = A.multiply(A.idempotent(b.left), A.unit(i));
    auto r = A.multiply(A.unit(i), A.idempotent(b.right));
    if (!l || !r || *l != A.unit(i) || *r != A.unit(i))
      throw AlgebraError("InvalidTable", "basis element '" + b.name + "' is not fixed by its vertex idempotents");
  }

  // Associativity on every composable triple known within the window.
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      const auto& pij = A.product(i, j);
      if (pij.above) continue;
      for (int k = 0; k < D; ++k) {
        const auto& bj = A.basis_[static_cast<size_t>(j)];
        const auto& bk = A.basis_[static_cast<size_t>(k)];
        if (bj.right != bk.left) continue;
        if (A.basis_[static_cast<size_t>(i)].degree + bj.degree + bk.degree > A.w_hi_) continue;
        const auto& pjk = A.product(j, k);
        if (pjk.above) continue;
        auto lhs = A.multiply(dense(D, pij.value, field), A.unit(k));
        auto rhs = A.multiply(A.unit(i), dense(D, pjk.value, field));
        if (!lhs || !rhs) continue;
        if (*lhs != *rhs)
          throw AlgebraError("AssocFail", "(" + A.basis_[static_cast<size_t>(i)].name + ", " + bj.name + ", " + bk.name + ")");
      }
    }

  std::vector<bool> in_rad(static_cast<size_t>(D), false);
  for (int r : t.radical) {
    if (r < 0 || r >= D) throw AlgebraError("InvalidTable", "radical index out of range");
    in_rad[static_cast<size_t>(r)] = true;
  }
  for (int i = 0; i < D; ++i)
    if (in_rad[static_cast<size_t>(i)]) A.radical_.push_back(A.unit(i));
  for (const auto& s : A.slots_)
    if (in_rad[static_cast<size_t>(s.basis)]) throw AlgebraError("RadicalNotIdeal", "an idempotent lies in the declared radical");

  A.gen_bound_ = 0;

  RadicalReport rr = check_radical(A);
  if (!rr.ideal) throw AlgebraError("RadicalNotIdeal", "the declared radical is not a two-sided ideal within the window");
  if (!rr.quotient_semisimple) throw AlgebraError("RadicalTooSmall", "H/N has a nonzero radical");
  if (!rr.schurian) throw AlgebraError("NotSchurian", "e_pi (H/N) e_pi must be one-dimensional for each designated idempotent");
  if (!rr.grows) throw AlgebraError("RadicalTooLarge", "the minimal degree of N^k does not grow");
  return A;
}

// ---------------------------------------------------------------------------
// Radical verification

namespace {

// Finite-dimensional quotient H/N: basis indices (global) and structure constants.
struct FiniteQuotient {
  std::vector<int> basis;       // global indices of complement elements
  std::vector<Mat> left_mult;   // L_x for each quotient basis element
  std::vector<std::vector<Vec>> products;  // products[i][j] in quotient coordinates
};

FiniteQuotient finite_quotient(const GradedAlgebra& a) {
  const Field& f = a.field();
  FiniteQuotient q;
  std::vector<Subspace> rad;
  std::vector<std::vector<int>> keep;
  for (int n = a.w_lo(); n <= a.w_hi(); ++n) {
    rad.push_back(a.radical_in_degree(n));
    std::vector<int> k;
    for (Index j : rad.back().complement_indices()) {
      k.push_back(a.in_degree(n)[static_cast<size_t>(j)]);
      q.basis.push_back(k.back());
    }
    keep.push_back(std::move(k));
  }
  const Index d = static_cast<Index>(q.basis.size());
  std::map<int, Index> qpos;
  for (Index k = 0; k < d; ++k) qpos[q.basis[static_cast<size_t>(k)]] = k;
  auto to_quotient = [&](const Vec& v) -> Vec {
    Vec out = Vec::Zero(d);
    for (int n = a.w_lo(); n <= a.w_hi(); ++n) {
      Vec part = restrict_to_degree(a, v, n);
      if (is_zero(part)) continue;
      Vec red = rad[static_cast<size_t>(n - a.w_lo())].reduce(part);
      for (Index j = 0; j < red.size(); ++j)
        if (red(j) != 0) out(qpos.at(a.in_degree(n)[static_cast<size_t>(j)])) = red(j);
    }
    return out;
  };
  q.products.assign(static_cast<size_t>(d), std::vector<Vec>(static_cast<size_t>(d)));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const int gi = q.basis[static_cast<size_t>(i)], gj = q.basis[static_cast<size_t>(j)];
      const auto& p = a.product(gi, gj);
      if (p.above) throw AlgebraError("QuotientNotSemisimple", "H/N is not finite-dimensional within the window");
      q.products[static_cast<size_t>(i)][static_cast<size_t>(j)] = to_quotient(dense(a.dim(), p.value, f));
    }
  for (Index i = 0; i < d; ++i) {
    Mat L(d, d);
    for (Index j = 0; j < d; ++j) L.col(j) = q.products[static_cast<size_t>(i)][static_cast<size_t>(j)];
    q.left_mult.push_back(L);
  }
  return q;
}

Rational trace(const Mat& m) {
  Rational t = 0;
  for (Index i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// Radical of a finite-dimensional algebra given by left multiplication matrices.
Index radical_dimension(const Field& f, const FiniteQuotient& q) {
  const Index d = static_cast<Index>(q.basis.size());
  if (d == 0) return 0;
  auto Lof = [&](const Vec& z) {
    Mat L = Mat::Zero(d, d);
    for (Index k = 0; k < d; ++k)
      if (z(k) != 0) L += z(k) * q.left_mult[static_cast<size_t>(k)];
    return f.reduce(L);
  };
  auto prod = [&](const Vec& x, const Vec& y) {
    Vec r = Vec::Zero(d);
    for (Index i = 0; i < d; ++i) {
      if (x(i) == 0) continue;
      for (Index j = 0; j < d; ++j)
        if (y(j) != 0) r += x(i) * y(j) * q.products[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return f.reduce(r);
  };
  // I_{-1} = A; I_i = {x in I_{i-1} : Tr(L_{xy}^{p^i}) = 0 for all y}. In characteristic 0 one step suffices.
  Mat current = Mat::Identity(d, d);
  const long p = f.characteristic();
  long power = 1;
  for (int step = 0;; ++step) {
    Mat gram(current.cols(), d);
    for (Index a = 0; a < current.cols(); ++a)
      for (Index b = 0; b < d; ++b) {
        Vec eb = Vec::Zero(d);
        eb(b) = 1;
        Mat L = Lof(prod(current.col(a), eb));
        Mat Lp = Mat::Identity(d, d);
        for (long e = 0; e < power; ++e) Lp = mul(f, Lp, L);
        gram(a, b) = f.reduce(trace(Lp));
      }
    Mat k = kernel(f, Mat(gram.transpose()));
    current = mul(f, current, k);
    if (p == 0 || current.cols() == 0) break;
    if (power > d / p) break;
    power *= p;
  }
  return current.cols();
}

}  // namespace

RadicalReport check_radical(const GradedAlgebra& a) {
  const Field& f = a.field();
  RadicalReport rep;
  std::vector<Subspace> rad;
  for (int n = a.w_lo(); n <= a.w_hi(); ++n) rad.push_back(a.radical_in_degree(n));
  auto in_rad = [&](const Vec& v) {
    for (int n = a.w_lo(); n <= a.w_hi(); ++n)
      if (!rad[static_cast<size_t>(n - a.w_lo())].contains(restrict_to_degree(a, v, n))) return false;
    return true;
  };
  for (const Vec& r : a.radical())
    for (int b = 0; b < a.dim() && rep.ideal; ++b) {
      auto x = a.multiply(r, a.unit(b));
      auto y = a.multiply(a.unit(b), r);
      if ((x && !in_rad(*x)) || (y && !in_rad(*y))) rep.ideal = false;
    }
  for (const auto& s : a.slots())
    if (in_rad(a.unit(s.basis))) rep.ideal = false;

  FiniteQuotient q;
  try {
    q = finite_quotient(a);
    rep.quotient_semisimple = radical_dimension(f, q) == 0;
  } catch (const AlgebraError&) {
    rep.quotient_semisimple = false;
  }
  for (size_t c = 0; c < a.classes().size(); ++c) {
    LaurentPoly dl;
    const int des = a.designated(static_cast<int>(c));
    for (int gi : q.basis)
      if (a.basis(gi).right == des) dl.add_to(a.basis(gi).degree, 1);
    rep.simple_dims.push_back(dl);
    int loops = 0;
    for (int gi : q.basis)
      if (a.basis(gi).right == des && a.basis(gi).left == des) ++loops;
    if (loops != 1) rep.schurian = false;
  }

  // Powers of N.
  std::vector<Vec> power = a.radical();
  const int limit = 4 * (a.w_hi() - a.w_lo() + 2);
  for (int k = 1; k <= limit && !power.empty(); ++k) {
    int mn = kUnbounded;
    for (const Vec& v : power) mn = std::min(mn, a.degree_of(v));
    rep.power_min_degrees.push_back(mn);
    std::vector<Subspace> next;
    for (int n = a.w_lo(); n <= a.w_hi(); ++n) next.emplace_back(f, static_cast<Index>(a.in_degree(n).size()));
    for (const Vec& r : a.radical())
      for (const Vec& v : power) {
        auto pr = a.multiply(r, v);
        if (!pr || is_zero(*pr)) continue;
        int n = a.degree_of(*pr);
        next[static_cast<size_t>(n - a.w_lo())].insert(restrict_to_degree(a, *pr, n));
      }
    power.clear();
    for (int n = a.w_lo(); n <= a.w_hi(); ++n) {
      const auto& s = next[static_cast<size_t>(n - a.w_lo())];
      for (Index j = 0; j < s.dim(); ++j) power.push_back(extend_from_degree(a, s.row(j), n));
    }
  }
  const auto& m = rep.power_min_degrees;
  for (size_t k = 1; k < m.size(); ++k)
    if (m[k] < m[k - 1]) rep.grows = false;
  if (!power.empty() && (m.empty() || m.back() <= m.front())) rep.grows = false;
  return rep;
}

// ---------------------------------------------------------------------------
// Derived algebras

GradedAlgebra opposite(const GradedAlgebra& a) {
  GradedAlgebra o = a;
  o.mode_ = "opposite";
  for (auto& b : o.basis_) std::swap(b.left, b.right);
  const int D = a.dim();
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) o.table_[static_cast<size_t>(i * D + j)] = a.table_[static_cast<size_t>(j * D + i)];
  for (auto& p : o.paths_) std::reverse(p.begin(), p.end());
  return o;
}

GradedAlgebra quotient_algebra(const GradedAlgebra& a, const std::vector<Subspace>& ideal, int complete_to) {
  const Field& f = a.field();
  GradedAlgebra q;
  q.field_ = f;
  q.mode_ = "quotient";
  q.w_lo_ = a.w_lo_;
  q.w_hi_ = a.w_hi_;
  q.complete_to_ = a.finite() ? (is_unbounded(complete_to) ? kUnbounded : complete_to) : std::min(a.complete_to_, complete_to);
  q.gen_bound_ = a.gen_bound_;
  q.arrows_ = a.arrows_;
  std::vector<int> newpos(static_cast<size_t>(a.dim()), -1);
  for (int n = a.w_lo_; n <= a.w_hi_; ++n) {
    const auto& I = ideal[static_cast<size_t>(n - a.w_lo_)];
    for (Index j : I.complement_indices()) {
      int g = a.in_degree(n)[static_cast<size_t>(j)];
      newpos[static_cast<size_t>(g)] = static_cast<int>(q.basis_.size());
      q.basis_.push_back(a.basis_[static_cast<size_t>(g)]);
      q.paths_.push_back(a.paths_.empty() ? std::vector<int>{} : a.paths_[static_cast<size_t>(g)]);
      q.parent_index_.push_back(g);
    }
  }
  const int D = q.dim();
  q.parent_proj_ = Mat::Zero(D, a.dim());
  for (int n = a.w_lo_; n <= a.w_hi_; ++n) {
    const auto& I = ideal[static_cast<size_t>(n - a.w_lo_)];
    const auto& idx = a.in_degree(n);
    for (size_t k = 0; k < idx.size(); ++k) {
      Vec e = Vec::Zero(static_cast<Index>(idx.size()));
      e(static_cast<Index>(k)) = 1;
      Vec red = I.reduce(e);
      for (size_t t = 0; t < idx.size(); ++t)
        if (red(static_cast<Index>(t)) != 0) q.parent_proj_(newpos[static_cast<size_t>(idx[t])], idx[k]) = red(static_cast<Index>(t));
    }
  }
  auto project = [&](const Vec& v) { return mul(f, q.parent_proj_, v); };

  // Idempotents and classes.
  std::vector<int> slot_map(a.slots_.size(), -1);
  for (size_t s = 0; s < a.slots_.size(); ++s) {
    int g = a.slots_[s].basis;
    Vec img = project(a.unit(g));
    if (is_zero(img)) continue;
    if (newpos[static_cast<size_t>(g)] < 0 || img != q.unit(newpos[static_cast<size_t>(g)]))
      throw AlgebraError("UnsupportedQuotient", "an idempotent does not survive as a basis element");
    slot_map[s] = static_cast<int>(q.slots_.size());
    q.slots_.push_back({newpos[static_cast<size_t>(g)], a.slots_[s].cls});
  }
  std::vector<int> class_map(a.classes_.size(), -1);
  for (size_t c = 0; c < a.classes_.size(); ++c) {
    int ds = slot_map[static_cast<size_t>(a.designated_[c])];
    if (ds < 0) continue;
    class_map[c] = static_cast<int>(q.classes_.size());
    q.classes_.push_back(a.classes_[c]);
    q.designated_.push_back(ds);
  }
  for (auto& s : q.slots_) {
    if (class_map[static_cast<size_t>(s.cls)] < 0)
      throw AlgebraError("UnsupportedQuotient", "a class survives only partially in the quotient");
    s.cls = class_map[static_cast<size_t>(s.cls)];
  }
  for (auto& b : q.basis_) {
    b.left = slot_map[static_cast<size_t>(b.left)];
    b.right = slot_map[static_cast<size_t>(b.right)];
    if (b.left < 0 || b.right < 0) throw AlgebraError("UnsupportedQuotient", "basis element at a vanished vertex");
  }
  q.index_degrees();

  q.table_.assign(static_cast<size_t>(D * D), {});
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      const auto& p = a.product(q.parent_index_[static_cast<size_t>(i)], q.parent_index_[static_cast<size_t>(j)]);
      auto& out = q.table_[static_cast<size_t>(i * D + j)];
      if (p.above) {
        out.above = true;
        continue;
      }
      if (p.value.empty()) continue;
      Vec img = project(dense(a.dim(), p.value, f));
      for (int k = 0; k < D; ++k)
        if (img(k) != 0) out.value.emplace_back(k, img(k));
    }
  for (int n = q.w_lo_; n <= q.w_hi_; ++n) {
    Subspace s(f, static_cast<Index>(q.in_degree(n).size()));
    for (const Vec& r : a.radical_) {
      if (a.degree_of(r) != n) continue;
      s.insert(restrict_to_degree(q, project(r), n));
    }
    for (Index j = 0; j < s.dim(); ++j) q.radical_.push_back(extend_from_degree(q, s.row(j), n));
  }
  return q;
}

// ---------------------------------------------------------------------------
// Peirce data

std::vector<std::vector<LaurentPoly>> slot_peirce_dims(const GradedAlgebra& a) {
  const size_t ns = a.slots().size();
  std::vector<std::vector<LaurentPoly>> m(ns, std::vector<LaurentPoly>(ns, LaurentPoly(a.complete_to())));
  for (const auto& b : a.basis()) m[static_cast<size_t>(b.left)][static_cast<size_t>(b.right)].add_to(b.degree, 1);
  return m;
}

std::vector<std::vector<LaurentPoly>> peirce_dims(const GradedAlgebra& a) {
  const size_t nc = a.classes().size();
  auto all = slot_peirce_dims(a);
  std::vector<std::vector<LaurentPoly>> m(nc, std::vector<LaurentPoly>(nc));
  for (size_t s = 0; s < nc; ++s)
    for (size_t p = 0; p < nc; ++p)
      m[s][p] = all[static_cast<size_t>(a.designated(static_cast<int>(s)))][static_cast<size_t>(a.designated(static_cast<int>(p)))];
  return m;
}

LaurentPoly dim_q(const GradedAlgebra& a) {
  LaurentPoly d(a.complete_to());
  for (const auto& b : a.basis()) d.add_to(b.degree, 1);
  return d;
}

// ---------------------------------------------------------------------------
// Antiinvolutions

Involution involution_from_arrows(const GradedAlgebra& a, const std::map<std::string, std::string>& arrow_images,
                                  const std::map<std::string, std::string>& vertex_images) {
  if (a.mode() != "quiver") throw AlgebraError("NotAntiinvolution", "arrow images require a quiver algebra");
  const auto& arrows = a.arrows();
  const auto& verts = a.classes();
  std::vector<int> vimg(verts.size());
  for (size_t v = 0; v < verts.size(); ++v) {
    auto it = vertex_images.find(verts[v]);
    vimg[v] = it == vertex_images.end() ? static_cast<int>(v) : index_of(verts, it->second);
    if (vimg[v] < 0) throw AlgebraError("NotAntiinvolution", "unknown vertex image '" + it->second + "'");
  }
  std::vector<std::string> names;
  for (const auto& ar : arrows) names.push_back(ar.name);
  // Basis element of each arrow (arrows are never killed by homogeneous relations of length >= 2,
  // but may be by a relation that is a combination of arrows; those are looked up by path).
  auto arrow_element = [&](int k) -> Vec {
    for (int i = 0; i < a.dim(); ++i)
      if (a.basis_paths()[static_cast<size_t>(i)] == std::vector<int>{k}) return a.unit(i);
    throw AlgebraError("NotAntiinvolution", "arrow '" + names[static_cast<size_t>(k)] + "' is not a basis element");
  };
  std::vector<Vec> aimg(arrows.size());
  for (size_t k = 0; k < arrows.size(); ++k) {
    auto it = arrow_images.find(arrows[k].name);
    if (it == arrow_images.end()) throw AlgebraError("NotAntiinvolution", "no image for arrow '" + arrows[k].name + "'");
    int t = index_of(names, it->second);
    if (t < 0) throw AlgebraError("NotAntiinvolution", "unknown arrow image '" + it->second + "'");
    const auto& src = arrows[k];
    const auto& dst = arrows[static_cast<size_t>(t)];
    if (dst.degree != src.degree) throw AlgebraError("NotAntiinvolution", "tau(" + src.name + ") changes degree");
    int s = index_of(verts, src.src), d = index_of(verts, src.dst);
    if (index_of(verts, dst.src) != vimg[static_cast<size_t>(d)] || index_of(verts, dst.dst) != vimg[static_cast<size_t>(s)])
      throw AlgebraError("NotAntiinvolution", "tau(" + src.name + ") = " + dst.name + " has incompatible endpoints");
    aimg[k] = arrow_element(t);
  }
  Involution inv;
  inv.matrix = Mat::Zero(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    const auto& path = a.basis_paths()[static_cast<size_t>(i)];
    Vec img;
    if (path.empty()) {
      img = a.idempotent(vimg[static_cast<size_t>(a.basis(i).left)]);
    } else {
      // tau(a_k ... a_1) = tau(a_1) ... tau(a_k).
      img = aimg[static_cast<size_t>(path.front())];
      for (size_t t = 1; t < path.size(); ++t) {
        auto pr = a.multiply(img, aimg[static_cast<size_t>(path[t])]);
        if (!pr) throw AlgebraError("NotAntiinvolution", "image of a basis path leaves the window");
        img = *pr;
      }
    }
    inv.matrix.col(i) = img;
  }
  inv.slot_image = vimg;
  verify_involution(a, inv);
  return inv;
}

Involution involution_from_table(const GradedAlgebra& a, const std::vector<SparseVec>& images) {
  if (static_cast<int>(images.size()) != a.dim()) throw AlgebraError("NotAntiinvolution", "one image per basis element required");
  Involution inv;
  inv.matrix = Mat::Zero(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i) inv.matrix.col(i) = dense(a.dim(), images[static_cast<size_t>(i)], a.field());
  inv.slot_image.assign(a.slots().size(), -1);
  for (size_t s = 0; s < a.slots().size(); ++s) {
    Vec img = inv.matrix.col(a.slots()[s].basis);
    for (size_t u = 0; u < a.slots().size(); ++u)
      if (img == a.idempotent(static_cast<int>(u))) inv.slot_image[s] = static_cast<int>(u);
    if (inv.slot_image[s] < 0) throw AlgebraError("NotAntiinvolution", "an idempotent is not mapped to an idempotent");
  }
  verify_involution(a, inv);
  return inv;
}

void verify_involution(const GradedAlgebra& a, const Involution& t) {
  const Field& f = a.field();
  const int D = a.dim();
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      if (t.matrix(j, i) != 0 && a.basis(j).degree != a.basis(i).degree)
        throw AlgebraError("NotAntiinvolution", "tau(" + a.basis(i).name + ") is not homogeneous of the same degree");
  Mat sq = mul(f, t.matrix, t.matrix);
  for (int i = 0; i < D; ++i)
    if (Vec(sq.col(i)) != a.unit(i)) throw AlgebraError("NotAntiinvolution", "tau^2 != id on " + a.basis(i).name);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      const auto& p = a.product(i, j);
      if (p.above) continue;
      Vec lhs = mul(f, t.matrix, dense(D, p.value, f));
      auto rhs = a.multiply(t.matrix.col(j), t.matrix.col(i));
      if (!rhs) continue;
      if (lhs != *rhs)
        throw AlgebraError("NotAntiinvolution", "tau(xy) != tau(y)tau(x) for (" + a.basis(i).name + ", " + a.basis(j).name + ")");
    }
}

bool is_balanced(const GradedAlgebra& a, const Involution& t) {
  for (size_t s = 0; s < t.slot_image.size(); ++s)
    if (a.slot_class(t.slot_image[s]) != a.slot_class(static_cast<int>(s))) return false;
  return true;
}

Involution involution_on_quotient(const GradedAlgebra& h, const GradedAlgebra& q, const Involution& t) {
  Involution out;
  out.matrix = Mat::Zero(q.dim(), q.dim());
  for (int i = 0; i < q.dim(); ++i)
    out.matrix.col(i) = mul(h.field(), q.parent_projection(), Vec(t.matrix.col(q.parent_index()[static_cast<size_t>(i)])));
  out.slot_image.assign(q.slots().size(), -1);
  for (size_t s = 0; s < q.slots().size(); ++s) {
    Vec img = out.matrix.col(q.slots()[s].basis);
    for (size_t u = 0; u < q.slots().size(); ++u)
      if (img == q.idempotent(static_cast<int>(u))) out.slot_image[s] = static_cast<int>(u);
    if (out.slot_image[s] < 0) throw AlgebraError("NotAntiinvolution", "the ideal is not tau-invariant");
  }
  verify_involution(q, out);
  return out;
}

}  // namespace laurentia
