// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact over Q.
#include "evaluate.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>

using namespace laurentia;
using testing::Evaluator;

namespace {

struct Criterion {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

Vec unit(Index n, Index k) {
  Vec v = Vec::Zero(n);
  v(k) = 1;
  return v;
}

LaurentPoly lp(const std::string& s) { return parse_laurent(s); }

int idx(const Stratification& s, const std::string& l) { return s.order().index(l); }

// ---------------------------------------------------------------------------
// Criterion 1: skew_c2

Criterion skew_c2() {
  Criterion c;
  auto t0 = std::chrono::steady_clock::now();
  CorpusEntry e = load_example("skew_c2");
  Evaluator ev(e.problem);
  const Stratification& s = ev.strat();
  const int plus = idx(s, "+"), minus = idx(s, "-");
  const StratReport& r = ev.report("polynomial");
  c.require(r.pass && r.verdict.rfind("polynomial highest weight", 0) == 0, "verdict: " + r.verdict);
  c.require(s.at(plus).B.dim_q() == lp("1 + q^4 + q^8 + O(q^9)"), "dim_q B(+) = " + s.at(plus).B.dim_q().str());
  c.require(s.at(plus).bar_delta.dim_q() == lp("1 + q^2"), "dim_q bar Delta(+) = " + s.at(plus).bar_delta.dim_q().str());
  const LaurentPoly pm = r.p_delta[static_cast<size_t>(minus)][static_cast<size_t>(plus)];
  c.require(pm.agrees_with(lp("q^2")) && pm.coeff(2) == 1, "(P(-):Delta(+)) = " + pm.str());
  BggReport b = bgg_check(s, &*ev.built().tau);
  c.require(b.pass, "BGG table mismatch");
  for (int pi = 0; pi < 2; ++pi)
    for (int sg = 0; sg < 2; ++sg) {
      const auto& l = b.left[static_cast<size_t>(pi)][static_cast<size_t>(sg)];
      c.require(l.agrees_with(b.right[static_cast<size_t>(pi)][static_cast<size_t>(sg)]) &&
                    l.agrees_with(b.right_tau[static_cast<size_t>(pi)][static_cast<size_t>(sg)]),
                "BGG entry (" + s.order().label(pi) + ", " + s.order().label(sg) + ")");
    }
  HeredityChain h = heredity_chain(ev.built().algebra, ev.built().order, "polynomial");
  c.require(h.pass && h.layers.size() == 2, "heredity chain: " + h.witness);
  for (const auto& l : h.layers) c.require(l.si1.pass && l.si2.pass && l.freeness.pass, "layer " + l.label);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  c.notes.push_back("runtime " + std::to_string(secs).substr(0, 5) + " s");
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 2: a2_path

Criterion a2_path() {
  Criterion c;
  Evaluator ev(load_example("a2_path").problem);
  const Stratification& s = ev.strat();
  const StratReport& r = ev.report("F");
  c.require(r.pass && is_unbounded(r.horizon), "verdict: " + r.verdict);
  auto cartan = peirce_dims(s.alg());
  const int one = s.alg().class_index("1"), two = s.alg().class_index("2");
  c.require(cartan[static_cast<size_t>(one)][static_cast<size_t>(one)] == lp("1") &&
                cartan[static_cast<size_t>(one)][static_cast<size_t>(two)] == lp("0") &&
                cartan[static_cast<size_t>(two)][static_cast<size_t>(one)] == lp("q") &&
                cartan[static_cast<size_t>(two)][static_cast<size_t>(two)] == lp("1"),
            "Cartan matrix");
  ResolutionReport rr = resolution_checks(s, "F");
  c.require(rr.pd[static_cast<size_t>(idx(s, "1"))] == 1 && rr.pd[static_cast<size_t>(idx(s, "2"))] == 0, "projective dimensions");
  c.require(rr.pass, "pd bound");
  c.require(rr.gldim_bound == 2, "global dimension bound " + std::to_string(rr.gldim_bound));
  for (int pi = 0; pi < 2; ++pi)
    for (int sg = 0; sg < 2; ++sg) {
      GradedModule l = simple_module(s.algebra(), pi), w = simple_module(s.algebra(), sg);
      ProjectiveResolution res = resolve(l, 5);
      for (int i = 2; i <= 4; ++i) {
        ExtResult x = ext_from_resolution(res, w, i);
        c.require(x.dims.is_zero() && is_unbounded(-x.exact_from), "Ext^" + std::to_string(i) + " nonzero or truncated");
      }
    }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 3: nilhecke2

Criterion nilhecke2() {
  Criterion c;
  Evaluator ev(load_example("nilhecke2").problem);
  const Stratification& s = ev.strat();
  c.require(s.size() == 1, "single label");
  const StratReport& r = ev.report("polynomial");
  c.require(r.pass, "verdict: " + r.verdict);
  ClassReport cr = class_membership(s.at(0).B, "polynomial");
  c.require(cr.verdict.pass && cr.generator_degrees == std::vector<int>{2, 4}, "B generators");
  RankReport rk = right_rank(delta_module(s, 0), s.at(0).B);
  c.require(rk.free.pass, "Delta free over B: " + rk.free.witness);
  LaurentPoly lhs = s.at(0).delta.dim_q(), rhs = rk.rank * s.at(0).B.dim_q();
  for (int t = 0; t <= 12; ++t) c.require(lhs.coeff(t) == rhs.coeff(t), "degree " + std::to_string(t));
  c.require(lhs.valid_to() >= 12 && rhs.valid_to() >= 12, "horizon below 12");
  c.notes.push_back("rank_q = " + rk.rank.str());
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 4: negative tests

Criterion negatives() {
  Criterion c;
  {
    Evaluator ev(skew_c2_badorder().problem);
    const StratReport& r = ev.report("polynomial");
    const std::string want = "SC1 fails at π = -: factor Δ(+) with + < -";
    bool found = std::find(r.witnesses.begin(), r.witnesses.end(), want) != r.witnesses.end();
    c.require(!r.pass && found, "reversed order: verdict '" + r.verdict + "'" +
                                    (r.witnesses.empty() ? std::string() : ", first witness '" + r.witnesses.front() + "'"));
  }
  {
    Evaluator ev(load_example("dual_numbers").problem);
    c.require(!ev.report("polynomial").pass, "dual numbers pass class polynomial");
    c.require(ev.report("any").pass, "dual numbers fail class any");
  }
  try {
    parse_problem(
        "[algebra]\nvertices = [\"o\"]\narrows = [ { name = \"x\", src = \"o\", dst = \"o\", degree = 1 }, "
        "{ name = \"y\", src = \"o\", dst = \"o\", degree = 2 } ]\nrelations = [\"x*y - x\"]\n");
    c.require(false, "mixed-degree relation accepted");
  } catch (const InputError& e) {
    c.require(e.line == 4, "mixed-degree relation rejected without its line");
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 5: invariant suites

struct InvariantTally {
  int algebras = 0, passing = 0, agreements = 0, ext_pairs = 0;
};

void invariants(const AlgebraPtr& a, const OrderSpec& order, const std::string& cls, const std::string& name, Criterion& c,
                InvariantTally& tally) {
  Stratification s(a, order);
  const OrderSpec& o = s.order();
  const int n = s.size();
  StratReport r = check_axioms(s, cls);
  HeredityChain h = heredity_chain(a, order, cls);
  ++tally.algebras;
  c.require(r.pass == h.pass, name + ": axioms " + (r.pass ? "pass" : "fail") + " but chain " + (h.pass ? "passes" : "fails: " + h.witness) +
                                  (r.witnesses.empty() ? std::string() : " [" + r.witnesses.front() + "]"));
  if (r.pass == h.pass) ++tally.agreements;
  for (int pi = 0; pi < n; ++pi) {
    const StandardData& d = s.at(pi);
    for (int sg = 0; sg < n; ++sg)
      if (!o.leq(sg, pi))
        c.require(r.decomposition[static_cast<size_t>(pi)][static_cast<size_t>(sg)].is_zero(), name + ": [Delta:L] not triangular");
    c.require(graded_multiplicity(d.delta, pi).agrees_with(d.B.dim_q()), name + ": [Delta(pi):L(pi)] != dim B");
  }
  if (!r.pass) return;
  ++tally.passing;
  auto cartan = peirce_dims(s.alg());
  for (int pi = 0; pi < n; ++pi) {
    const StandardData& d = s.at(pi);
    c.require((d.bar_delta.dim_q() * d.B.dim_q()).agrees_with(d.delta.dim_q()),
              name + ": dim bar Delta * dim B != dim Delta");
    for (int sg = 0; sg < n; ++sg) {
      LaurentPoly sum;
      for (int rho = 0; rho < n; ++rho)
        sum = sum + r.p_delta[static_cast<size_t>(pi)][static_cast<size_t>(rho)] * r.decomposition[static_cast<size_t>(rho)][static_cast<size_t>(sg)];
      const int as = s.alg().class_index(o.label(sg)), ap = s.alg().class_index(o.label(pi));
      c.require(cartan[static_cast<size_t>(as)][static_cast<size_t>(ap)].agrees_with(sum), name + ": Cartan factorization");
    }
  }
  for (int pi = 0; pi < n; ++pi)
    for (int sg = 0; sg < n; ++sg) {
      const GradedModule& w = s.at(sg).delta;
      if (!w.finite()) continue;
      ExtResult x = ext_against_finite(s.at(pi).delta, w, 1);
      ++tally.ext_pairs;
      if (!x.dims.is_zero()) c.require(o.less(pi, sg), name + ": Ext^1(Delta(" + o.label(pi) + "), Delta(" + o.label(sg) + ")) != 0");
    }
}

std::shared_ptr<GradedAlgebra> random_algebra(std::mt19937& rng, OrderSpec& order) {
  std::uniform_int_distribution<int> nv(2, 3), na(1, 4), deg(1, 3), coin(0, 1), nrel(0, 2);
  QuiverPresentation q;
  const int v = nv(rng);
  for (int k = 0; k < v; ++k) q.vertices.push_back("v" + std::to_string(k));
  const int arrows = na(rng);
  std::uniform_int_distribution<int> pick(0, v - 1);
  for (int k = 0; k < arrows; ++k)
    q.arrows.push_back({"a" + std::to_string(k), q.vertices[static_cast<size_t>(pick(rng))], q.vertices[static_cast<size_t>(pick(rng))], deg(rng)});
  // Paths of length 2 or 3, grouped by (src, dst, degree), as relation material.
  std::map<std::tuple<std::string, std::string, int>, std::vector<std::vector<std::string>>> paths;
  std::function<void(std::vector<int>&)> walk = [&](std::vector<int>& p) {
    if (p.size() >= 2) {
      int d = 0;
      std::vector<std::string> names;
      for (int k : p) {
        d += q.arrows[static_cast<size_t>(k)].degree;
        names.push_back(q.arrows[static_cast<size_t>(k)].name);
      }
      paths[{q.arrows[static_cast<size_t>(p.front())].src, q.arrows[static_cast<size_t>(p.back())].dst, d}].push_back(names);
    }
    if (p.size() == 3) return;
    for (int k = 0; k < arrows; ++k)
      if (q.arrows[static_cast<size_t>(k)].src == q.arrows[static_cast<size_t>(p.back())].dst) {
        p.push_back(k);
        walk(p);
        p.pop_back();
      }
  };
  for (int k = 0; k < arrows; ++k) {
    std::vector<int> p{k};
    walk(p);
  }
  std::vector<std::vector<std::vector<std::string>>> groups;
  for (auto& [key, list] : paths) groups.push_back(list);
  const int rels = groups.empty() ? 0 : nrel(rng);
  for (int k = 0; k < rels; ++k) {
    const auto& g = groups[std::uniform_int_distribution<size_t>(0, groups.size() - 1)(rng)];
    Relation r;
    r.terms.push_back({Rational(1), g[std::uniform_int_distribution<size_t>(0, g.size() - 1)(rng)]});
    if (g.size() > 1 && coin(rng)) {
      auto other = g[std::uniform_int_distribution<size_t>(0, g.size() - 1)(rng)];
      if (other != r.terms.front().arrows) r.terms.push_back({Rational(-1 - coin(rng)), other});
    }
    q.relations.push_back(r);
  }
  // Random partial order: a random linear order with some covers dropped.
  std::vector<std::string> perm = q.vertices;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<std::string, std::string>> covers;
  for (size_t k = 0; k + 1 < perm.size(); ++k)
    if (coin(rng) || coin(rng)) covers.emplace_back(perm[k], perm[k + 1]);
  order = OrderSpec(q.vertices, covers);
  return std::make_shared<GradedAlgebra>(from_quiver(q, 8, Field()));
}

Criterion invariant_suite() {
  Criterion c;
  InvariantTally tally;
  for (const auto& name : example_names()) {
    CorpusEntry e = load_example(name);
    Built b = build(e.problem);
    invariants(b.algebra, b.order, e.problem.cls, name, c, tally);
  }
  std::mt19937 rng(20261018);
  int accepted = 0, attempts = 0;
  while (accepted < 60 && attempts < 2000) {
    ++attempts;
    OrderSpec order;
    std::shared_ptr<GradedAlgebra> a;
    try {
      a = random_algebra(rng, order);
    } catch (const AlgebraError&) {
      continue;
    }
    if (a->dim() > 60) continue;
    ++accepted;
    try {
      invariants(a, order, "connected", "random #" + std::to_string(accepted), c, tally);
    } catch (const std::exception& ex) {
      c.require(false, "random #" + std::to_string(accepted) + ": " + ex.what());
    }
  }
  c.require(accepted >= 50, "only " + std::to_string(accepted) + " random algebras");
  c.notes.push_back(std::to_string(tally.algebras) + " algebras (" + std::to_string(accepted) + " random), " +
                    std::to_string(tally.passing) + " passing, " + std::to_string(tally.agreements) + " axiom/chain agreements, " +
                    std::to_string(tally.ext_pairs) + " Ext pairs");
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 6: Ext against the normalized bar complex relative to the idempotents

// Cochains of degree n: E-balanced maps N^{(i)} (x) V -> W, where N is spanned by the
// positive-degree basis elements.
class BarComplex {
 public:
  BarComplex(const GradedModule& v, const GradedModule& w) : v_(v), w_(w), a_(v.alg()) {
    for (int b = 0; b < a_.dim(); ++b)
      if (a_.basis(b).degree > 0) rad_.push_back(b);
  }

 private:
  struct Chain {
    std::vector<int> ns;  // radical basis elements n_1 ... n_i
    int t;                // degree of v
    Index k;              // basis index of v in V_t
    int degree;           // total degree
    int head_slot;        // slot of the left end
  };

  std::vector<Chain> chains(int i, int n) {
    std::vector<Chain> out;
    for (int t = v_.lo(); t <= v_.hi(); ++t)
      for (Index k = 0; k < v_.dim(t); ++k) {
        std::vector<int> ns;
        extend(ns, i, v_.slots(t)[static_cast<size_t>(k)], t, k, n, out);
      }
    return out;
  }

  void extend(std::vector<int>& ns, int left, int slot, int t, Index k, int n, std::vector<Chain>& out) {
    if (left == 0) {
      int deg = t;
      for (int b : ns) deg += a_.basis(b).degree;
      if (deg + n >= w_.lo() && deg + n <= w_.hi()) out.push_back({ns, t, k, deg, slot});
      return;
    }
    for (int b : rad_)
      if (a_.basis(b).right == slot) {
        ns.insert(ns.begin(), b);
        extend(ns, left - 1, a_.basis(b).left, t, k, n, out);
        ns.erase(ns.begin());
      }
  }

  // Columns: (chain, basis index of e_head W_{deg+n}).
  Index cochain_dim(const std::vector<Chain>& cs) {
    Index d = 0;
    for (const auto& c : cs) d += static_cast<Index>(w_.slot_indices(c.degree + cd_n_, c.head_slot).size());
    return d;
  }

  Index rank_of(int i, int n) {
    cd_n_ = n;
    auto src = chains(i, n);
    auto dst = chains(i + 1, n);
    if (src.empty() || dst.empty()) return 0;
    std::map<std::pair<std::vector<int>, std::pair<int, Index>>, std::pair<Index, std::vector<Index>>> col_of;
    Index cols = 0;
    for (const auto& c : src) {
      auto wi = w_.slot_indices(c.degree + n, c.head_slot);
      col_of[{c.ns, {c.t, c.k}}] = {cols, wi};
      cols += static_cast<Index>(wi.size());
    }
    Index rows = 0;
    std::vector<Index> row_start;
    for (const auto& c : dst) {
      row_start.push_back(rows);
      rows += w_.dim(c.degree + n);
    }
    Mat d = Mat::Zero(rows, cols);
    const Field& f = a_.field();
    // (df)(n_1..n_{i+1}, v) = n_1 f(n_2..) + sum_k (-1)^k f(.., n_k n_{k+1}, ..) + (-1)^{i+1} f(n_1..n_i, n_{i+1} v)
    for (size_t r = 0; r < dst.size(); ++r) {
      const Chain& c = dst[r];
      const int tw = c.degree + n;
      auto add = [&](const std::vector<int>& ns, int t, const Vec& vv, const Rational& sign, const std::function<Vec(const Vec&)>& post) {
        // f evaluated on ns (x) vv, then post-composed; vv in V_t.
        for (Index k = 0; k < vv.size(); ++k) {
          if (vv(k) == 0) continue;
          auto it = col_of.find({ns, {t, k}});
          if (it == col_of.end()) continue;
          const auto& [col0, wi] = it->second;
          int deg = t;
          for (int b : ns) deg += a_.basis(b).degree;
          for (size_t j = 0; j < wi.size(); ++j) {
            Vec img = post(unit(w_.dim(deg + n), wi[j]));
            for (Index q = 0; q < img.size(); ++q)
              if (img(q) != 0) d(row_start[r] + q, col0 + static_cast<Index>(j)) += sign * vv(k) * img(q);
          }
        }
      };
      const int m = static_cast<int>(c.ns.size());
      // n_1 f(n_2 ..., v)
      {
        std::vector<int> rest(c.ns.begin() + 1, c.ns.end());
        const int n1 = c.ns.front();
        int inner = c.degree - a_.basis(n1).degree + n;
        add(rest, c.t, unit(v_.dim(c.t), c.k), Rational(1), [&, inner, n1](const Vec& x) {
          auto y = w_.apply(a_.unit(n1), inner, x);
          return y && y->size() ? *y : Vec(Vec::Zero(w_.dim(tw)));
        });
      }
      // inner products
      for (int k = 0; k + 1 < m; ++k) {
        const auto& p = a_.product(c.ns[static_cast<size_t>(k)], c.ns[static_cast<size_t>(k + 1)]);
        Rational sign = (k + 1) % 2 ? Rational(-1) : Rational(1);
        for (const auto& [b, coef] : p.value) {
          if (a_.basis(b).degree <= 0) continue;
          std::vector<int> ns = c.ns;
          ns.erase(ns.begin() + k, ns.begin() + k + 2);
          ns.insert(ns.begin() + k, b);
          add(ns, c.t, unit(v_.dim(c.t), c.k), sign * coef, [](const Vec& x) { return x; });
        }
      }
      // f(n_1 .. n_i, n_{i+1} v)
      {
        std::vector<int> first(c.ns.begin(), c.ns.end() - 1);
        const int last = c.ns.back();
        auto nv = v_.apply(a_.unit(last), c.t, unit(v_.dim(c.t), c.k));
        if (nv && nv->size()) {
          Rational sign = m % 2 ? Rational(-1) : Rational(1);
          add(first, c.t + a_.basis(last).degree, *nv, sign, [](const Vec& x) { return x; });
        }
      }
    }
    return rank(f, f.reduce(d));
  }

  const GradedModule& v_;
  const GradedModule& w_;
  const GradedAlgebra& a_;
  std::vector<int> rad_;
  int cd_n_ = 0;

 public:
  LaurentPoly ext_checked(int i) {
    LaurentPoly out;
    for (int n = -40; n <= 40; ++n) {
      cd_n_ = n;
      auto ci = chains(i, n);
      if (ci.empty()) continue;
      Index dim = cochain_dim(ci);
      Index rout = rank_of(i, n);
      Index rin = i > 0 ? rank_of(i - 1, n) : 0;
      long d = static_cast<long>(dim) - static_cast<long>(rout) - static_cast<long>(rin);
      if (d) out.set(n, Integer(d));
    }
    return out;
  }
};

Criterion ext_oracle() {
  Criterion c;
  int compared = 0, nonzero = 0;
  for (const std::string name : {"a2_path", "dual_numbers"}) {
    Built b = build(load_example(name).problem);
    const AlgebraPtr& a = b.algebra;
    Stratification s(a, b.order);
    std::vector<std::pair<std::string, GradedModule>> vs, ws;
    for (int pi = 0; pi < s.size(); ++pi) {
      const std::string l = s.order().label(pi);
      vs.emplace_back("L(" + l + ")", simple_module(a, pi));
      vs.emplace_back("P(" + l + ")", projective(a, pi));
      vs.emplace_back("Delta(" + l + ")", s.at(pi).delta);
      ws.emplace_back("L(" + l + ")", simple_module(a, pi));
      ws.emplace_back("Pbar(" + l + ")", s.at(pi).bar_delta);
    }
    for (const auto& [vn, v] : vs)
      for (const auto& [wn, w] : ws) {
        if (!w.finite()) continue;
        ProjectiveResolution r = resolve(v, 4);
        BarComplex bar(v, w);
        for (int i = 0; i <= 3; ++i) {
          ExtResult x = ext_from_resolution(r, w, i);
          LaurentPoly y = bar.ext_checked(i);
          ++compared;
          if (!y.is_zero()) ++nonzero;
          c.require(is_unbounded(-x.exact_from) && x.dims == y,
                    name + ": Ext^" + std::to_string(i) + "(" + vn + ", " + wn + ") = " + x.dims.str() + " vs bar " + y.str());
        }
      }
  }
  c.notes.push_back(std::to_string(compared) + " Ext groups compared, " + std::to_string(nonzero) + " nonzero");
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 7: duality

Criterion duality() {
  Criterion c;
  Built b = build(load_example("skew_c2").problem);
  Stratification s(b.algebra, b.order);
  for (int sg = 0; sg < s.size(); ++sg) {
    c.require(s.at(sg).bar_finite, "bar Delta not certified finite");
    GradedModule nabla = dual(s.at(sg).bar_delta, *b.tau);
    for (int pi = 0; pi < s.size(); ++pi) {
      const GradedModule& delta = s.at(pi).delta;
      LaurentPoly hom;
      for (int n = nabla.lo() - delta.hi() - 2; n <= nabla.hi() - delta.lo() + 2; ++n) {
        size_t d = hom_space(delta, nabla, n).size();
        if (d) hom.set(n, Integer(static_cast<long>(d)));
      }
      const std::string pair = "(" + s.order().label(pi) + ", " + s.order().label(sg) + ")";
      c.require(hom == (pi == sg ? lp("1") : lp("0")), "Hom" + pair + " = " + hom.str());
      ExtResult x = ext_against_finite(delta, nabla, 1);
      c.require(x.dims.is_zero(), "Ext^1" + pair + " = " + x.dims.str());
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 8: cell structure

Criterion cells() {
  Criterion c;
  Built b = build(load_example("skew_c2").problem);
  HeredityChain h = heredity_chain(b.algebra, b.order, "polynomial");
  c.require(h.pass, "chain: " + h.witness);
  if (!h.pass) return c;
  CellReport r = cellularize(h, b.order, *b.tau);
  c.require(r.pass && r.layers.size() == 2, "cell structure: " + r.witness);
  for (const auto& l : r.layers) {
    LaurentPoly prod = l.rank_left * l.dim_B * l.rank_right;
    for (int t = 0; t <= 8; ++t) c.require(prod.coeff(t) == l.dim_J.coeff(t), "layer " + l.label + " degree " + std::to_string(t));
    c.require(l.tau_invariant.pass, "layer " + l.label + " not tau-invariant");
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Criterion()>>> all = {
      {"skew_c2 oracle: verdict, B, bar Delta, (P:Delta), BGG, chain", skew_c2},
      {"a2_path oracle: class F, Cartan, pd, Ext vanishing", a2_path},
      {"nilhecke2 oracle: polynomial B on degrees 2 and 4, dim Delta = rank * dim B", nilhecke2},
      {"negative tests: reversed order, dual numbers, mixed-degree relation", negatives},
      {"invariant suites on the corpus and random quiver algebras", invariant_suite},
      {"Ext against the bar complex", ext_oracle},
      {"duality: Hom(Delta, nabla-bar) and Ext^1(Delta, nabla-bar)", duality},
      {"cell structure of skew_c2", cells},
  };
  int failed = 0;
  for (size_t k = 0; k < all.size(); ++k) {
    Criterion c;
    try {
      c = all[k].second();
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << k + 1 << ": " << (c.pass ? "PASS" : "FAIL") << ": " << all[k].first;
    if (!c.notes.empty()) {
      std::cout << " (";
      for (size_t j = 0; j < c.notes.size() && j < 4; ++j) std::cout << (j ? "; " : "") << c.notes[j];
      if (c.notes.size() > 4) std::cout << "; +" << c.notes.size() - 4 << " more";
      std::cout << ")";
    }
    std::cout << "\n";
    if (!c.pass) ++failed;
  }
  return failed ? 1 : 0;
}
