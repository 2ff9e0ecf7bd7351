#include "laurentia/corpus.hpp"

#include <map>
#include <tuple>

namespace laurentia {

namespace {

QuiverPresentation quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows, std::vector<std::string> relations) {
  QuiverPresentation q{std::move(vertices), std::move(arrows), {}};
  for (const auto& r : relations) q.relations.push_back(parse_relation(r));
  return q;
}

CorpusEntry a2_path() {
  CorpusEntry e;
  e.name = "a2_path";
  e.description = "path algebra of 1 -> 2 with a degree-1 arrow";
  e.problem.algebra = quiver({"1", "2"}, {{"a", "1", "2", 1}}, {});
  e.problem.covers = {{"1", "2"}};
  e.problem.window = 4;
  e.problem.cls = "F";
  const std::string paths = "paths: e1, e2, a (1 -> 2)";
  e.expected = {
      {"verdict:F", "F highest weight, exact", "P(2) = e2 H is simple and K(1) = span(a) = q P(2)"},
      {"cartan:1:1", "1", paths},
      {"cartan:1:2", "0", paths},
      {"cartan:2:1", "q", paths},
      {"cartan:2:2", "1", paths},
      {"dim_q_delta:1", "1", "P(1) = span(e1, a); a lies in slot 2 > 1 and is truncated"},
      {"dim_q_delta:2", "1", "P(2) = span(e2)"},
      {"dim_q_bar_delta:1", "1", "Delta(1) is already simple"},
      {"dim_q_B:1", "1", "End(L(1)) = F"},
      {"decomposition:1:1", "1", "Delta(1) = L(1)"},
      {"decomposition:1:2", "0", "Delta(1) = L(1)"},
      {"decomposition:2:2", "1", "Delta(2) = L(2)"},
      {"p_delta:1:1", "1", "0 -> q Delta(2) -> P(1) -> Delta(1) -> 0"},
      {"p_delta:1:2", "q", "0 -> q Delta(2) -> P(1) -> Delta(1) -> 0"},
      {"p_delta:2:2", "1", "P(2) = Delta(2)"},
      {"chain_length", "2", "one layer per label"},
  };
  return e;
}

CorpusEntry poly_line() {
  CorpusEntry e;
  e.name = "poly_line";
  e.description = "polynomial ring F[x] with deg x = 2 as a one-vertex quiver";
  e.problem.algebra = quiver({"o"}, {{"x", "o", "o", 2}}, {});
  e.problem.window = 8;
  e.problem.cls = "polynomial";
  const std::string hs = "Hilbert series of F[x], deg x = 2, through the window";
  e.expected = {
      {"verdict:polynomial", "polynomial highest weight, verified to degree 8", "Delta = P = H is free of rank 1 over B = H"},
      {"dim_q_delta:o", "1 + q^2 + q^4 + q^6 + q^8 + O(q^9)", hs},
      {"dim_q_bar_delta:o", "1", "Delta-bar = H / xH = L"},
      {"dim_q_B:o", "1 + q^2 + q^4 + q^6 + q^8 + O(q^9)", hs},
      {"class:polynomial", "pass", "B = F[x]"},
      {"chain_length", "1", "single label"},
  };
  return e;
}

CorpusEntry skew_c2() {
  CorpusEntry e;
  e.name = "skew_c2";
  e.description = "two vertices with degree-2 arrows alpha: + -> -, beta: - -> +, no relations";
  e.problem.algebra = quiver({"+", "-"}, {{"alpha", "+", "-", 2}, {"beta", "-", "+", 2}}, {});
  e.problem.covers = {{"-", "+"}};
  e.problem.has_involution = true;
  e.problem.inv_arrows = {{"alpha", "beta"}, {"beta", "alpha"}};
  e.problem.window = 8;
  e.problem.cls = "polynomial";
  const std::string paths = "alternating paths: one path of each even length from each vertex";
  e.expected = {
      {"verdict:polynomial", "polynomial highest weight, verified to degree 8", "K(-) = span(beta) = q^2 Delta(+), + > -"},
      {"dim_q_delta:+", "1 + q^2 + q^4 + q^6 + q^8 + O(q^9)", "+ is maximal, so Delta(+) = P(+); " + paths},
      {"dim_q_delta:-", "1", "every path of positive length from - ends in slot +"},
      {"dim_q_bar_delta:+", "1 + q^2", "P(+) modulo the loops alpha*beta: span(e+, alpha)"},
      {"dim_q_bar_delta:-", "1", "Delta(-) = L(-)"},
      {"dim_q_B:+", "1 + q^4 + q^8 + O(q^9)", "loops at +: (alpha*beta)^k of degree 4k"},
      {"dim_q_B:-", "1", "Delta(-) = L(-)"},
      {"decomposition:+:+", "1 + q^4 + q^8 + O(q^9)", paths},
      {"decomposition:+:-", "q^2 + q^6 + O(q^9)", paths},
      {"decomposition:-:-", "1", "Delta(-) = L(-)"},
      {"decomposition:-:+", "0", "Delta(-) = L(-)"},
      {"p_delta:-:-", "1 + O(q^9)", "0 -> q^2 Delta(+) -> P(-) -> L(-) -> 0"},
      {"p_delta:-:+", "q^2 + O(q^9)", "0 -> q^2 Delta(+) -> P(-) -> L(-) -> 0"},
      {"p_delta:+:+", "1 + O(q^9)", "P(+) = Delta(+)"},
      {"class:polynomial", "pass", "B(+) = F[alpha*beta], B(-) = F"},
      {"chain_length", "2", "He+H with m(q) = 1 + q^2, then the quotient F at -"},
  };
  return e;
}

// Sym = F[e1, e2] with deg e1 = 2, deg e2 = 4; monomials of degree <= top.
std::vector<std::pair<std::pair<int, int>, int>> sym_monomials(int top) {
  std::vector<std::pair<std::pair<int, int>, int>> out;
  for (int d = 0; d <= top; d += 2)
    for (int b = 0; 4 * b <= d; ++b) {
      int a = (d - 4 * b) / 2;
      out.push_back({{a, b}, d});
    }
  return out;
}

std::string monomial_name(int a, int b) {
  if (!a && !b) return "1";
  std::string s;
  if (a) s += a == 1 ? "e1" : "e1^" + std::to_string(a);
  if (b) s += b == 1 ? "e2" : "e2^" + std::to_string(b);
  return s;
}

TableAlgebra nilhecke_table(int window) {
  // Mat_2(Sym) with deg E11 = deg E22 = 0, deg E21 = 2, deg E12 = -2.
  TableAlgebra t;
  const int mdeg[2][2] = {{0, -2}, {2, 0}};
  struct Elem {
    int i, j, a, b;
  };
  std::vector<Elem> elems;
  std::map<std::tuple<int, int, int, int>, int> index;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (const auto& [ab, d] : sym_monomials(window - mdeg[i][j])) {
        int k = static_cast<int>(t.basis.size());
        index[{i, j, ab.first, ab.second}] = k;
        elems.push_back({i, j, ab.first, ab.second});
        t.basis.push_back({"E" + std::to_string(i + 1) + std::to_string(j + 1) + ":" + monomial_name(ab.first, ab.second),
                           mdeg[i][j] + d, i, j});
        if (d > 0) t.radical.push_back(k);
      }
  t.idempotents = {{index[{0, 0, 0, 0}], "o"}, {index[{1, 1, 0, 0}], "o"}};
  for (size_t x = 0; x < elems.size(); ++x)
    for (size_t y = 0; y < elems.size(); ++y) {
      const Elem& u = elems[x];
      const Elem& v = elems[y];
      if (u.j != v.i) continue;
      auto it = index.find({u.i, v.j, u.a + v.a, u.b + v.b});
      if (it == index.end()) continue;  // above the window
      t.products[{static_cast<int>(x), static_cast<int>(y)}] = {{it->second, Rational(1)}};
    }
  t.window_top = window;
  return t;
}

CorpusEntry nilhecke2() {
  CorpusEntry e;
  e.name = "nilhecke2";
  e.description = "nil Hecke algebra NH2 = End_Sym(F[x1, x2]) = Mat_2(Sym), Sym = F[e1, e2], deg e1 = 2, deg e2 = 4";
  e.problem.algebra = nilhecke_table(12);
  e.problem.window = 12;
  e.problem.cls = "polynomial";
  const std::string sym = "Hilbert series of Sym: 1/((1 - q^2)(1 - q^4))";
  e.expected = {
      {"verdict:polynomial", "polynomial highest weight, verified to degree 12", "single label: H = H e11 H, e11 H e11 = Sym"},
      {"dim_q_delta:o", "1 + 2*q^2 + 3*q^4 + 4*q^6 + 5*q^8 + 6*q^10 + 7*q^12 + O(q^13)", "H e11 = E11 Sym + E21 Sym: (1 + q^2) times " + sym},
      {"dim_q_bar_delta:o", "1 + q^2", "L = the polynomial representation modulo Sym_+"},
      {"dim_q_B:o", "1 + q^2 + 2*q^4 + 2*q^6 + 3*q^8 + 3*q^10 + 4*q^12 + O(q^13)", sym},
      {"class:polynomial", "pass", "B = Sym is polynomial on generators of degrees 2 and 4"},
      {"generators:o", "2 4", "elementary symmetric polynomials e1, e2"},
      {"rank:o", "1 + q^2 + O(q^13)", "Delta = E11 Sym + E21 Sym over Sym"},
      {"chain_length", "1", "single label"},
  };
  return e;
}

CorpusEntry dual_numbers() {
  CorpusEntry e;
  e.name = "dual_numbers";
  e.description = "dual numbers F[x]/(x^2) with deg x = 1";
  e.problem.algebra = quiver({"o"}, {{"x", "o", "o", 1}}, {"x*x"});
  e.problem.window = 4;
  e.problem.cls = "any";
  e.expected = {
      {"dim_q_delta:o", "1 + q", "Delta = P = H = span(1, x)"},
      {"dim_q_bar_delta:o", "1", "Delta-bar = L"},
      {"dim_q_B:o", "1 + q", "B = F[x]/(x^2)"},
      {"class:polynomial", "fail", "B = F[x]/(x^2) has Hilbert series 1 + q, not 1/(1 - q)"},
      {"class:any", "pass", "no condition"},
  };
  return e;
}

}  // namespace

std::vector<std::string> example_names() { return {"a2_path", "poly_line", "skew_c2", "nilhecke2", "dual_numbers"}; }

CorpusEntry load_example(const std::string& name) {
  if (name == "a2_path") return a2_path();
  if (name == "poly_line") return poly_line();
  if (name == "skew_c2") return skew_c2();
  if (name == "nilhecke2") return nilhecke2();
  if (name == "dual_numbers") return dual_numbers();
  throw UnknownExample(name);
}

CorpusEntry skew_c2_badorder() {
  CorpusEntry e = skew_c2();
  e.name = "skew_c2_badorder";
  e.description = "skew_c2 with the order reversed (+ < -)";
  e.problem.covers = {{"+", "-"}};
  e.expected = {};
  return e;
}

}  // namespace laurentia
