#include "doctest.h"
#include "laurentia/strat.hpp"

using namespace laurentia;

namespace {

LaurentPoly poly(std::initializer_list<std::pair<int, long>> terms, int vt = kUnbounded) {
  std::map<int, Integer> c;
  for (auto [d, v] : terms) c[d] += v;
  return LaurentPoly(std::move(c), vt);
}

AlgebraPtr skew(int window = 8) {
  QuiverPresentation q{{"+", "-"}, {{"alpha", "+", "-", 2}, {"beta", "-", "+", 2}}, {}};
  return std::make_shared<GradedAlgebra>(from_quiver(q, window, Field()));
}
OrderSpec skew_order() { return OrderSpec({"+", "-"}, {{"-", "+"}}); }

AlgebraPtr a2() {
  QuiverPresentation q{{"1", "2"}, {{"a", "1", "2", 1}}, {}};
  return std::make_shared<GradedAlgebra>(from_quiver(q, 4, Field()));
}
OrderSpec a2_order() { return OrderSpec({"1", "2"}, {{"1", "2"}}); }

AlgebraPtr dual_numbers() {
  QuiverPresentation q{{"o"}, {{"x", "o", "o", 1}}, {parse_relation("x*x")}};
  return std::make_shared<GradedAlgebra>(from_quiver(q, 4, Field()));
}

AlgebraPtr poly_line(int window = 8) {
  QuiverPresentation q{{"o"}, {{"x", "o", "o", 2}}, {}};
  return std::make_shared<GradedAlgebra>(from_quiver(q, window, Field()));
}

}  // namespace

TEST_CASE("order specs") {
  OrderSpec o({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(o.less(0, 2));
  CHECK_FALSE(o.less(2, 0));
  CHECK(o.length() == 2);
  CHECK(o.length(o.above_eq(1)) == 1);
  CHECK(o.linear_extension() == std::vector<int>{0, 1, 2});
  CHECK(o.below(2) == std::set<int>{0, 1});
  CHECK_THROWS_AS(OrderSpec({"a", "b"}, {{"a", "b"}, {"b", "a"}}), OrderError);
  CHECK_THROWS_AS(OrderSpec({"a"}, {{"a", "z"}}), OrderError);
  OrderSpec anti({"x", "y"}, {});
  CHECK(anti.length() == 0);
  CHECK(anti.linear_extension() == std::vector<int>{0, 1});
}

TEST_CASE("standard modules of the two-cycle quiver") {
  Stratification s(skew(), skew_order());
  const auto& A = s.alg();
  const int plus = A.class_index("+"), minus = A.class_index("-");
  const auto& dp = s.at(plus);
  const auto& dm = s.at(minus);
  CHECK(dp.delta.dim_q().agrees_with(dp.P.dim_q()));
  CHECK(dm.delta.dim_q() == poly({{0, 1}}));
  CHECK(dm.K.module.dim_q().agrees_with(poly({{2, 1}, {4, 1}, {6, 1}, {8, 1}})));
  CHECK(dp.B.dim_q().agrees_with(poly({{0, 1}, {4, 1}, {8, 1}})));
  CHECK(dp.bar_delta.dim_q() == poly({{0, 1}, {2, 1}}));
  CHECK(dp.bar_finite);
  CHECK(dm.B.dim_q() == poly({{0, 1}}));

  auto cr = class_membership(dp.B, "polynomial");
  CHECK(cr.verdict.pass);
  CHECK(cr.generator_degrees == std::vector<int>{4});
  CHECK(class_membership(dm.B, "F").verdict.pass);
  CHECK_FALSE(class_membership(dp.B, "F").verdict.pass);
}

TEST_CASE("delta filtrations and the axioms") {
  Stratification s(skew(), skew_order());
  const int plus = s.alg().class_index("+"), minus = s.alg().class_index("-");
  Filtration f = delta_filtration(s.at(minus).P, s);
  REQUIRE(f.ok);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].pi == minus);
  CHECK(f.factors[0].shift == 0);
  CHECK(f.factors[1].pi == plus);
  CHECK(f.factors[1].shift == 2);
  CHECK(f.multiplicity[static_cast<size_t>(plus)].agrees_with(poly({{2, 1}})));

  StratReport r = check_axioms(s, "polynomial");
  INFO(r.verdict);
  for (const auto& w : r.witnesses) INFO(w);
  CHECK(r.pass);
  CHECK(r.verdict == "polynomial highest weight, verified to degree 8");
  CHECK(r.per_pi[static_cast<size_t>(plus)].rank[static_cast<size_t>(minus)].agrees_with(poly({{2, 1}})));
}

TEST_CASE("a non-filtered module is rejected") {
  Stratification s(skew(), skew_order());
  const auto& a = s.algebra();
  GradedModule l = direct_sum({simple_module(a, 0), simple_module(a, 1)});
  Filtration f = delta_filtration(l, s);
  CHECK_FALSE(f.ok);
  CHECK(f.fail_pi == a->class_index("+"));
}

TEST_CASE("A2 path algebra") {
  Stratification s(a2(), a2_order());
  StratReport r = check_axioms(s, "F");
  INFO(r.verdict);
  CHECK(r.pass);
  CHECK(r.decomposition[0][0] == poly({{0, 1}}));
  CHECK(r.decomposition[0][1].is_zero());
  CHECK(r.p_delta[0][1] == poly({{1, 1}}));
  BggReport b = bgg_check(s, nullptr);
  for (const auto& w : b.witnesses) INFO(w);
  CHECK(b.pass);
  ResolutionReport rr = resolution_checks(s, "F");
  for (const auto& w : rr.witnesses) INFO(w);
  CHECK(rr.pass);
  CHECK(rr.pd[0] == 1);
  CHECK(rr.pd[1] == 0);
  GradedModule l1 = simple_module(s.algebra(), 0), l2 = simple_module(s.algebra(), 1);
  CHECK(ext_against_finite(l1, l2, 1).dims == poly({{-1, 1}}));
  CHECK(ext_against_finite(l1, l2, 2).dims.is_zero());
  CHECK(ext_against_finite(l2, l1, 1).dims.is_zero());
}

TEST_CASE("dual numbers") {
  auto a = dual_numbers();
  GradedModule l = simple_module(a, 0);
  for (int i = 0; i <= 3; ++i) CHECK(ext_against_finite(l, l, i).dims == poly({{-i, 1}}));
}

TEST_CASE("heredity chains") {
  HeredityChain c = heredity_chain(skew(), skew_order(), "polynomial");
  INFO(c.witness);
  CHECK(c.pass);
  REQUIRE(c.layers.size() == 2);
  CHECK(c.layers[0].label == "+");
  CHECK(c.layers[0].multiplicity.agrees_with(poly({{0, 1}, {2, 1}})));
  CHECK(c.layers[1].label == "-");

  HeredityChain d = heredity_chain(a2(), a2_order(), "F");
  INFO(d.witness);
  CHECK(d.pass);
  CHECK(d.layers[0].multiplicity == poly({{0, 1}, {1, 1}}));
}

TEST_CASE("polynomial line") {
  Stratification s(poly_line(), OrderSpec({"o"}, {}));
  StratReport r = check_axioms(s, "polynomial");
  INFO(r.verdict);
  CHECK(r.pass);
  ResolutionReport rr = resolution_checks(s, "polynomial");
  for (const auto& w : rr.witnesses) INFO(w);
  CHECK(rr.pass);
  CHECK(rr.pd[0] == 0);
}

TEST_CASE("reciprocity and cell data with the swapping involution") {
  auto a = skew();
  Involution tau = involution_from_arrows(*a, {{"alpha", "beta"}, {"beta", "alpha"}}, {{"+", "+"}, {"-", "-"}});
  Stratification s(a, skew_order());
  BggReport b = bgg_check(s, &tau);
  for (const auto& w : b.witnesses) INFO(w);
  CHECK(b.pass);
  CHECK(b.tau_checked);
  const int plus = a->class_index("+"), minus = a->class_index("-");
  CHECK(b.left[static_cast<size_t>(minus)][static_cast<size_t>(plus)].agrees_with(poly({{2, 1}})));
  CHECK(b.right[static_cast<size_t>(minus)][static_cast<size_t>(plus)].agrees_with(poly({{2, 1}})));

  HeredityChain c = heredity_chain(a, skew_order(), "polynomial");
  REQUIRE(c.pass);
  CellReport cell = cellularize(c, skew_order(), tau);
  INFO(cell.witness);
  CHECK(cell.pass);
  CHECK(cell.layers[0].dim_V == poly({{0, 1}, {2, 1}}));
  CHECK(cell.layers[0].rank_left.agrees_with(poly({{0, 1}, {2, 1}})));
  CHECK(cell.layers[0].rank_right.agrees_with(poly({{0, 1}, {2, 1}})));
}

TEST_CASE("the reversed order on the two-cycle quiver") {
  // The quiver is symmetric under swapping the vertices, so the verdict is the same.
  Stratification s(skew(), OrderSpec({"+", "-"}, {{"+", "-"}}));
  StratReport r = check_axioms(s, "polynomial");
  CHECK(r.pass);
}

TEST_CASE("cellularize refuses characteristic two") {
  QuiverPresentation q{{"+", "-"}, {{"alpha", "+", "-", 2}, {"beta", "-", "+", 2}}, {}};
  auto a = std::make_shared<GradedAlgebra>(from_quiver(q, 8, Field(2)));
  Involution tau = involution_from_arrows(*a, {{"alpha", "beta"}, {"beta", "alpha"}}, {{"+", "+"}, {"-", "-"}});
  HeredityChain c = heredity_chain(a, skew_order(), "polynomial");
  REQUIRE(c.pass);
  CHECK_THROWS_AS(cellularize(c, skew_order(), tau), CellError);
}
