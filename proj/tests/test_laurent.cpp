#include "doctest.h"
#include "laurentia/laurent.hpp"

#include <random>

using namespace laurentia;

namespace {

LaurentPoly poly(std::initializer_list<std::pair<int, long>> terms, int vt = kUnbounded) {
  std::map<int, Integer> c;
  for (auto [d, v] : terms) c[d] += v;
  return LaurentPoly(std::move(c), vt);
}

// Dense convolution over an explicit degree range, kept independent of the sparse code.
std::map<int, long> convolve(const std::map<int, long>& a, const std::map<int, long>& b, int cap) {
  std::map<int, long> out;
  for (int i = -40; i <= 40; ++i)
    for (int j = -40; j <= 40; ++j) {
      auto ia = a.find(i), jb = b.find(j);
      if (ia == a.end() || jb == b.end() || i + j > cap) continue;
      out[i + j] += ia->second * jb->second;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::map<int, long> to_small(const LaurentPoly& p) {
  std::map<int, long> m;
  for (const auto& [d, v] : p.coeffs()) m[d] = v.convert_to<long>();
  return m;
}

LaurentPoly random_poly(std::mt19937& rng, int vt) {
  std::uniform_int_distribution<int> deg(-4, 6), coef(-3, 3), count(0, 4);
  std::map<int, Integer> c;
  int n = count(rng);
  for (int k = 0; k < n; ++k) c[deg(rng)] += coef(rng);
  return LaurentPoly(std::move(c), vt);
}

}  // namespace

TEST_CASE("telescoping and identity products") {
  CHECK(poly({{0, 1}, {1, 1}}) * poly({{0, 1}, {1, -1}}) == poly({{0, 1}, {2, -1}}));
  LaurentPoly f = poly({{-2, 3}, {5, 1}});
  CHECK(f * LaurentPoly::one() == f);
}

TEST_CASE("product horizon follows the lowest degrees of the factors") {
  LaurentPoly a = poly({{0, 1}, {4, 1}, {8, 1}}, 9);
  LaurentPoly b = poly({{0, 1}, {2, 1}});
  LaurentPoly p = a * b;
  CHECK(p.valid_to() == 9);
  CHECK(to_small(p) == convolve(to_small(a), to_small(b), 9));
  CHECK(p == poly({{0, 1}, {2, 1}, {4, 1}, {6, 1}, {8, 1}}, 9));
  // Shifting a factor moves the horizon.
  LaurentPoly c = poly({{3, 1}});
  CHECK((a * c).valid_to() == 12);
}

TEST_CASE("addition takes the smaller horizon") {
  LaurentPoly a = poly({{0, 1}, {7, 2}}, 9);
  LaurentPoly b = poly({{7, -2}, {11, 1}}, 12);
  LaurentPoly s = a + b;
  CHECK(s.valid_to() == 9);
  CHECK(s == poly({{0, 1}}, 9));
  CHECK((a - a).is_zero());
}

TEST_CASE("exact division") {
  auto q = exact_divide(poly({{0, 1}, {2, 1}, {4, 1}, {6, 1}}), poly({{0, 1}, {2, 1}}));
  REQUIRE(std::holds_alternative<LaurentPoly>(q));
  CHECK(std::get<LaurentPoly>(q) == poly({{0, 1}, {4, 1}}));

  LaurentPoly f = poly({{-2, 3}, {5, 1}});
  CHECK(std::get<LaurentPoly>(exact_divide(f, LaurentPoly::one())) == f);

  auto bad = exact_divide(poly({{0, 1}, {1, 1}}), poly({{0, 1}, {2, 1}}));
  REQUIRE(std::holds_alternative<NotDivisible>(bad));
  CHECK(std::get<NotDivisible>(bad).degree == 1);

  CHECK_THROWS_AS(exact_divide(f, LaurentPoly()), ZeroDivisor);

  auto frac = exact_divide(poly({{0, 1}}), poly({{0, 2}}));
  REQUIRE(std::holds_alternative<NotDivisible>(frac));
  CHECK(std::get<NotDivisible>(frac).degree == 0);
}

TEST_CASE("division of truncated series propagates the horizon") {
  // (1 + q^4 + q^8 + ...) truncated at 8 divided by 1 - q^4.
  LaurentPoly num = poly({{0, 1}, {4, 1}, {8, 1}}, 8);
  auto q = exact_divide(num * poly({{0, 1}, {4, -1}}), poly({{0, 1}, {4, -1}}));
  REQUIRE(std::holds_alternative<LaurentPoly>(q));
  CHECK(std::get<LaurentPoly>(q).agrees_with(num));
  CHECK(std::get<LaurentPoly>(q).valid_to() == 8);
}

TEST_CASE("nonnegativity") {
  CHECK(is_nonnegative(poly({{0, 1}, {4, 1}})));
  CHECK_FALSE(is_nonnegative(poly({{0, 1}, {1, -1}})));
  CHECK(is_nonnegative(LaurentPoly()));
}

TEST_CASE("rendering round-trips") {
  LaurentPoly p = poly({{-2, 3}, {0, 1}, {1, -1}, {5, 2}}, 8);
  CHECK(p.str() == "3*q^-2 + 1 - q + 2*q^5 + O(q^9)");
  CHECK(parse_laurent(p.str()) == p);
  CHECK(LaurentPoly().str() == "0");
  CHECK(LaurentPoly(4).str() == "O(q^5)");
  CHECK(parse_laurent("O(q^5)") == LaurentPoly(4));
}

TEST_CASE("random algebraic properties") {
  std::mt19937 rng(20261018);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> h(4, 14);
    int va = h(rng), vb = h(rng), vc = h(rng);
    LaurentPoly a = random_poly(rng, va), b = random_poly(rng, vb), c = random_poly(rng, vc);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(to_small(a * b) == convolve(to_small(a), to_small(b), (a * b).valid_to()));

    // Exact division recovers the exact factor.
    LaurentPoly ea = random_poly(rng, kUnbounded), eb = random_poly(rng, kUnbounded);
    if (!eb.is_zero()) {
      auto q = exact_divide(ea * eb, eb);
      REQUIRE(std::holds_alternative<LaurentPoly>(q));
      CHECK(std::get<LaurentPoly>(q) == ea);
    }

    // q = 1 substitution commutes with truncation of the product.
    if (!a.is_zero() && !b.is_zero()) {
      LaurentPoly p = a * b;
      int vt = p.valid_to();
      Integer lhs = p.at_one();
      Integer rhs = 0;
      for (const auto& [da, xa] : a.coeffs())
        for (const auto& [db, xb] : b.coeffs())
          if (da + db <= vt) rhs += xa * xb;
      CHECK(lhs == rhs);
    }
  }
}
