#include "doctest.h"
#include "laurentia/exactlin.hpp"

#include <random>

using namespace laurentia;

namespace {

Mat from(std::initializer_list<std::initializer_list<long>> rows) {
  Mat m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (auto r : rows) {
    Index j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

Mat random_mat(std::mt19937& rng, Index r, Index c) {
  std::uniform_int_distribution<int> e(-3, 3), z(0, 2);
  Mat m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = z(rng) == 0 ? 0 : e(rng);
  return m;
}

}  // namespace

TEST_CASE("rref basics") {
  Field q;
  auto id = rref(q, Mat::Identity(3, 3));
  CHECK(id.rank == 3);
  CHECK(id.pivots == std::vector<Index>{0, 1, 2});
  auto z = rref(q, Mat::Zero(2, 5));
  CHECK(z.rank == 0);
  CHECK(z.pivots.empty());
  CHECK(rank(q, from({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel basics") {
  Field q;
  CHECK(kernel(q, Mat::Identity(3, 3)).cols() == 0);
  CHECK(kernel(q, Mat::Zero(2, 3)).cols() == 3);
  Mat k = kernel(q, from({{1, 1}}));
  REQUIRE(k.cols() == 1);
  CHECK(k(0, 0) == -k(1, 0));
  CHECK(k(0, 0) != 0);
}

TEST_CASE("solve basics") {
  Field q;
  Mat b = from({{3}, {-1}, {7}});
  CHECK(std::get<Mat>(solve(q, Mat::Identity(3, 3), b)) == b);

  auto none = solve(q, from({{1}, {1}}), from({{1}, {2}}));
  REQUIRE(std::holds_alternative<NoSolution>(none));
  RowVec y = std::get<NoSolution>(none).certificate;
  CHECK(is_zero(Mat(y * from({{1}, {1}}))));
  CHECK(!is_zero(Mat(y * from({{1}, {2}}))));

  Mat half = std::get<Mat>(solve(q, from({{2}}), from({{1}})));
  CHECK(half(0, 0) == Rational(1, 2));

  CHECK_THROWS_AS(solve(q, Mat::Identity(2, 2), Mat::Zero(3, 1)), DimensionMismatch);
}

TEST_CASE("prime field arithmetic") {
  Field f7(7);
  CHECK(f7.reduce(Rational(1, 2)) == 4);
  CHECK(f7.inv(3) == 5);
  CHECK(f7.reduce(Rational(-1)) == 6);
  CHECK_THROWS(Field(6));
  CHECK(rank(f7, from({{1, 2}, {3, 6 + 7}})) == 1);
  CHECK(rank(f7, from({{7, 0}, {0, 14}})) == 0);
}

TEST_CASE("subspace operations") {
  Field q;
  Subspace s(q, 3);
  CHECK(s.insert(Vec(from({{1}, {1}, {0}}))));
  CHECK_FALSE(s.insert(Vec(from({{2}, {2}, {0}}))));
  CHECK(s.contains(Vec(from({{3}, {3}, {0}}))));
  CHECK_FALSE(s.contains(Vec(from({{1}, {0}, {0}}))));
  CHECK(s.complement_indices() == std::vector<Index>{1, 2});
  Subspace t = Subspace::span(q, from({{0}, {1}, {1}}));
  CHECK((s + t).dim() == 2);
  CHECK(s.intersect(t).dim() == 0);
  Subspace u = Subspace::span(q, from({{1, 0}, {1, 1}, {0, 1}}));
  CHECK(u.intersect(s).dim() == 1);
  Vec c = u.coords(Vec(from({{2}, {5}, {3}})));
  CHECK(u.basis() * c == Vec(from({{2}, {5}, {3}})));
}

TEST_CASE("rank-nullity and solve on random matrices") {
  std::mt19937 rng(7);
  Field q;
  for (int t = 0; t < 60; ++t) {
    std::uniform_int_distribution<int> d(1, 6);
    Index r = d(rng), c = d(rng);
    Mat m = random_mat(rng, r, c);
    Mat k = kernel(q, m);
    CHECK(rank(q, m) + k.cols() == c);
    CHECK(is_zero(Mat(m * k)));
    CHECK(rank(q, k) == k.cols());

    Mat x0 = random_mat(rng, c, 2);
    Mat rhs = m * x0;
    auto sol = solve(q, m, rhs);
    REQUIRE(std::holds_alternative<Mat>(sol));
    CHECK(m * std::get<Mat>(sol) == rhs);
  }
}

TEST_CASE("prime field agrees with rationals reduced mod p") {
  std::mt19937 rng(32003);
  Field q, fp(32003);
  for (int t = 0; t < 60; ++t) {
    std::uniform_int_distribution<int> d(1, 6);
    Mat m = random_mat(rng, d(rng), d(rng));
    auto a = rref(q, m), b = rref(fp, m);
    if (a.rank != b.rank || a.pivots != b.pivots) continue;
    CHECK(fp.reduce(a.reduced) == b.reduced);
  }
}
