#include "locsym/linalg.hpp"

#include "locsym/algebra.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace locsym;

namespace {

QMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, std::int64_t bound) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.uniform_int(-bound, bound);
  return m;
}

const QMatrix& l_e1() {
  static const QMatrix m = left_mult_operator(pi2(), oracle::e(5, 0));
  return m;
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(QMatrix::identity(5)), 5u);
  EXPECT_EQ(rank(QMatrix(5, 5)), 0u);
  EXPECT_EQ(rank(l_e1()), 3u);
}

TEST(Nullspace, Examples) {
  EXPECT_EQ(nullspace(QMatrix::identity(4)).dim(), 0u);
  EXPECT_EQ(nullspace(QMatrix(3, 3)).dim(), 3u);
  EXPECT_EQ(nullspace(l_e1()), Subspace::span(5, {oracle::e(5, 2), oracle::e(5, 4)}));
}

TEST(Nullspace, RankNullity) {
  Rng rng(9);
  for (int t = 0; t < 40; ++t) {
    const std::size_t r = 1 + rng.uniform_int(0, 6), c = 1 + rng.uniform_int(0, 6);
    QMatrix m = random_matrix(rng, r, c, 3);
    if (t % 3 == 0 && r > 1)
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2;  // force a dependency
    const Subspace ns = nullspace(m);
    EXPECT_EQ(rank(m) + ns.dim(), c);
    for (const auto& v : ns.basis()) EXPECT_EQ(oracle::image(m, v), QVector(r, Rational(0)));
  }
}

TEST(Solve, Examples) {
  const QVector v{1, 2, 3};
  EXPECT_EQ(*solve(QMatrix::identity(3), v), v);
  EXPECT_FALSE(solve(QMatrix(3, 3), v).has_value());
  EXPECT_EQ(*solve(l_e1(), oracle::e(5, 1)), oracle::e(5, 0));
  EXPECT_THROW(solve(QMatrix::identity(3), QVector{1, 2}), InputError);
}

TEST(Solve, SolutionsAreExact) {
  Rng rng(10);
  for (int t = 0; t < 40; ++t) {
    const QMatrix m = random_matrix(rng, 4, 6, 5);
    const QVector x = random_vector(rng, 6, 100);
    const QVector rhs = oracle::image(m, x);
    const auto s = solve(m, rhs);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(oracle::image(m, *s), rhs);
  }
}

TEST(Intersect, Examples) {
  const Subspace v = Subspace::span(3, {{1, 1, 0}, {0, 1, 1}});
  EXPECT_EQ(intersect(v, v), v);
  EXPECT_EQ(intersect(Subspace::span(3, {oracle::e(3, 0), oracle::e(3, 1)}),
                      Subspace::span(3, {oracle::e(3, 1), oracle::e(3, 2)})),
            Subspace::span(3, {oracle::e(3, 1)}));
  EXPECT_EQ(intersect(Subspace::full(3), v), v);
}

TEST(Intersect, Properties) {
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    std::vector<QVector> a, b;
    for (int k = 0; k < 3; ++k) a.push_back(random_vector(rng, 5, 5));
    for (int k = 0; k < 3; ++k) b.push_back(random_vector(rng, 5, 5));
    const Subspace s = Subspace::span(5, a), u = Subspace::span(5, b);
    const Subspace i = intersect(s, u);
    EXPECT_TRUE(i.is_subspace_of(s));
    EXPECT_TRUE(i.is_subspace_of(u));
    EXPECT_GE(i.dim() + 5, s.dim() + u.dim());
  }
}

TEST(Subspace, CanonicalEquality) {
  const Subspace a = Subspace::span(3, {{1, 2, 3}, {0, 1, 1}});
  const Subspace b = Subspace::span(3, {{1, 3, 4}, {2, 4, 6}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.basis(), b.basis());
  EXPECT_NE(a, Subspace::span(3, {{1, 0, 0}}));
}

TEST(ComplexLinalg, InverseAndSolve) {
  CMatrix m(2, 2);
  m(0, 0) = Complex(1, 1);
  m(0, 1) = 2;
  m(1, 0) = 0;
  m(1, 1) = Complex(0, 3);
  const auto inv = inverse(m);
  ASSERT_TRUE(inv.has_value());
  EXPECT_LT(max_abs(*inv * m - CMatrix::identity(2)), 1e-14);
  EXPECT_FALSE(inverse(CMatrix(2, 2)).has_value());
}

}  // namespace
