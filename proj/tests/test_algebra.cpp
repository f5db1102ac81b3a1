#include "locsym/algebra.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace locsym;

namespace {

QVector ev(std::size_t i) { return oracle::e(5, i - 1); }

TEST(Multiply, TableExamples) {
  EXPECT_EQ(pi2().multiply(ev(1), ev(4)), ev(5));
  EXPECT_EQ(pi2().multiply(ev(4), ev(1)), ev(5));
  EXPECT_EQ(pi2().multiply(ev(2), ev(2)), QVector(5, Rational(0)));
  EXPECT_EQ(pi3().multiply(ev(4), ev(1)), QVector(5, Rational(0)));
  EXPECT_EQ(pi3().multiply(ev(1), ev(4)), ev(5));
}

TEST(Multiply, MatchesHandWrittenProducts) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const QVector x = random_vector(rng, 5, 50), y = random_vector(rng, 5, 50);
    EXPECT_EQ(pi2().multiply(x, y), oracle::pi2_mul(x, y));
    EXPECT_EQ(pi3().multiply(x, y), oracle::pi3_mul(x, y));
  }
}

TEST(Multiply, Bilinear) {
  Rng rng(12);
  const Algebra a = pi2();
  for (int t = 0; t < 100; ++t) {
    const QVector x = random_vector(rng, 5), y = random_vector(rng, 5), z = random_vector(rng, 5);
    const Rational al = rng.nonzero_rational(), be = rng.nonzero_rational();
    QVector comb(5);
    for (int k = 0; k < 5; ++k) comb[k] = al * x[k] + be * y[k];
    QVector expect = a.multiply(x, z);
    const QVector yz = a.multiply(y, z);
    for (int k = 0; k < 5; ++k) expect[k] = al * expect[k] + be * yz[k];
    EXPECT_EQ(a.multiply(comb, z), expect);
  }
}

TEST(Multiply, DimensionMismatchIsInputError) {
  EXPECT_THROW(pi2().multiply(QVector(4), QVector(5)), InputError);
}

TEST(Associativity, BuiltinsAndBrokenTable) {
  EXPECT_TRUE(is_associative(pi2()));
  EXPECT_TRUE(is_associative(pi3()));
  Algebra broken("broken", 2);
  broken.add_product(0, 0, 0, 1);
  broken.add_product(0, 1, 1, 2);
  EXPECT_FALSE(is_associative(broken));
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const QVector x = random_vector(rng, 5), y = random_vector(rng, 5), z = random_vector(rng, 5);
    EXPECT_EQ(pi3().multiply(pi3().multiply(x, y), z), pi3().multiply(x, pi3().multiply(y, z)));
  }
}

TEST(PowerFiltration, Dimensions) {
  for (const Algebra& a : {pi2(), pi3()}) {
    const auto f = power_filtration(a);
    EXPECT_TRUE(f.nilpotent);
    EXPECT_EQ(f.dims(), (std::vector<std::size_t>{5, 3, 1, 0}));
    EXPECT_EQ(f.nilindex, 4u);
  }
  const auto z = power_filtration(zero_algebra(2));
  EXPECT_EQ(z.dims(), (std::vector<std::size_t>{2, 0}));
  EXPECT_EQ(z.nilindex, 2u);
}

TEST(PowerFiltration, NonNilpotentReported) {
  Algebra idem("idem", 1);
  idem.add_product(0, 0, 0, 1);
  const auto f = power_filtration(idem);
  EXPECT_FALSE(f.nilpotent);
  EXPECT_EQ(f.nilindex, 0u);
}

TEST(LeftMult, Examples) {
  EXPECT_EQ(left_mult_operator(pi2(), ev(1)), oracle::sparse(5, {{2, 1, 1}, {3, 2, 1}, {5, 4, 1}}));
  EXPECT_EQ(left_mult_operator(pi2(), QVector(5, Rational(0))), QMatrix(5, 5));
  EXPECT_EQ(left_mult_operator(pi3(), ev(4)), oracle::sparse(5, {{5, 4, 1}}));
}

TEST(LeftMult, NilpotentAndJordanSizesSumToDim) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const QMatrix l = left_mult_operator(pi2(), random_vector(rng, 5));
    QMatrix p = l;
    for (int k = 0; k < 5; ++k) p = p * l;
    EXPECT_TRUE(p.is_zero());
    std::size_t sum = 0;
    for (auto s : nilpotent_jordan_sizes(l)) sum += s;
    EXPECT_EQ(sum, 5u);
  }
}

TEST(CharacteristicSequence, Builtins) {
  EXPECT_EQ(characteristic_sequence(pi2(), 200, 1), (std::vector<std::size_t>{3, 2}));
  EXPECT_EQ(characteristic_sequence(pi3(), 200, 1), (std::vector<std::size_t>{3, 2}));
  EXPECT_EQ(characteristic_sequence(zero_algebra(3), 10, 1), (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Builtins, ByName) {
  EXPECT_TRUE(builtin_algebra("pi2"));
  EXPECT_EQ(builtin_algebra("zero4")->dim(), 4u);
  EXPECT_FALSE(builtin_algebra("pi9"));
}

}  // namespace
