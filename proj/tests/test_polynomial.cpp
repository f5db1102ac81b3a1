#include "locsym/polynomial.hpp"

#include <gtest/gtest.h>

using namespace locsym;

namespace {

TEST(Polynomial, ParseAndPrint) {
  EXPECT_EQ(parse_polynomial("2*a11*a21").to_string(), "2*a11*a21");
  EXPECT_EQ(parse_polynomial("(a11+a41)^2"), parse_polynomial("a11^2 + 2*a11*a41 + a41**2"));
  EXPECT_EQ(parse_polynomial("-b11^3") + parse_polynomial("b11^3"), Polynomial());
  EXPECT_EQ(parse_polynomial("x/2 + 0.5*x"), Polynomial::variable("x"));
  EXPECT_THROW(parse_polynomial("a11 +"), InputError);
}

TEST(Polynomial, NaturalVariableOrder) {
  const auto vars = parse_polynomial("a10 + a9 + a2").variables();
  EXPECT_EQ(std::vector<std::string>(vars.begin(), vars.end()), (std::vector<std::string>{"a2", "a9", "a10"}));
}

TEST(Polynomial, EvaluateAndSubstitute) {
  const Polynomial p = parse_polynomial("2*a11*a41 + a41^2");
  const Assignment at{{"a11", 1}, {"a41", 1}};
  EXPECT_EQ(p.evaluate<Rational>(at), 3);
  EXPECT_EQ(p.substitute("a41", parse_polynomial("a11")), parse_polynomial("3*a11^2"));
}

TEST(Polynomial, Derivative) {
  EXPECT_EQ(parse_polynomial("x^3*y + 2*x + y").derivative("x"), parse_polynomial("3*x^2*y + 2"));
  EXPECT_EQ(parse_polynomial("y").derivative("x"), Polynomial());
}

TEST(Polynomial, ExactDivision) {
  const Polynomial p = parse_polynomial("x^2 - y^2");
  EXPECT_EQ(*divide_exact(p, parse_polynomial("x - y")), parse_polynomial("x + y"));
  EXPECT_FALSE(divide_exact(p, parse_polynomial("x + 2*y")).has_value());
}

TEST(Polynomial, LinearFactors) {
  const auto f = factor_linear(parse_polynomial("nu1^2 + nu1*nu4"));
  ASSERT_EQ(f.size(), 2u);
  EXPECT_THROW(factor_linear(parse_polynomial("nu1^2 + nu2^2")), UnsupportedError);
}

}  // namespace
