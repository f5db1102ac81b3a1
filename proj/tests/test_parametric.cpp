#include "locsym/parametric.hpp"

#include "locsym/derivation.hpp"
#include "locsym/local_derivation.hpp"

#include <gtest/gtest.h>

using namespace locsym;

namespace {

Polynomial P(const char* s) { return parse_polynomial(s); }

TEST(SolveParametric, SingleEquationSplitsOnce) {
  // nu1 * alpha = nu1 * b1
  ParametricSystem sys{{"alpha"}, {"nu1"}, {"b1"}, {{{P("nu1")}, P("nu1*b1")}}};
  const CaseTree tree = solve_parametric(sys);
  EXPECT_TRUE(tree.aggregated_constraints.empty());
  EXPECT_EQ(tree.leaves.size(), 2u);
  EXPECT_TRUE(tree.verified);
  EXPECT_EQ(tree.solution_space().dim(), 1u);
}

TEST(SolveParametric, ConstraintFromVanishingPivot) {
  // nu1 * alpha = nu1 * b1 and 0 = nu2 * b2: b2 must vanish.
  ParametricSystem sys{{"alpha"}, {"nu1", "nu2"}, {"b1", "b2"}, {{{P("nu1")}, P("nu1*b1")}, {{P("0")}, P("nu2*b2")}}};
  const CaseTree tree = solve_parametric(sys);
  ASSERT_EQ(tree.aggregated_constraints.size(), 1u);
  EXPECT_EQ(tree.aggregated_constraints[0], P("b2"));
}

TEST(SolveParametric, LocalizationSystems) {
  const CaseTree t2 = solve_parametric(localization_system(derivation_algebra(pi2())));
  EXPECT_TRUE(t2.verified);
  EXPECT_EQ(t2.solution_space().dim(), 11u);
  const CaseTree t3 = solve_parametric(localization_system(derivation_algebra(pi3())));
  EXPECT_EQ(t3.solution_space().dim(), 7u);
  // every leaf sample lies in its own stratum
  for (const auto& leaf : t2.leaves) EXPECT_TRUE(leaf.contains(leaf.sample, t2.system.probes)) << leaf.signature();
}

TEST(SolveParametric, Pi2StratumNu1PlusNu4) {
  const CaseTree t2 = solve_parametric(localization_system(derivation_algebra(pi2())));
  const StratumCase& leaf = t2.locate(QVector{1, 0, 0, -1, 0});
  // on this stratum solvability forces b11 + b41 = b14 + b44 (b14 vanishes on other leaves)
  const Polynomial want = P("b11 - b14 + b41 - b44");
  bool found = false;
  for (const auto& c : leaf.derived_constraints) found = found || c == want || c == -want;
  EXPECT_TRUE(found);
}

TEST(SampleStratum, SatisfiesConditions) {
  StratumCase c;
  c.substitutions = {{"nu4", P("-nu1")}};
  c.equalities = {P("nu1 + nu4")};
  c.inequations = {P("nu1")};
  const std::vector<std::string> probes{"nu1", "nu2", "nu3", "nu4", "nu5"};
  const QVector x = sample_stratum(c, probes, 3);
  EXPECT_NE(x[0], 0);
  EXPECT_EQ(x[0] + x[3], 0);
  StratumCase d;
  d.inequations = {P("nu2")};
  d.substitutions = {{"nu1", P("0")}};
  const QVector y = sample_stratum(d, probes, 4);
  EXPECT_EQ(y[0], 0);
  EXPECT_NE(y[1], 0);
  const QVector z = sample_stratum(StratumCase{}, probes, 5);
  EXPECT_TRUE(std::any_of(z.begin(), z.end(), [](const Rational& q) { return q != 0; }));
}

TEST(SolveParametric, UnsupportedPivot) {
  // pivot nu1^2 + nu2^2 has no factor linear in a probe
  ParametricSystem sys{{"alpha"}, {"nu1", "nu2"}, {"b1"}, {{{P("nu1^2 + nu2^2")}, P("nu1*b1")}}};
  EXPECT_THROW(solve_parametric(sys), UnsupportedError);
}

}  // namespace
