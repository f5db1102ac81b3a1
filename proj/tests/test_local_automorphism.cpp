#include "locsym/local_automorphism.hpp"

#include "locsym/catalog.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace locsym;

namespace {

const LocAutPattern& pat2() {
  static const LocAutPattern p = *locaut_pattern("pi2");
  return p;
}
const LocAutPattern& pat3() {
  static const LocAutPattern p = *locaut_pattern("pi3");
  return p;
}

// Complex evaluation of the automorphism families, written out by hand.
CVector aut_pi2_apply(const std::map<std::string, Complex, NaturalLess>& p, const CVector& x) {
  const Complex a11 = p.at("a11"), a21 = p.at("a21"), a31 = p.at("a31"), a34 = p.at("a34"), a41 = p.at("a41"),
                a51 = p.at("a51"), a54 = p.at("a54");
  return {a11 * x[0], a21 * x[0] + a11 * a11 * x[1],
          a31 * x[0] + 2.0 * a11 * a21 * x[1] + a11 * a11 * a11 * x[2] + a34 * x[3], a41 * x[0] + (a11 + a41) * x[3],
          a51 * x[0] + (2.0 * a11 * a41 + a41 * a41) * x[1] + a54 * x[3] + (a11 + a41) * (a11 + a41) * x[4]};
}

CVector aut_pi3_apply(const std::map<std::string, Complex, NaturalLess>& p, const CVector& x) {
  const Complex a11 = p.at("a11"), a21 = p.at("a21"), a31 = p.at("a31"), a34 = p.at("a34"), a51 = p.at("a51"),
                a54 = p.at("a54");
  return {a11 * x[0], a21 * x[0] + a11 * a11 * x[1],
          a31 * x[0] + 2.0 * a11 * a21 * x[1] + a11 * a11 * a11 * x[2] + a34 * x[3], a11 * x[3],
          a51 * x[0] + a54 * x[3] + a11 * a11 * x[4]};
}

double gap(const CVector& a, const CVector& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

TEST(Feasibility, Examples) {
  const auto r = locaut_feasible_at(pi3(), oracle::diag({1, 1, -1, 1, 1}), oracle::e(5, 2));
  ASSERT_TRUE(r.feasible);
  const Complex a11 = r.witness_params.at("a11");
  EXPECT_LT(std::abs(a11 * a11 * a11 + 1.0), 1e-9);
  EXPECT_FALSE(locaut_feasible_at(pi3(), oracle::diag({1, 2, 1, 1, 1}), QVector{0, 1, 0, 1, 0}).feasible);
  EXPECT_THROW(locaut_feasible_at(zero_algebra(5), QMatrix::identity(5), oracle::e(5, 0)), UnsupportedError);
}

TEST(Feasibility, AutomorphismsAreFeasibleWithExactWitness) {
  Rng rng(31);
  const auto f2 = *automorphism_family("pi2");
  for (int t = 0; t < 200; ++t) {
    const QMatrix phi = instantiate(f2, random_valid_params(f2.family, rng, 30));
    QVector x = random_vector(rng, 5, 10);
    if (t % 3 == 0) x[rng.uniform_int(0, 4)] = 0;
    const auto r = locaut_feasible_at(pi2(), phi, x);
    ASSERT_TRUE(r.feasible);
    EXPECT_LT(gap(aut_pi2_apply(r.witness_params, to_complex(x)), to_complex(phi * x)), 1e-9);
  }
}

TEST(Feasibility, WitnessReproducesImageForPatternMembers) {
  Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    const QMatrix b2 = random_pattern_member(pat2(), rng, +1, 20);
    const QMatrix b3 = random_pattern_member(pat3(), rng, t % 2 ? -1 : +1, 20);
    const QVector x = random_vector(rng, 5, 10);
    const auto r2 = locaut_feasible_at(pi2(), b2, x);
    ASSERT_TRUE(r2.feasible);
    EXPECT_LT(gap(aut_pi2_apply(r2.witness_params, to_complex(x)), to_complex(b2 * x)), 1e-7);
    const auto r3 = locaut_feasible_at(pi3(), b3, x);
    ASSERT_TRUE(r3.feasible);
    EXPECT_LT(gap(aut_pi3_apply(r3.witness_params, to_complex(x)), to_complex(b3 * x)), 1e-7);
  }
}

TEST(Feasibility, StratumPoints) {
  // b44 = b41 + b11 is what nu1 + nu4 = 0 needs
  QMatrix b = QMatrix::identity(5);
  b(3, 3) = 2;
  EXPECT_FALSE(locaut_feasible_at(pi2(), b, QVector{1, 0, 0, -1, 0}).feasible);
  EXPECT_TRUE(locaut_feasible_at(pi2(), b, QVector{1, 0, 0, 0, 0}).feasible);
}

TEST(PatternCheck, Examples) {
  const QMatrix m = oracle::sparse(5, {{1, 1, 1}, {2, 2, 1}, {3, 3, 1}, {4, 1, 1}, {4, 4, 2}, {5, 5, 1}});
  const auto c2 = pattern_check(pat2(), m);
  EXPECT_TRUE(c2.member);
  EXPECT_EQ(c2.branch, 1);
  const auto c3 = pattern_check(pat3(), oracle::diag({1, 1, -1, 1, 1}));
  EXPECT_TRUE(c3.member);
  EXPECT_EQ(c3.branch, -1);
  EXPECT_FALSE(pattern_check(pat3(), oracle::diag({1, 2, 1, 1, 1})).member);
  // the minus branch is local but not global
  EXPECT_FALSE(is_automorphism(pi3(), oracle::diag({1, 1, -1, 1, 1})));
}

TEST(PatternCheck, BoundaryMatrices) {
  // relations hold but b33 = 0 violates the nonvanishing condition
  const auto c = pattern_check(pat2(), oracle::diag({1, 1, 0, 1, 1}));
  EXPECT_FALSE(c.member);
  EXPECT_TRUE(c.boundary);
  EXPECT_FALSE(pattern_check(pat2(), oracle::diag({1, 2, 1, 1, 1})).boundary);
}

TEST(PatternCheck, AutomorphismsAreInPattern) {
  Rng rng(33);
  for (const char* name : {"pi2", "pi3"}) {
    const auto f = *automorphism_family(name);
    const auto& p = std::string(name) == "pi2" ? pat2() : pat3();
    for (int t = 0; t < 50; ++t) {
      const auto c = pattern_check(p, instantiate(f, random_valid_params(f.family, rng)));
      EXPECT_TRUE(c.member);
      EXPECT_EQ(c.branch, 1);
    }
  }
}

TEST(FindWitness, Examples) {
  EXPECT_EQ(find_witness(pi3(), oracle::diag({1, 2, 1, 1, 1})), (QVector{0, 1, 0, 1, 0}));
  Rng rng(34);
  EXPECT_FALSE(find_witness(pi2(), random_pattern_member(pat2(), rng), 50).has_value());
  QMatrix b44 = QMatrix::identity(5);
  b44(3, 3) = 3;
  EXPECT_EQ(find_witness(pi2(), b44), (QVector{1, 0, 0, -1, 0}));
  QMatrix b55 = QMatrix::identity(5);
  b55(4, 4) = 3;
  EXPECT_EQ(find_witness(pi2(), b55), (QVector{0, 1, 0, 0, -1}));
}

TEST(FindWitness, Pi3RelationsRefutedOnBasisSums) {
  for (const auto& [i, v] : std::vector<std::pair<std::size_t, int>>{{2, 2}, {3, 2}, {4, 2}}) {
    QMatrix b = QMatrix::identity(5);
    b(i, i) = v;
    const auto w = find_witness(pi3(), b);
    ASSERT_TRUE(w.has_value()) << i;
    EXPECT_FALSE(locaut_feasible_at(pi3(), b, *w).feasible);
  }
  // a nonzero (4,1) entry is infeasible already at e1
  QMatrix b = QMatrix::identity(5);
  b(3, 0) = 1;
  EXPECT_EQ(find_witness(pi3(), b), oracle::e(5, 0));
}

TEST(VerifyPattern, BuiltinsPass) {
  const auto r2 = verify_pattern(pi2(), pat2(), 30, 1);
  EXPECT_TRUE(r2.passed) << r2.failure;
  const auto r3 = verify_pattern(pi3(), pat3(), 30, 1);
  EXPECT_TRUE(r3.passed) << r3.failure;
  EXPECT_GT(r3.reverse_checked, 0u);
}

TEST(VerifyPattern, DroppedRelationFails) {
  // b22 becomes a free parameter instead of b11^2
  LocAutPattern relaxed = pat3();
  const auto& t = relaxed.branches[0];
  auto params = t.params();
  params.push_back("c22");
  std::vector<std::vector<std::string>> rows(5, std::vector<std::string>(5));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) rows[i][j] = t.entry(i, j).to_string();
  rows[1][1] = "c22";
  relaxed.branches = {MatrixTemplate::from_strings("relaxed", params, rows, {"b11", "c22"})};
  const auto r = verify_pattern(pi3(), relaxed, 30, 1);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.counterexample.has_value() && r.point.has_value());
  EXPECT_FALSE(locaut_feasible_at(pi3(), *r.counterexample, *r.point).feasible);
}

TEST(RandomSingleViolation, IsRefuted) {
  Rng rng(35);
  for (int t = 0; t < 40; ++t) {
    std::string label;
    const QMatrix b = random_single_violation(t % 2 ? pat2() : pat3(), rng, label);
    EXPECT_FALSE(label.empty());
    EXPECT_FALSE(pattern_check(t % 2 ? pat2() : pat3(), b).member) << label;
    EXPECT_TRUE(find_witness(t % 2 ? pi2() : pi3(), b, 200).has_value()) << label;
  }
}

TEST(GroupClosure, Examples) {
  const QMatrix m = oracle::sparse(5, {{1, 1, 1}, {2, 2, 1}, {3, 3, 1}, {4, 1, 1}, {4, 4, 2}, {5, 5, 1}});
  const QMatrix sq = m * m;
  EXPECT_EQ(sq(3, 0), 3);
  EXPECT_EQ(sq(3, 3), 4);
  EXPECT_TRUE(pattern_check(pat2(), sq).member);
  EXPECT_EQ(QMatrix::identity(5) * m, m);

  Rng rng(36);
  for (int t = 0; t < 20; ++t) {
    const QMatrix p = random_pattern_member(pat3(), rng, -1, 30) * random_pattern_member(pat3(), rng, -1, 30);
    const auto c = pattern_check(pat3(), p);
    EXPECT_TRUE(c.member);
    EXPECT_EQ(c.branch, 1);
  }
  EXPECT_TRUE(pattern_group_closure(pat2(), 50, 1).passed);
  EXPECT_TRUE(pattern_group_closure(pat3(), 50, 1).passed);
}

TEST(Num, ExactRootsStayRational) {
  const auto r = Num(Rational(4, 9)).roots(2);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_TRUE(r[0].exact());
  EXPECT_EQ(r[0].rational() * r[0].rational(), Rational(4, 9));
  const auto c = Num(Rational(2)).roots(3);
  ASSERT_EQ(c.size(), 3u);
  for (const auto& z : c) EXPECT_LT(std::abs(z.complex() * z.complex() * z.complex() - 2.0), 1e-12);
}

TEST(ProbeSet, Contents) {
  const auto p = locaut_probe_set(5);
  EXPECT_EQ(p.size(), 5u + 10u + 2u);
  EXPECT_EQ(p[0], oracle::e(5, 0));
  EXPECT_EQ(p.back(), (QVector{0, 1, 0, 0, -1}));
}

}  // namespace
