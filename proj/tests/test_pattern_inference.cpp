#include "locsym/pattern_inference.hpp"

#include "locsym/catalog.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace locsym;

namespace {

bool has_pair(const std::vector<PositionPair>& v, Position a, Position b, int rule = -1) {
  return std::any_of(v.begin(), v.end(), [&](const PositionPair& p) {
    return ((p.a == a && p.b == b) || (p.a == b && p.b == a)) && (rule < 0 || p.rule == rule);
  });
}

const LocalDerivationSpace& loc(const std::string& name) {
  static const DerivationSpace d2 = derivation_algebra(pi2()), d3 = derivation_algebra(pi3());
  static const LocalDerivationSpace l2 = local_derivation_space(pi2(), d2, LocalMode::kExact, 7, 200);
  static const LocalDerivationSpace l3 = local_derivation_space(pi3(), d3, LocalMode::kExact, 7, 200);
  return name == "pi2" ? l2 : l3;
}

TEST(InferShape, Examples) {
  const auto s3 = infer_shape(derivation_template(derivation_algebra(pi3())));
  EXPECT_TRUE(has_pair(s3.equal_pairs, {0, 0}, {3, 3}, 1));
  const auto s2 = infer_shape(derivation_template(derivation_algebra(pi2())));
  EXPECT_TRUE(has_pair(s2.independent_pairs, {0, 0}, {1, 1}, 4));
  EXPECT_EQ(s2.dim, 5u);
}

TEST(InferShape, AllZeroTemplate) {
  const MatrixTemplate z("zero", 3, {});
  const auto s = infer_shape(z);
  EXPECT_EQ(s.zero_set.size(), 9u);
  EXPECT_TRUE(s.equal_pairs.empty());
  EXPECT_TRUE(s.independent_pairs.empty());
}

TEST(InferShape, RuleOneNeedsZeroCrossEntries) {
  const auto t = MatrixTemplate::from_strings("t", {"a", "c"}, {{"a", "c"}, {"0", "a"}});
  EXPECT_FALSE(has_pair(infer_shape(t).equal_pairs, {0, 0}, {1, 1}));
  const auto u = MatrixTemplate::from_strings("u", {"a", "c"}, {{"a", "0"}, {"c", "a"}});
  EXPECT_FALSE(has_pair(infer_shape(u).equal_pairs, {0, 0}, {1, 1}));
  const auto v = MatrixTemplate::from_strings("v", {"a", "c"}, {{"a", "0"}, {"0", "a"}});
  EXPECT_TRUE(has_pair(infer_shape(v).equal_pairs, {0, 0}, {1, 1}, 1));
}

TEST(InferShape, RuleZeroMatchesLocalDerivationZeros) {
  for (const char* name : {"pi2", "pi3"}) {
    const auto s = infer_shape(*catalog_template(name, TemplateKind::kDerivation));
    std::vector<Position> want;
    for (const auto& [i, j] : catalog_template(name, TemplateKind::kLocalDerivation)->zero_positions()) want.push_back({i, j});
    auto got = s.zero_set;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << name;
  }
}

TEST(ValidatePrediction, BuiltinsPass) {
  for (const char* name : {"pi2", "pi3"}) {
    const auto s = infer_shape(derivation_template(derivation_algebra(name == std::string("pi2") ? pi2() : pi3())));
    const auto r = validate_prediction(s, loc(name));
    EXPECT_TRUE(r.passed) << name << (r.violations.empty() ? "" : ": " + r.violations.front());
  }
}

TEST(ValidatePrediction, ProportionalPairsAreReportedNotRejected) {
  // b22 = 2 b11 on LocDer(pi3): distinct but proportional
  ShapePrediction p;
  p.dim = 5;
  p.independent_pairs.push_back({{0, 0}, {1, 1}, 4});
  const auto r = validate_prediction(p, loc("pi3"));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.proportional.size(), 1u);
  EXPECT_EQ(r.strongly_independent, 0u);
}

TEST(ValidatePrediction, PlantedErrorsFail) {
  ShapePrediction p = infer_shape(derivation_template(derivation_algebra(pi2())));
  p.equal_pairs.push_back({{0, 0}, {1, 1}, 1});
  const auto r = validate_prediction(p, loc("pi2"));
  EXPECT_FALSE(r.passed);
  ASSERT_FALSE(r.violations.empty());
  ShapePrediction q;
  q.dim = 5;
  q.zero_set.push_back({2, 2});
  EXPECT_FALSE(validate_prediction(q, loc("pi2")).passed);
  ShapePrediction w;
  w.dim = 5;
  w.independent_pairs.push_back({{0, 0}, {3, 3}, 4});  // b44 = b11 on LocDer(pi3)
  EXPECT_FALSE(validate_prediction(w, loc("pi3")).passed);
}

TEST(Position, Formatting) { EXPECT_EQ(to_string(Position{4, 1}), "(5,2)"); }

}  // namespace
