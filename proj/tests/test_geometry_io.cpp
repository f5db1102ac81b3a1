#include "locsym/geometry.hpp"
#include "locsym/io.hpp"

#include "locsym/catalog.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace locsym;

namespace {

TEST(Geometry, Pi2IsConnectedGroupChart) {
  const auto g = geometry_report("pi2");
  EXPECT_EQ(g.parameter_count, 11u);
  EXPECT_EQ(g.dimension, 11u);
  EXPECT_EQ(g.components, 1u);
  EXPECT_TRUE(g.lie_group);
  EXPECT_EQ(g.smoothness, kSmoothnessLabel);
}

TEST(Geometry, Pi3HasTwoDisjointComponents) {
  const auto g = geometry_report("pi3");
  EXPECT_EQ(g.parameter_count, 7u);
  EXPECT_EQ(g.dimension, 7u);
  EXPECT_EQ(g.components, 2u);
  EXPECT_TRUE(g.branches_disjoint);
  EXPECT_FALSE(g.lie_group);
  EXPECT_FALSE(g.disjointness.empty());
  EXPECT_THROW(geometry_report("zero3"), UnsupportedError);
}

TEST(Geometry, JacobianRankDropsOnDegenerateCharts) {
  const auto t = MatrixTemplate::from_strings("t", {"a", "c"}, {{"a", "0"}, {"0", "a^2"}});
  Assignment at{{"a", 2}, {"c", 5}};
  EXPECT_EQ(jacobian_rank(t, at), 1u);
  const auto u = MatrixTemplate::from_strings("u", {"a", "c"}, {{"a", "c"}, {"0", "a*c"}});
  EXPECT_EQ(jacobian_rank(u, at), 2u);
  EXPECT_EQ(jacobian_rank(u, Assignment{{"a", 0}, {"c", 0}}), 2u);
}

TEST(Io, AlgebraRoundTrip) {
  for (const Algebra& a : {pi2(), pi3(), zero_algebra(2)}) {
    const Algebra b = parse_algebra(algebra_to_json(a));
    EXPECT_EQ(b.dim(), a.dim());
    EXPECT_EQ(b.table(), a.table());
    EXPECT_EQ(b.name(), a.name());
  }
  const Algebra c = parse_algebra(R"({"dim": 2, "products": [{"i": 1, "j": 1, "k": 2, "c": "3/4"}]})");
  EXPECT_EQ(c.constant(0, 0, 1), Rational(3, 4));
  EXPECT_EQ(load_algebra("pi3").name(), "pi3");
}

TEST(Io, MalformedAlgebra) {
  EXPECT_THROW(parse_algebra("{"), InputError);
  EXPECT_THROW(parse_algebra(R"({"products": []})"), InputError);
  EXPECT_THROW(parse_algebra(R"({"dim": 2, "products": [{"i": 3, "j": 1, "k": 1, "c": "1"}]})"), InputError);
  EXPECT_THROW(parse_algebra(R"({"dim": 2, "products": [{"i": 1, "j": 1, "k": 1}]})"), InputError);
  EXPECT_THROW(parse_algebra(R"({"dim": 2, "products": [{"i": 1, "j": 1, "k": 1, "c": 0.5}]})"), InputError);
  EXPECT_THROW(load_algebra("/nonexistent/algebra.json"), InputError);
}

TEST(Io, OperatorRoundTrip) {
  const QMatrix q = oracle::sparse(3, {{1, 1, Rational(1, 3)}, {2, 1, -7}, {3, 3, 2}});
  EXPECT_EQ(std::get<QMatrix>(parse_operator(operator_to_json(q))), q);
  CMatrix c(2, 2);
  c(0, 0) = Complex(0.1, -2.5);
  c(1, 0) = Complex(1.0 / 3.0, 0);
  EXPECT_EQ(std::get<CMatrix>(parse_operator(operator_to_json(c))).flat(), c.flat());
  const auto plain = parse_operator(R"({"dim": 1, "backend": "complex", "entries": [["0.5"]]})");
  EXPECT_EQ(std::get<CMatrix>(plain)(0, 0), Complex(0.5, 0));
}

TEST(Io, MalformedOperator) {
  EXPECT_THROW(parse_operator(R"({"dim": 2, "entries": [["1", "0"]]})"), InputError);
  EXPECT_THROW(parse_operator(R"({"dim": 1, "entries": [["x"]]})"), std::invalid_argument);
  EXPECT_THROW(parse_operator(R"({"dim": 1, "backend": "mod7", "entries": [["1"]]})"), InputError);
  EXPECT_THROW(parse_operator(R"({"dim": 0, "entries": []})"), InputError);
}

TEST(Io, TemplateRoundTrip) {
  const auto t = *catalog_template("pi2", TemplateKind::kAutomorphism);
  const auto u = parse_template(template_to_json(t));
  EXPECT_EQ(u.params(), t.params());
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(u.entry(i, j), t.entry(i, j));
  EXPECT_EQ(u.open_conditions().size(), t.open_conditions().size());
  EXPECT_THROW(parse_template(R"({"dim": 1, "params": ["a"], "entries": [["b"]]})"), InputError);
}

TEST(Io, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
