#include "locsym/exp_bridge.hpp"

#include "locsym/catalog.hpp"
#include "locsym/local_automorphism.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace locsym;

namespace {

double max_gap(const CMatrix& a, const CMatrix& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

CMatrix cdiag(std::initializer_list<double> d) {
  CMatrix m(d.size(), d.size());
  std::size_t k = 0;
  for (double v : d) m(k, k) = v, ++k;
  return m;
}

const double ln2 = std::log(2.0);

TEST(MatrixExp, Examples) {
  EXPECT_LT(max_gap(matrix_exp(CMatrix(5, 5)), CMatrix::identity(5)), 1e-15);
  EXPECT_LT(max_gap(matrix_exp(cdiag({ln2, 2 * ln2, 3 * ln2, ln2, 2 * ln2})), cdiag({2, 4, 8, 2, 4})), 1e-12);
  CMatrix e21(5, 5);
  e21(1, 0) = 1;
  CMatrix want = CMatrix::identity(5);
  want(1, 0) = 1;
  EXPECT_LT(max_gap(matrix_exp(e21), want), 1e-15);
  CMatrix big = CMatrix::identity(2);
  big(0, 0) = 500;
  EXPECT_THROW(matrix_exp(big), NumericError);
}

TEST(MatrixExp, RotationGenerator) {
  // exp of [[0,-t],[t,0]] is a rotation
  CMatrix a(2, 2);
  a(0, 1) = -1.3;
  a(1, 0) = 1.3;
  const CMatrix r = matrix_exp(a);
  EXPECT_NEAR(r(0, 0).real(), std::cos(1.3), 1e-13);
  EXPECT_NEAR(r(1, 0).real(), std::sin(1.3), 1e-13);
}

TEST(MatrixLog, Examples) {
  EXPECT_LT(max_gap(matrix_log(CMatrix::identity(5)), CMatrix(5, 5)), 1e-14);
  EXPECT_LT(max_gap(matrix_log(cdiag({2, 4, 8, 2, 4})), cdiag({ln2, 2 * ln2, 3 * ln2, ln2, 2 * ln2})), 1e-12);
  EXPECT_THROW(matrix_log(CMatrix(3, 3)), NumericError);
}

TEST(MatrixLog, RoundTripOnLocalDerivationSamples) {
  Rng rng(41);
  const auto t = *catalog_template("pi3", TemplateKind::kLocalDerivation);
  for (int k = 0; k < 50; ++k) {
    Assignment p;
    for (const auto& name : t.params()) p[name] = rng.unit_rational(16);
    const CMatrix a = to_complex(t.instantiate<Rational>(p));
    const CMatrix back = matrix_log(matrix_exp(a));
    EXPECT_LT(max_gap(back, a), 1e-8);
  }
}

TEST(Series, Values) {
  EXPECT_LT(std::abs(eval_series(Series::kLambda21, 0.0).value - 1.0), 1e-15);
  EXPECT_LT(std::abs(eval_series(Series::kMu31, 0.0).value - 0.5), 1e-15);
  EXPECT_LT(std::abs(eval_series(Series::kLambda21, ln2).value - 2.0 / ln2), 1e-12);
  EXPECT_EQ(series_numerator(Series::kLambda21, 2), 3.0);  // 2^0 + 2^1
  EXPECT_EQ(series_numerator(Series::kLambda32, 2), 5.0);  // 2 + 3
  EXPECT_EQ(series_from_name(to_string(Series::kMu31)), Series::kMu31);
  EXPECT_FALSE(series_from_name("lambda99").has_value());
  EXPECT_EQ(all_series().size(), 5u);
}

TEST(Series, ClosedFormsAtRandomComplexPoints) {
  // closed forms are divided differences of the exponential on {1, 2, 3}
  Rng rng(42);
  for (int k = 0; k < 100; ++k) {
    const double r = rng.uniform_real(0, 1), th = rng.uniform_real(0, 2 * M_PI);
    const Complex x = std::polar(r, th);
    const Complex e1 = std::exp(x), e2 = std::exp(2.0 * x), e3 = std::exp(3.0 * x);
    EXPECT_LT(std::abs(eval_series(Series::kLambda21, x).value * x - (e2 - e1)), 1e-10);
    EXPECT_LT(std::abs(eval_series(Series::kLambda31, x).value * 2.0 * x - (e3 - e1)), 1e-10);
    EXPECT_LT(std::abs(eval_series(Series::kLambda32, x).value * x - (e3 - e2)), 1e-10);
    EXPECT_LT(std::abs(eval_series(Series::kMu31, x).value * 2.0 * x * x - (e3 - 2.0 * e2 + e1)), 1e-10);
    EXPECT_EQ(eval_series(Series::kLambda34, x).value, eval_series(Series::kLambda31, x).value);
    EXPECT_LE(eval_series(Series::kLambda21, x).tail_bound, std::pow(r, 30) / std::tgamma(31.0) * (1 + 1e-12));
  }
}

TEST(Series, AgreesWithTriangularExponentialEntries) {
  // exp of [[x,0],[1,2x]] has (2,1) entry (e^{2x} - e^x) / x
  for (double x : {0.3, -0.7, 1.1}) {
    CMatrix a(2, 2);
    a(0, 0) = x;
    a(1, 1) = 2 * x;
    a(1, 0) = 1;
    EXPECT_LT(std::abs(matrix_exp(a)(1, 0) - eval_series(Series::kLambda21, x).value), 1e-12);
  }
}

TEST(StructuredLog, Examples) {
  EXPECT_LT(max_gap(structured_log_pi3(CMatrix::identity(5)), CMatrix(5, 5)), 1e-15);
  EXPECT_LT(max_gap(structured_log_pi3(cdiag({2, 4, 8, 2, 4})), cdiag({ln2, 2 * ln2, 3 * ln2, ln2, 2 * ln2})), 1e-14);
  CMatrix a = cdiag({ln2, 2 * ln2, 3 * ln2, ln2, 2 * ln2});
  a(1, 0) = 1;
  const CMatrix b = matrix_exp(a);
  EXPECT_NEAR(b(1, 0).real(), 2.0 / ln2, 1e-12);
  EXPECT_NEAR(b(1, 0).real(), 2.885, 1e-3);
  const CMatrix x = structured_log_pi3(b);
  EXPECT_NEAR(x(1, 0).real(), 1.0, 1e-12);
  EXPECT_LT(max_gap(x, a), 1e-12);
}

TEST(StructuredLog, Preconditions) {
  EXPECT_THROW(structured_log_pi3(to_complex(oracle::diag({1, 1, -1, 1, 1}))), InputError);
  EXPECT_THROW(structured_log_pi3(cdiag({-1, 1, -1, -1, 1})), NumericError);
}

TEST(StructuredLog, AgreesWithGenericLog) {
  Rng rng(43);
  const auto p3 = *locaut_pattern("pi3");
  for (int k = 0; k < 50; ++k) {
    Assignment pa;
    pa["b11"] = Rational(rng.uniform_int(6, 19), 10);
    for (const auto& name : p3.branches[0].params())
      if (name != "b11") pa[name] = rng.unit_rational(8);
    const CMatrix b = to_complex(p3.branches[0].instantiate<Rational>(pa));
    EXPECT_LT(max_gap(structured_log_pi3(b), matrix_log(b)), 1e-7);
  }
}

TEST(BridgeCheck, AllDirections) {
  const auto e3 = bridge_check(pi3(), BridgeDirection::kExp, 100, 1);
  EXPECT_TRUE(e3.passed) << e3.failure;
  EXPECT_EQ(e3.plus_branch, 100u);
  EXPECT_LT(e3.max_residual, 1e-9);
  const auto e2 = bridge_check(pi2(), BridgeDirection::kExp, 100, 1);
  EXPECT_TRUE(e2.passed) << e2.failure;
  const auto l3 = bridge_check(pi3(), BridgeDirection::kLog, 100, 1);
  EXPECT_TRUE(l3.passed) << l3.failure;
  EXPECT_LE(l3.max_method_gap, 1e-7);
  const auto l2 = bridge_check(pi2(), BridgeDirection::kLog, 50, 1);
  EXPECT_TRUE(l2.passed) << l2.failure;
  EXPECT_EQ(e3.residuals.size(), 100u);
}

TEST(BridgeCheck, ExpOfDerivationsIsMultiplicative) {
  for (const Algebra& a : {pi2(), pi3()}) {
    const auto r = exp_derivation_check(a, 50, 2);
    EXPECT_TRUE(r.passed) << r.failure;
    EXPECT_LT(r.max_residual, 1e-9);
  }
}

TEST(BridgeCheck, ExpOfPatternSatisfiesRelations) {
  Rng rng(44);
  const auto t = *catalog_template("pi3", TemplateKind::kLocalDerivation);
  for (int k = 0; k < 30; ++k) {
    Assignment p;
    for (const auto& name : t.params()) p[name] = rng.unit_rational(16);
    const CMatrix b = matrix_exp(to_complex(t.instantiate<Rational>(p)));
    const Complex b11 = b(0, 0);
    EXPECT_LT(std::abs(b(1, 1) - b11 * b11), 1e-10);
    EXPECT_LT(std::abs(b(2, 2) - b11 * b11 * b11), 1e-10);
    EXPECT_LT(std::abs(b(3, 3) - b11), 1e-10);
    EXPECT_LT(std::abs(b(4, 4) - b11 * b11), 1e-10);
    EXPECT_LT(std::abs(b(3, 0)), 1e-15);
  }
}

}  // namespace
