#include "locsym/exp_bridge.hpp"

#include "locsym/automorphism.hpp"
#include "locsym/catalog.hpp"
#include "locsym/derivation.hpp"
#include "locsym/error.hpp"
#include "locsym/linalg.hpp"
#include "locsym/local_automorphism.hpp"

#include <cmath>

namespace locsym {

CMatrix matrix_exp(const CMatrix& a, double max_norm) {
  if (!a.square()) throw InputError("matrix_exp: operator must be square");
  const double norm = norm1(a);
  if (!std::isfinite(norm) || norm > max_norm)
    throw NumericError("matrix_exp: norm " + std::to_string(norm) + " exceeds the error budget limit");
  const std::size_t n = a.rows();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const CMatrix scaled = a * Complex(std::ldexp(1.0, -squarings), 0.0);
  // |scaled| <= 1/2, so 24 terms leave a tail far below 1e-16.
  CMatrix sum = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  for (int k = 1; k <= 24; ++k) {
    term = term * scaled * Complex(1.0 / k, 0.0);
    sum += term;
    if (max_abs(term) < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

namespace {

CMatrix sqrtm_denman_beavers(const CMatrix& x) {
  const std::size_t n = x.rows();
  CMatrix y = x, z = CMatrix::identity(n);
  for (int it = 0; it < 100; ++it) {
    const auto yi = inverse(y), zi = inverse(z);
    if (!yi || !zi) throw NumericError("matrix_log: singular iterate in square root");
    const CMatrix y_next = (y + *zi) * Complex(0.5, 0.0);
    const CMatrix z_next = (z + *yi) * Complex(0.5, 0.0);
    const double change = max_abs(y_next - y);
    y = y_next;
    z = z_next;
    if (change <= 1e-15 * std::max(1.0, max_abs(y))) return y;
  }
  throw NumericError("matrix_log: square root iteration did not converge");
}

}  // namespace

CMatrix matrix_log(const CMatrix& b) {
  if (!b.square()) throw InputError("matrix_log: operator must be square");
  const std::size_t n = b.rows();
  if (!inverse(b)) throw NumericError("matrix_log: operator is singular");
  CMatrix x = b;
  int roots = 0;
  while (norm1(x - CMatrix::identity(n)) > 0.25) {
    if (++roots > 60) throw NumericError("matrix_log: spectrum obstructs the principal logarithm");
    x = sqrtm_denman_beavers(x);
  }
  const CMatrix e = x - CMatrix::identity(n);
  CMatrix sum(n, n), power = CMatrix::identity(n);
  for (int k = 1; k <= 80; ++k) {
    power = power * e;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    sum += power * Complex(sign / k, 0.0);
    if (max_abs(power) / k < 1e-18) break;
  }
  const CMatrix result = sum * Complex(std::ldexp(1.0, roots), 0.0);
  const double miss = max_abs(matrix_exp(result) - b) / std::max(1.0, max_abs(b));
  if (!(miss <= 1e-8)) throw NumericError("matrix_log: round trip misses by " + std::to_string(miss));
  return result;
}

double series_numerator(Series s, int k) {
  // k-th numerators: lambda21 2^k - 1; lambda31 = lambda34 c_k = 1 + 3 c_{k-1};
  // lambda32 e_k = 2^{k-1} + 3 e_{k-1}; mu31 d_{k+1} = (2^k - 1) + 3 d_k, d_2 = 1.
  double c = 0.0;
  switch (s) {
    case Series::kLambda21: return std::ldexp(1.0, k) - 1.0;
    case Series::kLambda31:
    case Series::kLambda34:
      for (int i = 1; i <= k; ++i) c = i == 1 ? 1.0 : 1.0 + 3.0 * c;
      return c;
    case Series::kLambda32:
      for (int i = 1; i <= k; ++i) c = i == 1 ? 1.0 : std::ldexp(1.0, i - 1) + 3.0 * c;
      return c;
    case Series::kMu31:
      for (int i = 2; i <= k + 1; ++i) c = i == 2 ? 1.0 : (std::ldexp(1.0, i - 1) - 1.0) + 3.0 * c;
      return c;
  }
  return 0.0;
}

SeriesValue eval_series(Series s, Complex x, int n_terms) {
  if (n_terms < 1) throw InputError("eval_series: at least one term is required");
  // term k is numerator_k * x^{k-1} / m_k! with m_k = k (lambda) or k + 1 (mu31)
  const int shift = s == Series::kMu31 ? 1 : 0;
  double fact = 1.0;
  for (int i = 2; i <= 1 + shift; ++i) fact *= i;
  Complex power(1.0, 0.0), sum(0.0, 0.0);
  for (int k = 1; k <= n_terms; ++k) {
    if (k > 1) {
      power *= x;
      fact *= k + shift;
    }
    sum += series_numerator(s, k) * power / fact;
  }
  double tail = 1.0;
  for (int i = 1; i <= n_terms; ++i) tail *= std::abs(x) / i;
  return {sum, tail};
}

std::string to_string(Series s) {
  switch (s) {
    case Series::kLambda21: return "lambda21";
    case Series::kLambda31: return "lambda31";
    case Series::kMu31: return "mu31";
    case Series::kLambda32: return "lambda32";
    case Series::kLambda34: return "lambda34";
  }
  return "?";
}

const std::vector<Series>& all_series() {
  static const std::vector<Series> all{Series::kLambda21, Series::kLambda31, Series::kMu31, Series::kLambda32,
                                       Series::kLambda34};
  return all;
}

std::optional<Series> series_from_name(const std::string& name) {
  for (Series s : all_series())
    if (to_string(s) == name) return s;
  return std::nullopt;
}

CMatrix structured_log_pi3(const CMatrix& b, int n_terms) {
  if (b.rows() != 5 || b.cols() != 5) throw InputError("structured_log_pi3: operator must be 5x5");
  const auto plus = catalog_template("pi3", TemplateKind::kLocalAutomorphism, +1);
  const double scale = std::max(1.0, max_abs(b));
  if (pattern_residual(*plus, b) > 1e-9 * scale)
    throw InputError("structured_log_pi3: operator is not in the + branch pattern");
  const Complex b11 = b(0, 0);
  if (std::abs(b11) == 0.0 || (b11.imag() == 0.0 && b11.real() < 0.0))
    throw NumericError("structured_log_pi3: b11 is on the closed negative real axis");
  const Complex x1 = std::log(b11);
  auto coeff = [&](Series s) {
    const Complex v = eval_series(s, x1, n_terms).value;
    if (std::abs(v) < 1e-12) throw NumericError("structured_log_pi3: " + to_string(s) + " vanishes at log b11");
    return v;
  };
  const Complex l21 = coeff(Series::kLambda21);
  const Complex x4 = b(1, 0) / l21;
  const Complex x5 = b(2, 1) / coeff(Series::kLambda32);
  const Complex x6 = (b(2, 0) - eval_series(Series::kMu31, x1, n_terms).value * x4 * x5) / coeff(Series::kLambda31);
  const Complex x2 = b(2, 3) / coeff(Series::kLambda34);
  const Complex x7 = b(4, 0) / l21;
  const Complex x3 = b(4, 3) / l21;
  const auto locder = catalog_template("pi3", TemplateKind::kLocalDerivation);
  return locder->instantiate<Complex>(
      {{"b11", x1}, {"b21", x4}, {"b31", x6}, {"b32", x5}, {"b34", x2}, {"b51", x7}, {"b54", x3}});
}

namespace {

double relative(double residual, const CMatrix& m) { return residual / std::max(1.0, max_abs(m)); }

// Real sample of a linear template with every entry bounded by 1 in modulus.
CMatrix bounded_linear_sample(const MatrixTemplate& t, Rng& rng) {
  std::map<std::string, Complex, NaturalLess> values;
  for (const auto& p : t.params()) values[p] = Complex(rng.uniform_real(-1.0, 1.0), 0.0);
  CMatrix m = t.instantiate<Complex>(values);
  const double peak = max_abs(m);
  if (peak > 1.0) m *= Complex(1.0 / peak, 0.0);
  return m;
}

void record(BridgeReport& r, double residual, double limit, const CMatrix& sample, const std::string& what) {
  r.residuals.push_back(residual);
  r.max_residual = std::max(r.max_residual, residual);
  if (r.passed && !(residual < limit)) {
    r.passed = false;
    r.failure = what + " residual " + std::to_string(residual);
    r.counterexample = sample;
  }
}

void check_supported(const Algebra& a) {
  if (a.name() != "pi2" && a.name() != "pi3")
    throw UnsupportedError("exponential bridge is implemented for pi2 and pi3 only");
}

}  // namespace

BridgeReport bridge_check(const Algebra& a, BridgeDirection direction, std::size_t trials, std::uint64_t seed) {
  check_supported(a);
  BridgeReport r;
  r.algebra = a.name();
  r.direction = direction;
  r.trials = trials;
  Rng rng(seed);
  const bool pi3 = a.name() == "pi3";
  const auto locder = catalog_template(a.name(), TemplateKind::kLocalDerivation);
  const auto plus = catalog_template(a.name(), TemplateKind::kLocalAutomorphism, +1);
  const auto minus = pi3 ? catalog_template(a.name(), TemplateKind::kLocalAutomorphism, -1) : std::nullopt;
  for (std::size_t t = 0; t < trials; ++t) {
    if (direction == BridgeDirection::kExp) {
      const CMatrix x = bounded_linear_sample(*locder, rng);
      const CMatrix b = matrix_exp(x);
      const double to_plus = relative(pattern_residual(*plus, b), b);
      if (pi3 && to_plus < relative(pattern_residual(*minus, b), b)) ++r.plus_branch;
      record(r, to_plus, 1e-9, x, "exp sample off the local automorphism pattern,");
      continue;
    }
    // log direction: pattern member with diagonal entries in (0.5, 2)
    std::map<std::string, Complex, NaturalLess> v;
    for (const auto& p : plus->params()) v[p] = Complex(rng.uniform_real(-1.0, 1.0), 0.0);
    v["b11"] = rng.uniform_real(0.5, 2.0);
    if (!pi3) {
      v["b22"] = rng.uniform_real(0.5, 2.0);
      v["b33"] = rng.uniform_real(0.5, 2.0);
      v["b41"] = rng.uniform_real(0.5, 2.0) - v["b11"];
      v["b52"] = rng.uniform_real(0.5, 2.0) - v["b22"];
    }
    const CMatrix b = plus->instantiate<Complex>(v);
    try {
      const CMatrix l = pi3 ? structured_log_pi3(b) : matrix_log(b);
      const double round_trip = relative(max_abs(matrix_exp(l) - b), b);
      const double in_pattern = relative(pattern_residual(*locder, l), l);
      if (pi3) r.max_method_gap = std::max(r.max_method_gap, max_abs(matrix_log(b) - l));
      record(r, std::max(round_trip, in_pattern), 1e-8, b, "logarithm");
    } catch (const NumericError& e) {
      record(r, INFINITY, 1e-8, b, std::string("logarithm failed: ") + e.what() + ";");
    }
  }
  if (r.passed && pi3 && direction == BridgeDirection::kLog && r.max_method_gap > 1e-7) {
    r.passed = false;
    r.failure = "structured and generic logarithms disagree by " + std::to_string(r.max_method_gap);
  }
  return r;
}

BridgeReport exp_derivation_check(const Algebra& a, std::size_t trials, std::uint64_t seed) {
  BridgeReport r;
  r.algebra = a.name();
  r.trials = trials;
  Rng rng(seed);
  const DerivationSpace der = derivation_algebra(a);
  for (std::size_t t = 0; t < trials; ++t) {
    CMatrix d(a.dim(), a.dim());
    for (const auto& basis : der.basis) d += to_complex(basis) * Complex(rng.uniform_real(-1.0, 1.0), 0.0);
    const double peak = max_abs(d);
    if (peak > 1.0) d *= Complex(1.0 / peak, 0.0);
    const CMatrix phi = matrix_exp(d);
    record(r, multiplicativity_residual(a, phi), 1e-9, d, "exp of a derivation is not multiplicative,");
  }
  return r;
}

}  // namespace locsym
