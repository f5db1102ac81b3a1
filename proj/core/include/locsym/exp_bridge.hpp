#pragma once

#include "locsym/algebra.hpp"
#include "locsym/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace locsym {

/// Scaling and squaring with a Taylor core. Throws NumericError when
/// norm1(a) > max_norm, where the error budget is no longer controlled.
CMatrix matrix_exp(const CMatrix& a, double max_norm = 100.0);
inline CMatrix matrix_exp(const QMatrix& a, double max_norm = 100.0) { return matrix_exp(to_complex(a), max_norm); }

/// Principal logarithm: Denman-Beavers square roots until |X - I| <= 1/4,
/// then the log(I + E) series. Throws NumericError when the spectrum blocks
/// convergence or exp(result) misses b by more than 1e-8 relative.
CMatrix matrix_log(const CMatrix& b);

enum class Series { kLambda21, kLambda31, kMu31, kLambda32, kLambda34 };

struct SeriesValue {
  Complex value;
  double tail_bound = 0.0;  // |x|^N / N!
};

inline constexpr int kSeriesOrder = 30;

/// Truncated sum of the first N terms of the named coefficient series.
SeriesValue eval_series(Series s, Complex x, int n_terms = kSeriesOrder);
/// Integer coefficient of the k-th term (k = 1..N) before division by the factorial.
double series_numerator(Series s, int k);
std::string to_string(Series s);
std::optional<Series> series_from_name(const std::string& name);
const std::vector<Series>& all_series();

/// Logarithm of a member of the + branch of the pi3 local automorphism
/// pattern, recovered coordinate by coordinate: x1 = log b11, then
/// x4, x5, x6, x2, x7, x3 through the series coefficients.
CMatrix structured_log_pi3(const CMatrix& b, int n_terms = kSeriesOrder);

enum class BridgeDirection { kExp, kLog };

struct BridgeReport {
  std::string algebra;
  BridgeDirection direction = BridgeDirection::kExp;
  bool passed = true;
  std::size_t trials = 0;
  std::size_t plus_branch = 0;  // pi3 exp direction: samples whose b33 / b11^3 is near +1
  double max_residual = 0.0;
  double max_method_gap = 0.0;  // log direction for pi3: structured vs generic logarithm
  std::vector<double> residuals;
  std::string failure;
  std::optional<CMatrix> counterexample;
};

/// exp: LocDer samples with entries bounded by 1 land in the local
/// automorphism pattern (pi3: + branch) within 1e-9.
/// log: pattern members with diagonal in (0.5, 2) have a logarithm in the
/// LocDer pattern with round-trip error below 1e-8.
BridgeReport bridge_check(const Algebra& a, BridgeDirection direction, std::size_t trials, std::uint64_t seed);

/// exp of derivation samples is multiplicative within 1e-9.
BridgeReport exp_derivation_check(const Algebra& a, std::size_t trials, std::uint64_t seed);

}  // namespace locsym
