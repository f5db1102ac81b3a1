#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace locsym {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Parses "p/q", "p" or a plain decimal such as "-0.25" into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
inline double to_double(const Rational& q) { return q.get_d(); }

/// Deterministic generator shared by every randomized check.
///
/// Integer ranges are mapped with a plain modulo of the 64-bit output so a
/// given seed reproduces the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double uniform_real(double lo, double hi);
  bool coin() { return (next() >> 63) != 0; }

  /// p/q with p, q uniform in [-bound, bound] \ {0}.
  Rational nonzero_rational(std::int64_t bound = 1'000'000);
  /// Like nonzero_rational but allows 0 with probability 1/(2*bound+1).
  Rational rational(std::int64_t bound = 1'000'000);
  /// Small rational with |value| <= 1, denominator in [1, den_bound].
  Rational unit_rational(std::int64_t den_bound = 64);

  /// Derives an independent child stream; used to keep sub-checks stable
  /// when the number of draws in a sibling check changes.
  Rng fork(std::uint64_t salt);

 private:
  std::mt19937_64 engine_;
};

std::vector<Rational> random_vector(Rng& rng, std::size_t n, std::int64_t bound = 1'000'000);

/// Seed from LOCSYM_SEED when set, otherwise `fallback`.
std::uint64_t default_seed(std::uint64_t fallback = 20240601);

}  // namespace locsym
