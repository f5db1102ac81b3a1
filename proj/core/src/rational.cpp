#include "locsym/rational.hpp"

#include "locsym/error.hpp"

#include <cstdlib>
#include <string>

namespace locsym {

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw InputError("empty rational literal");

  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos || s.find('e') != std::string::npos || s.find('E') != std::string::npos)
      throw InputError("unsupported rational literal: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw InputError("bad decimal literal: " + s);
    mpz_class num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) throw InputError("bad decimal literal: " + s);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  std::string body = (s[0] == '+') ? s.substr(1) : s;
  Rational q;
  if (q.set_str(body, 10) != 0) throw InputError("bad rational literal: " + s);
  if (q.get_den() == 0) throw InputError("zero denominator in rational literal: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("empty integer range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

double Rng::uniform_real(double lo, double hi) {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Rational Rng::nonzero_rational(std::int64_t bound) {
  auto draw = [&] {
    std::int64_t v = uniform_int(1, bound);
    return coin() ? -v : v;
  };
  Rational q(mpz_class(std::to_string(draw())), mpz_class(std::to_string(draw())));
  q.canonicalize();
  return q;
}

Rational Rng::rational(std::int64_t bound) {
  std::int64_t num = uniform_int(-bound, bound);
  std::int64_t den = uniform_int(1, bound);
  Rational q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  return q;
}

Rational Rng::unit_rational(std::int64_t den_bound) {
  std::int64_t den = uniform_int(1, den_bound);
  std::int64_t num = uniform_int(-den, den);
  Rational q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  return q;
}

Rng Rng::fork(std::uint64_t salt) {
  std::uint64_t s = next() ^ (salt * 0x9E3779B97F4A7C15ULL);
  return Rng(s);
}

std::vector<Rational> random_vector(Rng& rng, std::size_t n, std::int64_t bound) {
  std::vector<Rational> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.rational(bound));
  return v;
}

std::uint64_t default_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("LOCSYM_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return fallback;
}

}  // namespace locsym
