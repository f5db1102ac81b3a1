#pragma once

#include "locsym/error.hpp"
#include "locsym/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <string_view>
#include <vector>

namespace locsym {

/// Orders identifiers so that embedded integers compare numerically: nu2 < nu10.
struct NaturalLess {
  bool operator()(std::string_view a, std::string_view b) const;
  using is_transparent = void;
};

/// Exponent map; absent variables have exponent 0, stored exponents are >= 1.
using Monomial = std::map<std::string, unsigned, NaturalLess>;

unsigned total_degree(const Monomial& m);

/// Graded lexicographic order, variables ranked by NaturalLess (first is largest).
/// Used descending so the leading term comes first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

template <class T>
T from_rational(const Rational& q);
template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <>
inline Complex from_rational<Complex>(const Rational& q) { return Complex(q.get_d(), 0.0); }

/// Sparse multivariate polynomial over Q. Terms with zero coefficient are never stored.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT
  static Polynomial variable(const std::string& name);
  static Polynomial monomial(const Monomial& m, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (0 if absent).
  Rational constant_term() const;
  unsigned degree() const;
  unsigned degree_in(std::string_view var) const;
  std::set<std::string, NaturalLess> variables() const;
  bool contains_variable(std::string_view var) const;
  /// Leading term under GrlexGreater; precondition: nonzero.
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(unsigned e) const;

  /// Replaces `var` by `value` everywhere.
  Polynomial substitute(std::string_view var, const Polynomial& value) const;
  Polynomial derivative(std::string_view var) const;
  /// Coefficient of var^k, as a polynomial in the remaining variables.
  Polynomial coefficient_of(std::string_view var, unsigned k) const;
  /// Regards the polynomial as one in `vars` only: maps each monomial in `vars`
  /// to its coefficient, a polynomial in the remaining variables.
  std::map<Monomial, Polynomial, GrlexGreater> collect(const std::set<std::string, NaturalLess>& vars) const;

  template <class T, class Lookup>
    requires std::is_invocable_v<Lookup, const std::string&>
  T evaluate(Lookup&& lookup) const {
    T sum(0);
    for (const auto& [mono, c] : terms_) {
      T term = from_rational<T>(c);
      for (const auto& [v, e] : mono) {
        const T x = lookup(v);
        for (unsigned k = 0; k < e; ++k) term *= x;
      }
      sum += term;
    }
    return sum;
  }
  template <class T>
  T evaluate(const std::map<std::string, T, NaturalLess>& values) const {
    return evaluate<T>([&](const std::string& v) -> T {
      auto it = values.find(v);
      if (it == values.end()) throw InputError("no value for variable " + v);
      return it->second;
    });
  }

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

using Assignment = std::map<std::string, Rational, NaturalLess>;

/// Parses sums of products of rationals, identifiers, powers (^ or **) and
/// parenthesised subexpressions, e.g. "2*a11*a21", "(a11+a41)^2", "-b11^3".
Polynomial parse_polynomial(std::string_view text);

/// Quotient if `d` divides `p` exactly, nullopt otherwise.
std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& d);

/// Scales to integer coefficients with unit content and positive leading coefficient.
Polynomial primitive_part(const Polynomial& p);

/// Splits `p` into normalized factors, each of degree 1 in some variable with
/// a nonzero constant coefficient there. Factors from `known` are tried first by
/// trial division. Multiplicities are collapsed. Throws UnsupportedError when a
/// remaining factor has no such variable.
std::vector<Polynomial> factor_linear(const Polynomial& p, const std::vector<Polynomial>& known = {});

/// A variable in which `f` has degree 1 with a constant coefficient, choosing the
/// NaturalLess-largest such name; nullopt if there is none.
std::optional<std::string> solvable_variable(const Polynomial& f);

}  // namespace locsym
