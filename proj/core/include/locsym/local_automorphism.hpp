#pragma once

#include "locsym/algebra.hpp"
#include "locsym/automorphism.hpp"
#include "locsym/matrix_template.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace locsym {

/// Scalar that stays an exact rational until a root step forces complex floats.
class Num {
 public:
  Num() : exact_(true), q_(0) {}
  Num(const Rational& q) : exact_(true), q_(q) {}  // NOLINT
  Num(int q) : Num(Rational(q)) {}                 // NOLINT
  Num(Complex z) : exact_(false), z_(z) {}       // NOLINT

  bool exact() const { return exact_; }
  const Rational& rational() const { return q_; }
  Complex complex() const { return exact_ ? Complex(q_.get_d(), 0.0) : z_; }

  friend Num operator+(const Num& a, const Num& b);
  friend Num operator-(const Num& a, const Num& b);
  friend Num operator*(const Num& a, const Num& b);
  friend Num operator/(const Num& a, const Num& b);
  friend Num operator-(const Num& a);
  Num& operator+=(const Num& o) { return *this = *this + o; }
  Num& operator*=(const Num& o) { return *this = *this * o; }

  /// Exact when both sides are exact, otherwise |a - b| <= tol * max(1, |a|, |b|).
  static bool equal(const Num& a, const Num& b, double tol);
  bool is_zero(double tol) const { return exact_ ? q_ == 0 : std::abs(z_) <= tol; }

  /// All k-th roots (k = 2 or 3); exact when a rational root exists.
  std::vector<Num> roots(unsigned k) const;

 private:
  bool exact_;
  Rational q_;
  Complex z_;
};

template <>
inline Num from_rational<Num>(const Rational& q) {
  return Num(q);
}

struct FeasibilityReport {
  bool feasible = false;
  std::map<std::string, Complex, NaturalLess> witness_params;
  bool exact = false;     // every step stayed rational; residual is then exactly zero
  double residual = 0.0;  // max |Phi_params x - B x| (float path)
  std::string note;
};

inline constexpr double kFeasibilityTol = 1e-9;

/// Existence of an automorphism phi with phi(x) = B x, decided by the
/// per-algebra case schedule (pi2 / pi3 only; UnsupportedError otherwise).
FeasibilityReport locaut_feasible_at(const Algebra& a, const QMatrix& b, const QVector& x, double tol = kFeasibilityTol);
FeasibilityReport locaut_feasible_at(const Algebra& a, const CMatrix& b, const CVector& x, double tol = kFeasibilityTol);

struct LocAutPattern {
  std::string algebra;
  std::vector<MatrixTemplate> branches;  // pi2: one; pi3: + then -
  std::vector<std::string> relations;    // human-readable summary
};

std::optional<LocAutPattern> locaut_pattern(const std::string& algebra);

struct PatternCheck {
  bool member = false;
  int branch = 0;         // +1 / -1 for pi3 members, +1 for pi2 members
  bool boundary = false;  // relations hold but a nonvanishing condition fails
  std::optional<Assignment> params;
};

PatternCheck pattern_check(const LocAutPattern& p, const QMatrix& b);

/// Numeric relation residual of b against one branch template:
/// the template evaluated at params read off b, minus b, in max norm.
double pattern_residual(const MatrixTemplate& t, const CMatrix& b);

/// e_i, e_i + e_j (i < j), (1,0,0,-1,0), (0,1,0,0,-1).
std::vector<QVector> locaut_probe_set(std::size_t n);

/// First probe (then `random_points` random points) where feasibility fails.
std::optional<QVector> find_witness(const Algebra& a, const QMatrix& b, std::size_t random_points = 1000,
                                    std::uint64_t seed = 1);

struct PatternReport {
  bool passed = true;
  std::size_t forward_checked = 0;
  std::size_t reverse_checked = 0;
  std::string failure;
  std::optional<QMatrix> counterexample;
  std::optional<QVector> point;
};

/// Random member of one branch (sign +1 / -1) with small rational entries.
QMatrix random_pattern_member(const LocAutPattern& p, Rng& rng, int sign = +1, std::int64_t bound = 1000);

/// A random member with exactly one relation broken; `label` names the relation.
QMatrix random_single_violation(const LocAutPattern& p, Rng& rng, std::string& label);

/// Forward: `trials` members x `trials` points feasible. Reverse: `trials`
/// single-relation violations refuted by find_witness.
PatternReport verify_pattern(const Algebra& a, const LocAutPattern& p, std::size_t trials, std::uint64_t seed);

/// Products and inverses of random members pass pattern_check.
PatternReport pattern_group_closure(const LocAutPattern& p, std::size_t trials, std::uint64_t seed);

}  // namespace locsym
