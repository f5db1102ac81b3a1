#include "locsym/local_automorphism.hpp"

#include "locsym/catalog.hpp"

#include <cmath>
#include <numbers>

namespace locsym {

Num operator+(const Num& a, const Num& b) {
  if (a.exact_ && b.exact_) return Num(Rational(a.q_ + b.q_));
  return Num(a.complex() + b.complex());
}

Num operator-(const Num& a, const Num& b) {
  if (a.exact_ && b.exact_) return Num(Rational(a.q_ - b.q_));
  return Num(a.complex() - b.complex());
}

Num operator*(const Num& a, const Num& b) {
  if (a.exact_ && b.exact_) return Num(Rational(a.q_ * b.q_));
  return Num(a.complex() * b.complex());
}

Num operator/(const Num& a, const Num& b) {
  if (b.exact_ && b.q_ == 0) throw NumericError("exact division by zero");
  if (a.exact_ && b.exact_) return Num(Rational(a.q_ / b.q_));
  return Num(a.complex() / b.complex());
}

Num operator-(const Num& a) { return a.exact_ ? Num(Rational(-a.q_)) : Num(-a.z_); }

bool Num::equal(const Num& a, const Num& b, double tol) {
  if (a.exact_ && b.exact_) return a.q_ == b.q_;
  const Complex x = a.complex(), y = b.complex();
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

namespace {

std::optional<mpz_class> exact_root(const mpz_class& v, unsigned k) {
  if (v < 0 && k % 2 == 0) return std::nullopt;
  mpz_class r;
  mpz_class a = abs(v);
  if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), k) == 0) return std::nullopt;
  return v < 0 ? mpz_class(-r) : r;
}

}  // namespace

std::vector<Num> Num::roots(unsigned k) const {
  if (k != 2 && k != 3) throw InputError("only square and cube roots are supported");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Num> out;
  if (exact_) {
    if (q_ == 0) return {Num(0)};
    auto rn = exact_root(q_.get_num(), k), rd = exact_root(q_.get_den(), k);
    if (rn && rd) {
      const Rational r(*rn, *rd);
      if (k == 2) return {Num(r), Num(Rational(-r))};
      out.emplace_back(r);
      for (unsigned m = 1; m < 3; ++m) out.emplace_back(Complex(r.get_d(), 0.0) * std::polar(1.0, two_pi * m / 3.0));
      return out;
    }
  }
  const Complex z = complex();
  const Complex principal = std::polar(std::pow(std::abs(z), 1.0 / k), std::arg(z) / k);
  for (unsigned m = 0; m < k; ++m) out.emplace_back(principal * std::polar(1.0, two_pi * m / k));
  return out;
}

namespace {

using NumVec = std::vector<Num>;
using NumParams = std::map<std::string, Num, NaturalLess>;

// Instantiates `family` at `params`, applies it to nu and compares with y.
bool accept(const MatrixTemplate& family, const NumParams& params, const NumVec& nu, const NumVec& y, double tol,
            FeasibilityReport& report) {
  auto lookup = [&](const std::string& v) -> Num {
    auto it = params.find(v);
    return it == params.end() ? Num(0) : it->second;
  };
  for (const auto& c : family.open_conditions())
    if (c.evaluate<Num>(lookup).is_zero(tol)) return false;
  const std::size_t n = family.dim();
  bool exact = true;
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Num s(0);
    for (std::size_t j = 0; j < n; ++j) {
      const Polynomial& e = family.entry(i, j);
      if (e.is_zero()) continue;
      s += e.evaluate<Num>(lookup) * nu[j];
    }
    if (!Num::equal(s, y[i], tol)) return false;
    exact = exact && s.exact() && y[i].exact();
    residual = std::max(residual, std::abs(s.complex() - y[i].complex()));
  }
  report.feasible = true;
  report.exact = exact;
  report.residual = exact ? 0.0 : residual;
  for (const auto& p : family.params()) report.witness_params[p] = lookup(p).complex();
  return true;
}

FeasibilityReport feasible_pi2(const MatrixTemplate& fam, const NumVec& nu, const NumVec& y, double tol) {
  FeasibilityReport r;
  auto nz = [&](const Num& v) { return !v.is_zero(tol); };
  const Num& n1 = nu[0];
  const Num& n2 = nu[1];
  const Num& n3 = nu[2];
  const Num& n4 = nu[3];
  const Num& n5 = nu[4];
  if (nz(n1)) {
    NumParams p;
    const Num t = y[0] / n1;
    const Num a41 = nz(n1 + n4) ? (y[3] - t * n4) / (n1 + n4) : Num(0);
    const Num a21 = (y[1] - t * t * n2) / n1;
    p["a11"] = t;
    p["a41"] = a41;
    p["a21"] = a21;
    p["a31"] = (y[2] - Num(2) * t * a21 * n2 - t * t * t * n3) / n1;
    p["a51"] = (y[4] - (Num(2) * t * a41 + a41 * a41) * n2 - (t + a41) * (t + a41) * n5) / n1;
    if (!accept(fam, p, nu, y, tol, r)) r.note = "nu1 != 0 schedule has no solution";
    return r;
  }
  std::vector<Num> ts;
  if (nz(n2)) ts = (y[1] / n2).roots(2);
  else if (!nz(n4) && nz(n3)) ts = (y[2] / n3).roots(3);
  else ts = {Num(1)};
  for (const Num& t : ts) {
    if (!nz(t)) continue;
    std::vector<Num> ss;
    if (nz(n4)) ss = {y[3] / n4};
    else if (nz(n2 + n5)) ss = ((y[4] + t * t * n2) / (n2 + n5)).roots(2);
    else ss = {Num(1)};
    for (const Num& s : ss) {
      if (!nz(s)) continue;
      NumParams p;
      const Num a41 = s - t;
      p["a11"] = t;
      p["a41"] = a41;
      if (nz(n4)) {
        p["a34"] = (y[2] - t * t * t * n3) / n4;
        p["a54"] = (y[4] - (s * s - t * t) * n2 - s * s * n5) / n4;
      } else if (nz(n2)) {
        p["a21"] = (y[2] - t * t * t * n3) / (Num(2) * t * n2);
      }
      if (accept(fam, p, nu, y, tol, r)) return r;
    }
  }
  r.note = "no root branch satisfies every coordinate";
  return r;
}

FeasibilityReport feasible_pi3(const MatrixTemplate& fam, const NumVec& nu, const NumVec& y, double tol) {
  FeasibilityReport r;
  auto nz = [&](const Num& v) { return !v.is_zero(tol); };
  const Num& n1 = nu[0];
  const Num& n2 = nu[1];
  const Num& n3 = nu[2];
  const Num& n4 = nu[3];
  const Num& n5 = nu[4];
  std::vector<Num> ts;
  if (nz(n1)) ts = {y[0] / n1};
  else if (nz(n4)) ts = {y[3] / n4};
  else if (nz(n2)) ts = (y[1] / n2).roots(2);
  else if (nz(n3)) ts = (y[2] / n3).roots(3);
  else if (nz(n5)) ts = (y[4] / n5).roots(2);
  else ts = {Num(1)};
  for (const Num& t : ts) {
    if (!nz(t)) continue;
    NumParams p;
    p["a11"] = t;
    if (nz(n1)) {
      const Num a21 = (y[1] - t * t * n2) / n1;
      p["a21"] = a21;
      p["a31"] = (y[2] - Num(2) * t * a21 * n2 - t * t * t * n3) / n1;
      p["a51"] = (y[4] - t * t * n5) / n1;
    } else if (nz(n4)) {
      p["a34"] = (y[2] - t * t * t * n3) / n4;
      p["a54"] = (y[4] - t * t * n5) / n4;
    } else if (nz(n2)) {
      p["a21"] = (y[2] - t * t * t * n3) / (Num(2) * t * n2);
    }
    if (accept(fam, p, nu, y, tol, r)) return r;
  }
  r.note = "no root branch satisfies every coordinate";
  return r;
}

FeasibilityReport feasible(const Algebra& a, const NumVec& nu, const NumVec& y, double tol) {
  if (a.dim() != 5 || (a.name() != "pi2" && a.name() != "pi3"))
    throw UnsupportedError("local automorphism feasibility is implemented for pi2 and pi3 only");
  if (nu.size() != 5 || y.size() != 5) throw InputError("feasibility: vector length must be 5");
  const auto fam = catalog_template(a.name(), TemplateKind::kAutomorphism);
  return a.name() == "pi2" ? feasible_pi2(*fam, nu, y, tol) : feasible_pi3(*fam, nu, y, tol);
}

}  // namespace

FeasibilityReport locaut_feasible_at(const Algebra& a, const QMatrix& b, const QVector& x, double tol) {
  const QVector y = b * x;
  return feasible(a, NumVec(x.begin(), x.end()), NumVec(y.begin(), y.end()), tol);
}

FeasibilityReport locaut_feasible_at(const Algebra& a, const CMatrix& b, const CVector& x, double tol) {
  const CVector y = b * x;
  return feasible(a, NumVec(x.begin(), x.end()), NumVec(y.begin(), y.end()), tol);
}

std::optional<LocAutPattern> locaut_pattern(const std::string& algebra) {
  if (algebra == "pi2")
    return LocAutPattern{"pi2",
                         {*catalog_template("pi2", TemplateKind::kLocalAutomorphism)},
                         {"b44 = b41 + b11", "b55 = b22 + b52", "b11*b22*b33*(b41 + b11)*(b22 + b52) != 0",
                          "zero pattern of the displayed form"}};
  if (algebra == "pi3")
    return LocAutPattern{"pi3",
                         {*catalog_template("pi3", TemplateKind::kLocalAutomorphism, +1),
                          *catalog_template("pi3", TemplateKind::kLocalAutomorphism, -1)},
                         {"b22 = b11^2", "b33 = +b11^3 or b33 = -b11^3", "b44 = b11", "b55 = b11^2", "b41 = 0",
                          "b11 != 0", "zero pattern of the displayed form"}};
  return std::nullopt;
}

PatternCheck pattern_check(const LocAutPattern& p, const QMatrix& b) {
  PatternCheck c;
  for (std::size_t k = 0; k < p.branches.size(); ++k) {
    if (auto m = template_match(p.branches[k], b)) {
      c.member = true;
      c.branch = k == 0 ? +1 : -1;
      c.params = std::move(m);
      return c;
    }
  }
  for (std::size_t k = 0; k < p.branches.size(); ++k)
    if (template_match(without_open_conditions(p.branches[k]), b)) {
      c.boundary = true;
      c.branch = k == 0 ? +1 : -1;
    }
  return c;
}

double pattern_residual(const MatrixTemplate& t, const CMatrix& b) {
  const std::size_t n = t.dim();
  if (b.rows() != n) throw InputError("pattern_residual: dimension mismatch");
  ParamValues<Complex> values;
  for (const auto& name : t.params()) {
    const Polynomial bare = Polynomial::variable(name);
    bool found = false;
    for (std::size_t i = 0; i < n && !found; ++i)
      for (std::size_t j = 0; j < n && !found; ++j)
        if (t.entry(i, j) == bare) {
          values[name] = b(i, j);
          found = true;
        }
    if (!found) throw UnsupportedError("parameter " + name + " of " + t.name() + " is not a bare entry");
  }
  const CMatrix fitted = t.instantiate<Complex>(values);
  return max_abs(fitted - b);
}

std::vector<QVector> locaut_probe_set(std::size_t n) {
  std::vector<QVector> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(basis_vector<Rational>(n, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      QVector v(n, Rational(0));
      v[i] = 1;
      v[j] = 1;
      pts.push_back(v);
    }
  if (n == 5) {
    pts.push_back(QVector{1, 0, 0, -1, 0});
    pts.push_back(QVector{0, 1, 0, 0, -1});
  }
  return pts;
}

std::optional<QVector> find_witness(const Algebra& a, const QMatrix& b, std::size_t random_points, std::uint64_t seed) {
  for (const auto& x : locaut_probe_set(a.dim()))
    if (!locaut_feasible_at(a, b, x).feasible) return x;
  Rng rng(seed);
  for (std::size_t t = 0; t < random_points; ++t) {
    QVector x = random_vector(rng, a.dim());
    if (!locaut_feasible_at(a, b, x).feasible) return x;
  }
  return std::nullopt;
}

QMatrix random_pattern_member(const LocAutPattern& p, Rng& rng, int sign, std::int64_t bound) {
  const MatrixTemplate& t = p.branches.at(sign > 0 || p.branches.size() == 1 ? 0 : 1);
  return t.instantiate<Rational>(random_valid_params(t, rng, bound));
}

QMatrix random_single_violation(const LocAutPattern& p, Rng& rng, std::string& label) {
  const int sign = p.branches.size() > 1 && rng.coin() ? -1 : +1;
  const MatrixTemplate& t = p.branches.at(sign > 0 ? 0 : 1);
  Assignment params = random_valid_params(t, rng, 1000);
  QMatrix b = t.instantiate<Rational>(params);
  const auto zeros = t.zero_positions();
  const Rational delta = rng.nonzero_rational(1000);
  const bool pi2 = p.algebra == "pi2";
  // zero entries, relation entries, then nonvanishing conditions
  const std::vector<std::pair<std::size_t, std::size_t>> related =
      pi2 ? std::vector<std::pair<std::size_t, std::size_t>>{{3, 3}, {4, 4}}
          : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {2, 2}, {3, 3}, {4, 4}};
  const std::size_t options = zeros.size() + related.size() + t.open_conditions().size();
  const std::size_t pick = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(options) - 1));
  auto pos = [](std::pair<std::size_t, std::size_t> ij) {
    return "(" + std::to_string(ij.first + 1) + "," + std::to_string(ij.second + 1) + ")";
  };
  if (pick < zeros.size()) {
    b(zeros[pick].first, zeros[pick].second) = delta;
    label = "zero entry " + pos(zeros[pick]) + " made nonzero";
  } else if (pick < zeros.size() + related.size()) {
    const auto ij = related[pick - zeros.size()];
    Rational d = delta;
    if (!pi2 && ij == std::make_pair<std::size_t, std::size_t>(2, 2) && b(2, 2) + d == -b(2, 2)) d += 1;
    b(ij.first, ij.second) += d;
    label = "relation at " + pos(ij) + " broken";
  } else {
    const Polynomial& c = t.open_conditions()[pick - zeros.size() - related.size()];
    // Zero the condition through its highest-named variable, keeping the other relations.
    const std::string v = *c.variables().rbegin();
    const Rational coeff = c.coefficient_of(v, 1).constant_term();
    Polynomial rest = c - Polynomial::variable(v) * coeff;
    params[v] = -rest.evaluate<Rational>(params) / coeff;
    b = without_open_conditions(t).instantiate<Rational>(params);
    label = "nonvanishing condition " + c.to_string() + " made zero";
  }
  return b;
}

namespace {

QVector stratified_point(std::size_t n, Rng& rng, std::size_t k) {
  QVector x = random_vector(rng, n, 1000);
  switch (k % 4) {
    case 0: {  // random support pattern
      const auto mask = rng.uniform_int(1, (std::int64_t{1} << n) - 1);
      for (std::size_t i = 0; i < n; ++i)
        if (!(mask & (std::int64_t{1} << i))) x[i] = 0;
      break;
    }
    case 1:
      if (n == 5) x[3] = -x[0];
      break;
    case 2:
      if (n == 5) {
        x[0] = 0;
        x[3] = 0;
        x[4] = -x[1];
      }
      break;
    default: break;
  }
  return x;
}

}  // namespace

PatternReport verify_pattern(const Algebra& a, const LocAutPattern& p, std::size_t trials, std::uint64_t seed) {
  PatternReport r;
  Rng rng(seed);
  const std::size_t n = a.dim();
  for (std::size_t t = 0; t < trials; ++t) {
    const int sign = p.branches.size() > 1 && rng.coin() ? -1 : +1;
    const QMatrix b = random_pattern_member(p, rng, sign);
    for (std::size_t k = 0; k < trials; ++k) {
      const QVector x = stratified_point(n, rng, k);
      ++r.forward_checked;
      if (!locaut_feasible_at(a, b, x).feasible) {
        r.passed = false;
        r.failure = "pattern member infeasible at a probe point";
        r.counterexample = b;
        r.point = x;
        return r;
      }
    }
  }
  for (std::size_t t = 0; t < trials; ++t) {
    std::string label;
    const QMatrix b = random_single_violation(p, rng, label);
    ++r.reverse_checked;
    if (pattern_check(p, b).member) {
      r.passed = false;
      r.failure = "violation still matches the pattern (" + label + ")";
      r.counterexample = b;
      return r;
    }
    if (!find_witness(a, b, 1000, rng.next())) {
      r.passed = false;
      r.failure = "no refuting point found for violation: " + label;
      r.counterexample = b;
      return r;
    }
  }
  return r;
}

PatternReport pattern_group_closure(const LocAutPattern& p, std::size_t trials, std::uint64_t seed) {
  PatternReport r;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const int s1 = p.branches.size() > 1 && rng.coin() ? -1 : +1;
    const int s2 = p.branches.size() > 1 && rng.coin() ? -1 : +1;
    const QMatrix x = random_pattern_member(p, rng, s1), y = random_pattern_member(p, rng, s2);
    ++r.forward_checked;
    const PatternCheck prod = pattern_check(p, x * y);
    if (!prod.member || prod.branch != s1 * s2) {
      r.passed = false;
      r.failure = "product leaves the pattern or lands in the wrong branch";
      r.counterexample = x * y;
      return r;
    }
    const auto inv = inverse(x);
    const PatternCheck ic = inv ? pattern_check(p, *inv) : PatternCheck{};
    if (!ic.member || ic.branch != s1) {
      r.passed = false;
      r.failure = "inverse leaves the pattern";
      r.counterexample = x;
      return r;
    }
  }
  return r;
}

}  // namespace locsym
