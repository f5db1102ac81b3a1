#include "locsym/pattern_inference.hpp"

#include "locsym/linalg.hpp"

#include <algorithm>
#include <set>

namespace locsym {

std::string to_string(const Position& p) { return "(" + std::to_string(p.i + 1) + "," + std::to_string(p.j + 1) + ")"; }

MatrixTemplate derivation_template(const DerivationSpace& der) {
  MatrixTemplate t("der_" + der.algebra, der.n, der.params);
  for (std::size_t r = 0; r < der.n; ++r)
    for (std::size_t c = 0; c < der.n; ++c) {
      Polynomial e;
      for (std::size_t p = 0; p < der.basis.size(); ++p)
        if (der.basis[p](r, c) != 0) e += Polynomial::variable(der.params[p]) * Polynomial(der.basis[p](r, c));
      t.set_entry(r, c, e);
    }
  return t;
}

namespace {

// A nonzero entry containing a parameter that occurs in no other entry.
bool has_fresh_parameter(const MatrixTemplate& t, std::size_t i, std::size_t j) {
  const Polynomial& e = t.entry(i, j);
  if (e.is_zero()) return false;
  for (const auto& v : e.variables())
    if (t.occurrences(v) == 1) return true;
  return false;
}

std::pair<Position, Position> ordered(Position a, Position b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

ShapePrediction infer_shape(const MatrixTemplate& t) {
  ShapePrediction s;
  const std::size_t n = t.dim();
  s.dim = n;
  auto zero = [&](std::size_t i, std::size_t j) { return t.entry(i, j).is_zero(); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (zero(i, j)) s.zero_set.push_back({i, j});

  std::set<std::pair<Position, Position>> equal, independent;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = j + 1; m < n; ++m) {
          if (zero(i, j) || zero(k, m)) continue;
          const bool cross_zero = zero(i, m) && zero(k, j);
          if (cross_zero && t.entry(i, j) == t.entry(k, m)) {
            equal.insert({{i, j}, {k, m}});
            s.equal_pairs.push_back({{i, j}, {k, m}, 1});
          } else if (has_fresh_parameter(t, i, m) || has_fresh_parameter(t, k, j)) {
            if (independent.insert(ordered({i, j}, {k, m})).second)
              s.independent_pairs.push_back({{i, j}, {k, m}, t.entry(i, j) == t.entry(k, m) ? 2 : 3});
          }
        }

  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (!has_fresh_parameter(t, i + 2, i)) continue;
    const std::vector<Position> chain{{i + 1, i}, {i + 2, i + 1}, {i, i}, {i + 1, i + 1}, {i + 2, i + 2}};
    if (std::any_of(chain.begin(), chain.end(), [&](const Position& p) { return zero(p.i, p.j); })) continue;
    for (std::size_t x = 0; x < chain.size(); ++x)
      for (std::size_t y = x + 1; y < chain.size(); ++y)
        if (!equal.count(ordered(chain[x], chain[y])) && independent.insert(ordered(chain[x], chain[y])).second)
          s.independent_pairs.push_back({ordered(chain[x], chain[y]).first, ordered(chain[x], chain[y]).second, 4});
  }

  const std::size_t positions = n * n;
  const std::size_t zeros = s.zero_set.size();
  // pairs touching a zero position are settled by rule 0
  const std::size_t settled = zeros * (positions - zeros) + zeros * (zeros - 1) / 2;
  s.undetermined = positions * (positions - 1) / 2 - settled - equal.size() - independent.size();
  return s;
}

ValidationReport validate_prediction(const ShapePrediction& p, const LocalDerivationSpace& l) {
  ValidationReport r;
  if (p.dim != l.n) throw InputError("validate_prediction: dimension mismatch");
  auto coordinate = [&](const Position& q) {
    QVector values;
    for (const auto& b : l.basis) values.push_back(b(q.i, q.j));
    return values;
  };
  auto vanishes = [](const QVector& v) { return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }); };
  auto difference = [&](const PositionPair& pp) {
    QVector d = coordinate(pp.a);
    const QVector e = coordinate(pp.b);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] -= e[k];
    return d;
  };
  auto fail = [&](const std::string& msg) {
    r.passed = false;
    r.violations.push_back(msg);
  };
  for (const auto& q : p.zero_set)
    if (!vanishes(coordinate(q))) fail("entry " + to_string(q) + " predicted zero but varies on the space");
  for (const auto& pp : p.equal_pairs)
    if (!vanishes(difference(pp)))
      fail("entries " + to_string(pp.a) + " and " + to_string(pp.b) + " predicted equal but differ on the space");
  for (const auto& pp : p.independent_pairs) {
    if (vanishes(difference(pp))) {
      fail("entries " + to_string(pp.a) + " and " + to_string(pp.b) + " predicted distinct but coincide on the space");
      continue;
    }
    QMatrix two(2, l.dim());
    const QVector a = coordinate(pp.a), b = coordinate(pp.b);
    for (std::size_t k = 0; k < l.dim(); ++k) {
      two(0, k) = a[k];
      two(1, k) = b[k];
    }
    if (rank(two) == 2) ++r.strongly_independent;
    else r.proportional.push_back(to_string(pp.a) + " ~ " + to_string(pp.b));
  }
  return r;
}

}  // namespace locsym
