#include "locsym/derivation.hpp"

namespace locsym {

std::string entry_name(const std::string& prefix, std::size_t i, std::size_t j, std::size_t n) {
  if (n <= 9) return prefix + std::to_string(i + 1) + std::to_string(j + 1);
  return prefix + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

QMatrix leibniz_system(const Algebra& a) {
  const std::size_t n = a.dim();
  QMatrix sys(n * n * n, n * n);
  // D(e_i e_j) - D(e_i) e_j - e_i D(e_j), component k
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t row = (i * n + j) * n + k;
        for (std::size_t m = 0; m < n; ++m) sys(row, k * n + m) += a.constant(i, j, m);
        for (std::size_t l = 0; l < n; ++l) {
          sys(row, l * n + i) -= a.constant(l, j, k);
          sys(row, l * n + j) -= a.constant(i, l, k);
        }
      }
  return sys;
}

bool is_derivation(const Algebra& a, const QMatrix& d) {
  const std::size_t n = a.dim();
  if (d.rows() != n || d.cols() != n) throw InputError("is_derivation: operator dimension differs from algebra");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const QVector di = d.col(i), dj = d.col(j);
      QVector rhs = a.multiply(di, basis_vector<Rational>(n, j));
      const QVector right = a.multiply(basis_vector<Rational>(n, i), dj);
      for (std::size_t k = 0; k < n; ++k) rhs[k] += right[k];
      if (d * a.product(i, j) != rhs) return false;
    }
  return true;
}

QMatrix DerivationSpace::combination(const QVector& coeffs) const {
  if (coeffs.size() != basis.size()) throw InputError("combination: wrong number of coefficients");
  QMatrix m(n, n);
  for (std::size_t p = 0; p < basis.size(); ++p)
    if (coeffs[p] != 0) m += basis[p] * coeffs[p];
  return m;
}

DerivationSpace derivation_algebra(const Algebra& a) {
  const std::size_t n = a.dim();
  DerivationSpace s;
  s.algebra = a.name();
  s.n = n;
  const auto vecs = nullspace_basis(leibniz_system(a), FreeVariables::kLeading);
  for (const auto& v : vecs) {
    s.basis.push_back(QMatrix::from_flat(n, v));
    std::size_t free = 0;
    while (v[free] == 0) ++free;  // entries sit at the free slot and at later pivots
    s.params.push_back(entry_name("a", free / n, free % n, n));
  }
  s.span = Subspace::span(n * n, vecs);
  return s;
}

std::vector<QVector> flatten(const std::vector<QMatrix>& ms) {
  std::vector<QVector> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(m.flat());
  return out;
}

BracketReport bracket_closed(const std::vector<QMatrix>& s, std::size_t trials, std::uint64_t seed) {
  BracketReport r;
  if (s.empty()) return r;
  const std::size_t n = s.front().rows();
  const Subspace span = Subspace::span(n * n, flatten(s));
  if (span.dim() != s.size()) throw InputError("bracket_closed: operators are not independent");
  auto check = [&](const QMatrix& x, const QMatrix& y) {
    ++r.pairs_checked;
    QMatrix b = bracket(x, y);
    if (span.contains(b.flat())) return true;
    r.closed = false;
    r.x = x;
    r.y = y;
    r.bracket = std::move(b);
    return false;
  };
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!check(s[i], s[j])) return r;
  Rng rng(seed);
  auto combo = [&] {
    QMatrix m(n, n);
    for (const auto& b : s) m += b * rng.rational();
    return m;
  };
  for (std::size_t t = 0; t < trials; ++t) {
    const QMatrix x = combo(), y = combo();
    if (!check(x, y)) return r;
  }
  return r;
}

bool template_space_equals(const MatrixTemplate& t, const Subspace& s) {
  const Subspace ts = t.linear_span();
  return ts.is_subspace_of(s) && s.is_subspace_of(ts);
}

}  // namespace locsym
