#pragma once

#include "locsym/algebra.hpp"
#include "locsym/matrix_template.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace locsym {

/// Name of matrix entry (i, j) (0-based) with prefix, e.g. entry_name("b", 3, 0, 5) == "b41".
std::string entry_name(const std::string& prefix, std::size_t i, std::size_t j, std::size_t n);

/// The n^3 x n^2 Leibniz system; unknown k*n+l is entry (k, l) of D.
QMatrix leibniz_system(const Algebra& a);

bool is_derivation(const Algebra& a, const QMatrix& d);

struct DerivationSpace {
  std::string algebra;
  std::size_t n = 0;
  std::vector<QMatrix> basis;        // basis[p] has a 1 at the position of params[p]
  std::vector<std::string> params;   // free entries, lowest flat index first
  Subspace span;                     // in flattened n*n coordinates

  std::size_t dim() const { return basis.size(); }
  bool contains(const QMatrix& m) const { return span.contains(m.flat()); }
  QMatrix combination(const QVector& coeffs) const;
};

/// Basis of Der(A). Free parameters are the lowest-index entries, so for pi2 and
/// pi3 they are exactly the a_ij of the displayed derivation matrices.
DerivationSpace derivation_algebra(const Algebra& a);

inline QMatrix bracket(const QMatrix& x, const QMatrix& y) { return commutator(x, y); }

struct BracketReport {
  bool closed = true;
  std::size_t pairs_checked = 0;
  std::optional<QMatrix> x, y, bracket;  // first counterexample
};

/// Checks every basis pair, then `trials` pairs of random combinations, for
/// bracket membership in span(S).
BracketReport bracket_closed(const std::vector<QMatrix>& s, std::size_t trials, std::uint64_t seed);

/// Double inclusion of the span of a linear template and span(S).
bool template_space_equals(const MatrixTemplate& t, const Subspace& s);
inline bool template_space_equals(const MatrixTemplate& t, const DerivationSpace& s) {
  return template_space_equals(t, s.span);
}

std::vector<QVector> flatten(const std::vector<QMatrix>& ms);

}  // namespace locsym
