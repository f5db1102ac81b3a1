#pragma once

#include "locsym/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace locsym {

/// Exact rank by fraction-free (Bareiss) elimination on an integer-scaled copy.
std::size_t rank(const QMatrix& m);

struct Rref {
  QMatrix reduced;                  // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form. Rows are eliminated fraction-free over Z with
/// content removal after each step; pivots are normalised to 1 at the end.
Rref rref(const QMatrix& m);

/// Which variables become the free parameters of a nullspace basis.
enum class FreeVariables {
  kTrailing,  // usual RREF: pivots as far left as possible
  kLeading,   // pivots as far right as possible, free variables lead
};

/// Basis of {v : Mv = 0}; one vector per free variable with a 1 in that slot.
std::vector<QVector> nullspace_basis(const QMatrix& m, FreeVariables order = FreeVariables::kTrailing);

std::optional<QVector> solve(const QMatrix& m, const QVector& rhs);

std::optional<QMatrix> inverse(const QMatrix& m);

/// Subspace of Q^n stored by its canonical RREF basis, so equality of
/// subspaces is equality of representatives.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<QVector>& vectors);
  static Subspace full(std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<QVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const QVector& v) const;
  /// Coordinates of v in the canonical basis, or nullopt if v is outside.
  std::optional<QVector> coordinates(const QVector& v) const;
  /// v minus its component along the canonical basis (zero iff contained).
  QVector reduce(const QVector& v) const;
  /// Basis of the annihilator {w : <w, s> = 0 for all s in S}.
  Subspace annihilator() const;
  bool is_subspace_of(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<QVector> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace intersect(const Subspace& s, const Subspace& t);
Subspace sum(const Subspace& s, const Subspace& t);
Subspace nullspace(const QMatrix& m);

// Complex-float helpers (LU with partial pivoting).
std::optional<CMatrix> inverse(const CMatrix& m, double singular_tol = 1e-14);
std::optional<CVector> solve(const CMatrix& m, const CVector& rhs, double singular_tol = 1e-14);

}  // namespace locsym
