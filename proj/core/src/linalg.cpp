#include "locsym/linalg.hpp"

#include <algorithm>
#include <utility>

namespace locsym {
namespace {

using ZRow = std::vector<mpz_class>;

// Scale a rational row by the lcm of its denominators.
ZRow integer_row(const QVector& row) {
  mpz_class l = 1;
  for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  ZRow out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out[j] = row[j].get_num() * (l / row[j].get_den());
  return out;
}

void remove_content(ZRow& row) {
  mpz_class g = 0;
  for (const auto& x : row) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

std::vector<ZRow> integer_rows(const QMatrix& m) {
  std::vector<ZRow> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(integer_row(m.row(i)));
  return rows;
}

}  // namespace

std::size_t rank(const QMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t rows = m.rows(), cols = m.cols();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

Rref rref(const QMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    remove_content(a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpz_class piv = a[r][c];
      const mpz_class f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = piv * a[i][j] - f * a[r][j];
      remove_content(a[i]);
    }
    pivots.push_back(c);
    ++r;
  }
  Rref out{QMatrix(r, cols), pivots};
  for (std::size_t i = 0; i < r; ++i) {
    const mpz_class& piv = a[i][pivots[i]];
    for (std::size_t j = 0; j < cols; ++j) {
      Rational q(a[i][j], piv);
      q.canonicalize();
      out.reduced(i, j) = q;
    }
  }
  return out;
}

std::vector<QVector> nullspace_basis(const QMatrix& m, FreeVariables order) {
  const std::size_t cols = m.cols();
  QMatrix work = m;
  if (order == FreeVariables::kLeading) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) work(i, j) = m(i, cols - 1 - j);
  }
  const Rref red = rref(work);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : red.pivots) is_pivot[p] = true;

  std::vector<QVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) v[red.pivots[i]] = -red.reduced(i, f);
    basis.push_back(std::move(v));
  }
  if (order == FreeVariables::kLeading) {
    for (auto& v : basis) std::reverse(v.begin(), v.end());
    std::reverse(basis.begin(), basis.end());
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& rhs) {
  if (rhs.size() != m.rows()) throw InputError("solve: right-hand side length mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  const Rref red = rref(aug);
  QVector x(m.cols(), Rational(0));
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    if (red.pivots[i] == m.cols()) return std::nullopt;
    x[red.pivots[i]] = red.reduced(i, m.cols());
  }
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (!m.square()) throw InputError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const Rref red = rref(aug);
  if (red.pivots.size() < n || red.pivots[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red.reduced(i, n + j);
  return inv;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<QVector>& vectors) {
  Subspace s(ambient);
  if (vectors.empty()) return s;
  QMatrix m(vectors.size(), ambient);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient) throw InputError("span: vector length differs from ambient dimension");
    for (std::size_t j = 0; j < ambient; ++j) m(i, j) = vectors[i][j];
  }
  const Rref red = rref(m);
  s.pivots_ = red.pivots;
  for (std::size_t i = 0; i < red.reduced.rows(); ++i) s.basis_.push_back(red.reduced.row(i));
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  std::vector<QVector> e;
  for (std::size_t i = 0; i < ambient; ++i) e.push_back(basis_vector<Rational>(ambient, i));
  return span(ambient, e);
}

QVector Subspace::reduce(const QVector& v) const {
  if (v.size() != ambient_) throw InputError("subspace: vector length mismatch");
  QVector r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Rational c = r[pivots_[i]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j) r[j] -= c * basis_[i][j];
  }
  return r;
}

bool Subspace::contains(const QVector& v) const {
  for (const auto& x : reduce(v))
    if (x != 0) return false;
  return true;
}

std::optional<QVector> Subspace::coordinates(const QVector& v) const {
  if (!contains(v)) return std::nullopt;
  QVector c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Subspace Subspace::annihilator() const {
  if (basis_.empty()) return full(ambient_);
  QMatrix m(basis_.size(), ambient_);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) m(i, j) = basis_[i][j];
  return span(ambient_, nullspace_basis(m));
}

bool Subspace::is_subspace_of(const Subspace& other) const {
  return std::all_of(basis_.begin(), basis_.end(), [&](const QVector& v) { return other.contains(v); });
}

Subspace intersect(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw InputError("intersect: ambient dimensions differ");
  const Subspace as = s.annihilator(), at = t.annihilator();
  std::vector<QVector> rows = as.basis();
  rows.insert(rows.end(), at.basis().begin(), at.basis().end());
  if (rows.empty()) return Subspace::full(s.ambient_dim());
  return nullspace(QMatrix::from_rows(rows));
}

Subspace sum(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw InputError("sum: ambient dimensions differ");
  std::vector<QVector> all = s.basis();
  all.insert(all.end(), t.basis().begin(), t.basis().end());
  return Subspace::span(s.ambient_dim(), all);
}

Subspace nullspace(const QMatrix& m) { return Subspace::span(m.cols(), nullspace_basis(m)); }

namespace {

// In-place LU with partial pivoting; returns false if a pivot is below tol * scale.
bool lu_decompose(CMatrix& a, std::vector<std::size_t>& perm, double tol) {
  const std::size_t n = a.rows();
  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  const double scale = std::max(1e-300, max_abs(a));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) <= tol * scale) return false;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      std::swap(perm[p], perm[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      a(i, k) /= a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= a(i, k) * a(k, j);
    }
  }
  return true;
}

CVector lu_solve(const CMatrix& lu, const std::vector<std::size_t>& perm, const CVector& b) {
  const std::size_t n = lu.rows();
  CVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = b[perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * y[j];
    y[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex s = y[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * y[j];
    y[i] = s / lu(i, i);
  }
  return y;
}

}  // namespace

std::optional<CMatrix> inverse(const CMatrix& m, double singular_tol) {
  if (!m.square()) throw InputError("inverse of a non-square matrix");
  CMatrix lu = m;
  std::vector<std::size_t> perm;
  if (!lu_decompose(lu, perm, singular_tol)) return std::nullopt;
  const std::size_t n = m.rows();
  CMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const CVector col = lu_solve(lu, perm, basis_vector<Complex>(n, j));
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

std::optional<CVector> solve(const CMatrix& m, const CVector& rhs, double singular_tol) {
  if (!m.square() || rhs.size() != m.rows()) throw InputError("complex solve: shape mismatch");
  CMatrix lu = m;
  std::vector<std::size_t> perm;
  if (!lu_decompose(lu, perm, singular_tol)) return std::nullopt;
  return lu_solve(lu, perm, rhs);
}

}  // namespace locsym
