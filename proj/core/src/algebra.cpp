#include "locsym/algebra.hpp"

#include <algorithm>

namespace locsym {

Algebra::Algebra(std::string name, std::size_t dim) : name_(std::move(name)), dim_(dim) {
  if (dim == 0) throw InputError("algebra dimension must be positive");
}

void Algebra::add_product(std::size_t i, std::size_t j, std::size_t k, const Rational& c) {
  if (i >= dim_ || j >= dim_ || k >= dim_) throw InputError("structure constant index out of range");
  auto [it, inserted] = table_.try_emplace({i, j}, QVector(dim_, Rational(0)));
  it->second[k] += c;
  if (std::all_of(it->second.begin(), it->second.end(), [](const Rational& q) { return q == 0; })) table_.erase(it);
}

QVector Algebra::product(std::size_t i, std::size_t j) const {
  auto it = table_.find({i, j});
  return it == table_.end() ? QVector(dim_, Rational(0)) : it->second;
}

const Rational& Algebra::constant(std::size_t i, std::size_t j, std::size_t k) const {
  static const Rational zero(0);
  auto it = table_.find({i, j});
  return it == table_.end() ? zero : it->second.at(k);
}

Algebra pi2() {
  Algebra a("pi2", 5);
  a.add_product(0, 0, 1, 1);
  a.add_product(0, 1, 2, 1);
  a.add_product(1, 0, 2, 1);
  a.add_product(0, 3, 4, 1);
  a.add_product(3, 0, 4, 1);
  a.add_product(3, 3, 4, 1);
  return a;
}

Algebra pi3() {
  Algebra a("pi3", 5);
  a.add_product(0, 0, 1, 1);
  a.add_product(0, 1, 2, 1);
  a.add_product(1, 0, 2, 1);
  a.add_product(0, 3, 4, 1);
  a.add_product(3, 3, 4, 1);
  return a;
}

Algebra zero_algebra(std::size_t n) { return Algebra("zero" + std::to_string(n), n); }

std::optional<Algebra> builtin_algebra(const std::string& name) {
  if (name == "pi2") return pi2();
  if (name == "pi3") return pi3();
  if (name.rfind("zero", 0) == 0 && name.size() > 4 &&
      std::all_of(name.begin() + 4, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const auto n = std::stoul(name.substr(4));
    if (n >= 1 && n <= 64) return zero_algebra(n);
  }
  return std::nullopt;
}

bool is_associative(const Algebra& a) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const QVector ij = a.product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        const QVector lhs = a.multiply(ij, basis_vector<Rational>(n, k));
        const QVector rhs = a.multiply(basis_vector<Rational>(n, i), a.product(j, k));
        if (lhs != rhs) return false;
      }
    }
  return true;
}

std::vector<std::size_t> PowerFiltration::dims() const {
  std::vector<std::size_t> d;
  for (const auto& s : subspaces) d.push_back(s.dim());
  return d;
}

PowerFiltration power_filtration(const Algebra& a) {
  const std::size_t n = a.dim();
  PowerFiltration f;
  f.subspaces.push_back(Subspace::full(n));
  for (std::size_t i = 1; i <= 2 * n; ++i) {
    std::vector<QVector> gens;
    for (std::size_t k = 1; k <= i; ++k) {
      const Subspace& left = f.subspaces[k - 1];
      const Subspace& right = f.subspaces[i - k];
      for (const auto& x : left.basis())
        for (const auto& y : right.basis()) gens.push_back(a.multiply(x, y));
    }
    Subspace next = Subspace::span(n, gens);
    f.subspaces.push_back(next);
    if (next.dim() == 0) {
      f.nilpotent = true;
      f.nilindex = f.subspaces.size();
      return f;
    }
    if (next == f.subspaces[f.subspaces.size() - 2]) return f;  // stabilised above zero
  }
  return f;
}

QMatrix left_mult_operator(const Algebra& a, const QVector& x) {
  const std::size_t n = a.dim();
  QMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const QVector col = a.multiply(x, basis_vector<Rational>(n, j));
    for (std::size_t i = 0; i < n; ++i) l(i, j) = col[i];
  }
  return l;
}

std::vector<std::size_t> nilpotent_jordan_sizes(const QMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> ranks{n};
  QMatrix p = QMatrix::identity(n);
  while (ranks.back() > 0) {
    if (ranks.size() > n + 1) throw InputError("matrix is not nilpotent");
    p = p * m;
    const std::size_t r = rank(p);
    if (r == ranks.back()) throw InputError("matrix is not nilpotent");
    ranks.push_back(r);
  }
  // blocks of size >= k: ranks[k-1] - ranks[k]
  std::vector<std::size_t> sizes;
  for (std::size_t k = ranks.size() - 1; k >= 1; --k) {
    const std::size_t at_least_k = ranks[k - 1] - ranks[k];
    const std::size_t at_least_k1 = k + 1 < ranks.size() ? ranks[k] - ranks[k + 1] : 0;
    for (std::size_t c = 0; c < at_least_k - at_least_k1; ++c) sizes.push_back(k);
  }
  return sizes;
}

std::vector<std::size_t> characteristic_sequence(const Algebra& a, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InputError("characteristic_sequence needs trials >= 1");
  const PowerFiltration f = power_filtration(a);
  if (!f.nilpotent) throw InputError("characteristic sequence requires a nilpotent algebra");
  const Subspace& square = f.subspaces.at(1);
  const std::size_t n = a.dim();
  std::vector<std::size_t> best;
  auto consider = [&](const QVector& x) {
    auto s = nilpotent_jordan_sizes(left_mult_operator(a, x));
    if (best.empty() || std::lexicographical_compare(best.begin(), best.end(), s.begin(), s.end())) best = std::move(s);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const QVector e = basis_vector<Rational>(n, i);
    if (!square.contains(e)) consider(e);
  }
  if (square.dim() == n) return {};
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    QVector x;
    do x = random_vector(rng, n);
    while (square.contains(x));
    consider(x);
  }
  return best;
}

}  // namespace locsym
