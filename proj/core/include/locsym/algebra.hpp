#pragma once

#include "locsym/linalg.hpp"
#include "locsym/matrix.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

namespace locsym {

/// Finite-dimensional algebra given by structure constants e_i e_j = sum_k c_ij^k e_k.
/// Indices are 0-based here; file formats and reports use 1-based indices.
class Algebra {
 public:
  Algebra() = default;
  Algebra(std::string name, std::size_t dim);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }

  /// Adds c * e_k to the product e_i e_j.
  void add_product(std::size_t i, std::size_t j, std::size_t k, const Rational& c);
  /// e_i e_j as a coordinate vector (zero when the pair is absent).
  QVector product(std::size_t i, std::size_t j) const;
  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const;
  /// Nonzero (i, j) pairs with their product vectors.
  const std::map<std::pair<std::size_t, std::size_t>, QVector>& table() const { return table_; }

  template <class T>
  Vec<T> multiply(const Vec<T>& x, const Vec<T>& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw InputError("multiply: vector length differs from algebra dimension");
    Vec<T> out(dim_, T(0));
    for (const auto& [ij, v] : table_) {
      const T s = x[ij.first] * y[ij.second];
      if (s == T(0)) continue;
      for (std::size_t k = 0; k < dim_; ++k)
        if (v[k] != 0) out[k] += s * from_rational_scalar<T>(v[k]);
    }
    return out;
  }

 private:
  template <class T>
  static T from_rational_scalar(const Rational& q) {
    if constexpr (std::is_same_v<T, Rational>) return q;
    else return T(q.get_d());
  }

  std::string name_;
  std::size_t dim_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, QVector> table_;
};

Algebra pi2();
Algebra pi3();
Algebra zero_algebra(std::size_t n);
/// "pi2", "pi3" or "zeroN" (N >= 1); nullopt otherwise.
std::optional<Algebra> builtin_algebra(const std::string& name);

bool is_associative(const Algebra& a);

struct PowerFiltration {
  std::vector<Subspace> subspaces;  // A^1, A^2, ... ending with the zero space when nilpotent
  bool nilpotent = false;
  std::size_t nilindex = 0;         // smallest i with A^i = 0; 0 when not nilpotent

  std::vector<std::size_t> dims() const;
};

PowerFiltration power_filtration(const Algebra& a);

/// Matrix of z -> x z.
QMatrix left_mult_operator(const Algebra& a, const QVector& x);

/// Jordan block sizes (descending) of a nilpotent matrix, from ranks of its powers.
std::vector<std::size_t> nilpotent_jordan_sizes(const QMatrix& m);

/// Lexicographic maximum of the Jordan sizes of L_x over the basis vectors
/// outside A^2 and `trials` random rationals outside A^2. A lower bound for the
/// true maximum.
std::vector<std::size_t> characteristic_sequence(const Algebra& a, std::size_t trials, std::uint64_t seed);

}  // namespace locsym
