#pragma once

#include "locsym/linalg.hpp"
#include "locsym/matrix.hpp"
#include "locsym/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace locsym {

/// Square matrix whose entries are polynomials in named parameters, together
/// with polynomials that must not vanish.
class MatrixTemplate {
 public:
  MatrixTemplate() = default;
  MatrixTemplate(std::string name, std::size_t dim, std::vector<std::string> params);

  /// Rows of polynomial strings; every variable must be a declared parameter.
  static MatrixTemplate from_strings(std::string name, std::vector<std::string> params,
                                     const std::vector<std::vector<std::string>>& rows,
                                     const std::vector<std::string>& nonzero = {});

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& params() const { return params_; }
  const std::vector<Polynomial>& open_conditions() const { return nonzero_; }

  const Polynomial& entry(std::size_t i, std::size_t j) const { return entries_.at(i * dim_ + j); }
  void set_entry(std::size_t i, std::size_t j, Polynomial p);
  void add_open_condition(Polynomial p);

  /// Entries of degree <= 1 without constants, and no open conditions.
  bool is_linear() const;
  /// The span swept by a linear template, as a subspace of flattened n x n matrices.
  Subspace linear_span() const;  // throws UnsupportedError when !is_linear()
  std::vector<std::pair<std::size_t, std::size_t>> zero_positions() const;
  /// Number of entries in which `param` occurs.
  std::size_t occurrences(const std::string& param) const;

  template <class T>
  DenseMatrix<T> instantiate(const std::map<std::string, T, NaturalLess>& values) const {
    DenseMatrix<T> m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(i, j) = entry(i, j).template evaluate<T>(values);
    return m;
  }

 private:
  std::string name_;
  std::size_t dim_ = 0;
  std::vector<std::string> params_;
  std::vector<Polynomial> entries_;
  std::vector<Polynomial> nonzero_;
};

template <class T>
using ParamValues = std::map<std::string, T, NaturalLess>;

namespace detail {

template <class T>
bool scalar_equal(const T& a, const T& b, double tol) {
  if constexpr (std::is_same_v<T, Rational>) {
    (void)tol;
    return a == b;
  } else {
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  }
}

template <class T>
bool scalar_zero(const T& a, double tol) {
  if constexpr (std::is_same_v<T, Rational>) {
    (void)tol;
    return a == 0;
  } else {
    return std::abs(a) <= tol;
  }
}

}  // namespace detail

/// Parameter values with T(values) == m entrywise and every open condition
/// nonzero, or nullopt. Entries are consumed in a triangular order: an entry is
/// either fully determined by known parameters (and checked) or introduces one
/// unknown occurring linearly with a nonzero coefficient (and solved). The scan
/// restarts from (1,1) after every solved parameter. Parameters that never need
/// a value are set to 0. Powers are checked by exact equality, never by roots.
/// Throws UnsupportedError when no triangular order exists. `tol` is used only
/// for floating scalars.
template <class T>
std::optional<ParamValues<T>> template_match(const MatrixTemplate& t, const DenseMatrix<T>& m, double tol = 1e-9) {
  const std::size_t n = t.dim();
  if (m.rows() != n || m.cols() != n) throw InputError("template_match: dimension mismatch");
  ParamValues<T> known;
  std::vector<bool> done(n * n, false);
  auto lookup = [&](const std::string& v) -> T { return known.at(v); };

  for (;;) {
    bool progress = false;
    for (std::size_t idx = 0; idx < n * n && !progress; ++idx) {
      if (done[idx]) continue;
      const Polynomial& e = t.entry(idx / n, idx % n);
      const T& target = m(idx / n, idx % n);
      std::vector<std::string> unknown;
      for (const auto& v : e.variables())
        if (!known.count(v)) unknown.push_back(v);
      if (unknown.empty()) {
        if (!detail::scalar_equal(e.template evaluate<T>(lookup), target, tol)) return std::nullopt;
        done[idx] = true;
        progress = true;
      } else if (unknown.size() == 1 && e.degree_in(unknown[0]) == 1) {
        const T a = e.coefficient_of(unknown[0], 1).template evaluate<T>(lookup);
        if (detail::scalar_zero(a, tol)) continue;
        const T b = e.coefficient_of(unknown[0], 0).template evaluate<T>(lookup);
        known[unknown[0]] = (target - b) / a;
        done[idx] = true;
        progress = true;
      }
    }
    if (progress) continue;
    if (std::all_of(done.begin(), done.end(), [](bool d) { return d; })) break;
    // Stuck: an open condition already forced to zero settles the answer.
    for (const auto& c : t.open_conditions()) {
      const auto vars = c.variables();
      if (std::all_of(vars.begin(), vars.end(), [&](const std::string& v) { return known.count(v) > 0; }) &&
          detail::scalar_zero(c.template evaluate<T>(lookup), tol))
        return std::nullopt;
    }
    throw UnsupportedError("template " + t.name() + " admits no triangular solve order");
  }
  for (const auto& p : t.params())
    if (!known.count(p)) known[p] = T(0);
  for (const auto& c : t.open_conditions())
    if (detail::scalar_zero(c.template evaluate<T>(lookup), tol)) return std::nullopt;
  return known;
}

}  // namespace locsym
