#pragma once

#include "locsym/linalg.hpp"
#include "locsym/polynomial.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace locsym {

/// sum_u coeffs[u] * unknown_u = rhs, coefficients polynomial in the probes,
/// rhs polynomial in the probes and linear homogeneous in the params.
struct ParametricEquation {
  std::vector<Polynomial> coeffs;
  Polynomial rhs;
};

struct ParametricSystem {
  std::vector<std::string> unknowns;
  std::vector<std::string> probes;
  std::vector<std::string> params;
  std::vector<ParametricEquation> equations;

  void validate() const;
};

/// One leaf of the case tree: a region of probe space and the param
/// constraints needed for solvability everywhere on it.
struct StratumCase {
  std::vector<Polynomial> equalities;    // each = 0, in the coordinates free when it was imposed
  std::vector<Polynomial> inequations;   // each != 0, likewise
  std::vector<std::pair<std::string, Polynomial>> substitutions;  // probe := expression in free probes
  std::vector<Polynomial> derived_constraints;  // independent linear forms in params, each = 0
  QVector sample;
  std::size_t depth = 0;
  bool verified = false;

  std::string signature() const;
  bool contains(const QVector& nu, const std::vector<std::string>& probes) const;
};

struct CaseTree {
  ParametricSystem system;
  std::vector<StratumCase> leaves;         // sorted by signature
  std::vector<Polynomial> aggregated_constraints;
  QMatrix constraint_rows;                 // rows over params, reduced
  bool verified = false;

  /// The params satisfying every aggregated constraint.
  Subspace solution_space() const;
  /// Leaf whose conditions hold at nu; throws if none or several do.
  const StratumCase& locate(const QVector& nu) const;
};

inline constexpr std::size_t kMaxCaseDepth = 12;

/// Eliminates with branching on pivot factors. Each leaf is sampled and checked
/// by an exact solve with params drawn from the aggregated solution space.
/// Throws UnsupportedError when a pivot factor is not linear in any probe or
/// the tree grows deeper than kMaxCaseDepth.
CaseTree solve_parametric(const ParametricSystem& sys, std::uint64_t seed = 7);

/// A rational probe point satisfying the stratum's conditions.
QVector sample_stratum(const StratumCase& c, const std::vector<std::string>& probes, std::uint64_t seed);

struct PointSystem {
  QMatrix lhs;            // equations x unknowns
  QMatrix rhs_in_params;  // equations x params
};

PointSystem specialize(const ParametricSystem& sys, const QVector& nu);
bool solvable_at(const ParametricSystem& sys, const QVector& nu, const QVector& params);
/// Rows over params whose vanishing is equivalent to solvability at nu.
QMatrix pointwise_constraint_rows(const ParametricSystem& sys, const QVector& nu);

/// Linear forms sum_j row[j] * params[j]; rows in reduced form with pivots on
/// the last params, so each form reads "last param = combination of earlier ones".
std::vector<Polynomial> constraint_forms(const std::vector<QVector>& rows, const std::vector<std::string>& params);
QVector linear_form_row(const Polynomial& form, const std::vector<std::string>& params);

}  // namespace locsym
