#pragma once

#include "locsym/derivation.hpp"
#include "locsym/parametric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace locsym {

/// The probe names nu1..nun and operator entry names b11..bnn.
std::vector<std::string> probe_names(std::size_t n);
std::vector<std::string> operator_entry_names(std::size_t n);

/// Coefficients c with (sum c_p D_p)(x) = nabla(x), or nullopt.
std::optional<QVector> pointwise_membership(const DerivationSpace& der, const QMatrix& nabla, const QVector& x);

/// V_x = {D x : D in Der} computed once, for checking many operators at one point.
class PointwiseChecker {
 public:
  PointwiseChecker(const DerivationSpace& der, const QVector& x);
  bool admits(const QMatrix& nabla) const;

 private:
  QVector x_;
  Subspace image_;
};

/// The system A_nu nu = B nu in the derivation parameters, one equation per coordinate.
ParametricSystem localization_system(const DerivationSpace& der);

enum class LocalMode { kExact, kProbabilistic };

struct LocalDerivationSpace {
  std::string algebra;
  std::size_t n = 0;
  std::vector<QMatrix> basis;
  Subspace span;
  LocalMode provenance = LocalMode::kExact;
  std::string warning;          // set when exact mode fell back
  std::optional<CaseTree> tree; // present in exact mode

  std::size_t dim() const { return basis.size(); }
  bool contains(const QMatrix& m) const { return span.contains(m.flat()); }
};

/// Structured probe points: one random point for each of the 2^n - 1 supports,
/// then the leaf samples of `tree` if given.
std::vector<QVector> structured_probe_points(std::size_t n, Rng& rng, const CaseTree* tree = nullptr);

LocalDerivationSpace local_derivation_space(const Algebra& a, const DerivationSpace& der, LocalMode mode,
                                            std::uint64_t seed, std::size_t verify_points = 10000);

struct PointwiseReport {
  bool passed = true;
  std::size_t points = 0;
  std::optional<QVector> failing_point;
};

/// Checks each operator at structured probes, the two distinguished strata of
/// pi2/pi3-sized problems and `random_points` random points.
PointwiseReport verify_pointwise(const DerivationSpace& der, const std::vector<QMatrix>& ops, std::size_t random_points,
                                 std::uint64_t seed, const CaseTree* tree = nullptr);

/// An element of LocDer outside Der: the last LocDer basis element not in Der.
std::optional<QMatrix> strict_inclusion_witness(const DerivationSpace& der, const LocalDerivationSpace& loc);

/// Random points on the probe strata nu1 + nu4 = 0 and nu2 + nu5 = 0 (n = 5 only).
std::vector<QVector> distinguished_stratum_points(std::size_t n, Rng& rng, std::size_t per_stratum);

}  // namespace locsym
