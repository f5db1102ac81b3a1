#pragma once

#include "locsym/algebra.hpp"
#include "locsym/matrix_template.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace locsym {

/// Invertible and Phi(e_i e_j) = Phi(e_i) Phi(e_j) on all basis pairs.
bool is_automorphism(const Algebra& a, const QMatrix& phi);

/// max |Phi(e_i e_j) - Phi(e_i) Phi(e_j)| over basis pairs.
double multiplicativity_residual(const Algebra& a, const CMatrix& phi);

struct AutomorphismFamily {
  Algebra algebra;
  MatrixTemplate family;
};

/// The displayed families for pi2 and pi3; nullopt otherwise.
std::optional<AutomorphismFamily> automorphism_family(const std::string& algebra);

/// Throws InputError when an open condition vanishes at `params`.
QMatrix instantiate(const MatrixTemplate& t, const Assignment& params);
inline QMatrix instantiate(const AutomorphismFamily& f, const Assignment& params) { return instantiate(f.family, params); }

/// Random parameters with every open condition nonzero.
Assignment random_valid_params(const MatrixTemplate& t, Rng& rng, std::int64_t bound = 1000);

struct FamilyReport {
  bool passed = true;
  std::size_t forward_checked = 0;
  std::size_t reverse_checked = 0;
  std::string failure;                 // empty when passed
  std::optional<QMatrix> counterexample;
};

/// Forward: `trials` random members are automorphisms. Reverse: each member
/// template-matches, and for all n^2 single-entry perturbations the perturbed
/// matrix is an automorphism exactly when it still matches the family.
FamilyReport verify_family(const AutomorphismFamily& f, std::size_t trials, std::uint64_t seed);

/// Products and inverses of random members match the family and are automorphisms.
FamilyReport family_group_closure(const AutomorphismFamily& f, std::size_t trials, std::uint64_t seed);

/// Phi(A^k) = A^k for every power of the algebra.
bool preserves_filtration(const Algebra& a, const QMatrix& phi);

}  // namespace locsym
