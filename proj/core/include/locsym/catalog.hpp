#pragma once

#include "locsym/matrix_template.hpp"

#include <optional>
#include <string>

namespace locsym {

enum class TemplateKind { kDerivation, kLocalDerivation, kAutomorphism, kLocalAutomorphism };

/// The displayed matrix forms for pi2 / pi3. For kLocalAutomorphism on pi3,
/// `sign` selects the b33 = +b11^3 or b33 = -b11^3 branch; it is ignored elsewhere.
/// Returns nullopt for other algebras.
std::optional<MatrixTemplate> catalog_template(const std::string& algebra, TemplateKind kind, int sign = +1);

/// Same template, minus its open conditions (used to detect boundary matrices).
MatrixTemplate without_open_conditions(const MatrixTemplate& t);

/// Template with entry (i, j) (0-based) replaced by `entry`; used for negative tests.
MatrixTemplate with_entry(const MatrixTemplate& t, std::size_t i, std::size_t j, const std::string& entry);

std::string to_string(TemplateKind kind);

}  // namespace locsym
