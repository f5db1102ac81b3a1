#pragma once

#include "locsym/local_automorphism.hpp"

#include <cstdint>
#include <string>

namespace locsym {

inline constexpr const char* kSmoothnessLabel = "asserted (not machine-checked)";

struct GeometryReport {
  std::string algebra;
  std::size_t parameter_count = 0;
  std::size_t dimension = 0;   // rank of the exact Jacobian at a random valid point
  std::size_t components = 0;  // sign branches of the pattern
  bool branches_disjoint = true;
  std::string disjointness;    // how disjointness was established
  bool lie_group = false;      // one component and a full-rank chart
  std::string smoothness = kSmoothnessLabel;
  std::string rationale;
};

/// Rank of the Jacobian of the entries with respect to the parameters, at `at`.
std::size_t jacobian_rank(const MatrixTemplate& t, const Assignment& at);

/// pi2 / pi3 only; UnsupportedError otherwise.
GeometryReport geometry_report(const std::string& algebra, std::uint64_t seed = 1);

}  // namespace locsym
