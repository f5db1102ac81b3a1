#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace locsym {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // deterministic for a fixed seed; no timings
};

inline constexpr int kCriterionCount = 11;

/// Runs one acceptance criterion (1..11). Each criterion derives its own
/// random stream from `seed` and its id, so criteria are independent.
CriterionResult run_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run_suite(std::uint64_t seed);

}  // namespace locsym
