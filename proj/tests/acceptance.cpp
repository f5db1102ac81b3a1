// One line per acceptance criterion; exit status 1 when any criterion fails.
#include "locsym/rational.hpp"
#include "locsym/suite.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  std::uint64_t seed = locsym::default_seed();
  if (argc > 1) seed = std::stoull(argv[1]);
  bool all = true;
  for (int id = 1; id <= locsym::kCriterionCount; ++id) {
    const auto r = locsym::run_criterion(id, seed);
    all = all && r.passed;
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.title << "): " << r.detail
              << std::endl;
  }
  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << std::endl;
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
