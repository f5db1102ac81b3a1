#pragma once

#include "locsym/derivation.hpp"
#include "locsym/local_derivation.hpp"
#include "locsym/matrix_template.hpp"

#include <compare>
#include <string>
#include <vector>

namespace locsym {

struct Position {
  std::size_t i = 0, j = 0;  // 0-based
  auto operator<=>(const Position&) const = default;
};

struct PositionPair {
  Position a, b;
  int rule = 0;  // rule that produced the pair
};

/// Necessary shape of the local derivation matrix read off the derivation template.
struct ShapePrediction {
  std::size_t dim = 0;
  std::vector<Position> zero_set;
  std::vector<PositionPair> equal_pairs;
  std::vector<PositionPair> independent_pairs;
  std::size_t undetermined = 0;  // unordered position pairs covered by no rule
};

/// The template whose entries are the generic element of `der` in its own parameters.
MatrixTemplate derivation_template(const DerivationSpace& der);

ShapePrediction infer_shape(const MatrixTemplate& der_template);

struct ValidationReport {
  bool passed = true;
  std::vector<std::string> violations;
  // Independent pairs whose coordinate functionals are proportional on the
  // space although their difference is not zero (e.g. b22 = 2 b11).
  std::vector<std::string> proportional;
  std::size_t strongly_independent = 0;
};

/// zero_set: coordinate vanishes on L; equal_pairs: difference vanishes on L;
/// independent_pairs: difference does not vanish on L. Linear independence of
/// the two coordinates is measured and reported, not required.
ValidationReport validate_prediction(const ShapePrediction& p, const LocalDerivationSpace& l);

std::string to_string(const Position& p);  // 1-based "(i,j)"

}  // namespace locsym
