#include "locsym/geometry.hpp"

#include "locsym/catalog.hpp"
#include "locsym/error.hpp"
#include "locsym/linalg.hpp"

namespace locsym {

std::size_t jacobian_rank(const MatrixTemplate& t, const Assignment& at) {
  const std::size_t n = t.dim();
  QMatrix jac(n * n, t.params().size());
  for (std::size_t e = 0; e < n * n; ++e)
    for (std::size_t p = 0; p < t.params().size(); ++p)
      jac(e, p) = t.entry(e / n, e % n).derivative(t.params()[p]).evaluate<Rational>(at);
  return rank(jac);
}

namespace {

// Position of each parameter as a bare entry; both branches must agree for
// equal matrices to force equal parameters.
std::map<std::string, std::size_t, NaturalLess> bare_positions(const MatrixTemplate& t) {
  std::map<std::string, std::size_t, NaturalLess> out;
  const std::size_t n = t.dim();
  for (const auto& p : t.params())
    for (std::size_t e = 0; e < n * n && !out.count(p); ++e)
      if (t.entry(e / n, e % n) == Polynomial::variable(p)) out[p] = e;
  return out;
}

// Divides out open-condition factors; a nonzero constant left over means the
// difference cannot vanish on the open set.
bool nonvanishing_on_open_set(Polynomial d, const std::vector<Polynomial>& conditions) {
  for (bool progress = true; progress && !d.is_constant();) {
    progress = false;
    for (const auto& c : conditions)
      if (auto q = divide_exact(d, c)) {
        d = *q;
        progress = true;
      }
  }
  return d.is_constant() && !d.is_zero();
}

}  // namespace

GeometryReport geometry_report(const std::string& algebra, std::uint64_t seed) {
  const auto pattern = locaut_pattern(algebra);
  if (!pattern) throw UnsupportedError("geometry report is available for pi2 and pi3 only");
  GeometryReport r;
  r.algebra = algebra;
  r.components = pattern->branches.size();
  Rng rng(seed);
  for (const auto& branch : pattern->branches) {
    r.parameter_count = branch.params().size();
    const std::size_t d = jacobian_rank(branch, random_valid_params(branch, rng));
    if (r.dimension != 0 && d != r.dimension) throw NumericError("branches have different dimensions");
    r.dimension = d;
  }
  if (r.components > 1) {
    const MatrixTemplate& a = pattern->branches[0];
    const MatrixTemplate& b = pattern->branches[1];
    if (bare_positions(a) != bare_positions(b) || bare_positions(a).size() != a.params().size())
      throw UnsupportedError("branch disjointness needs parameters read off shared entries");
    std::vector<Polynomial> conditions = a.open_conditions();
    conditions.insert(conditions.end(), b.open_conditions().begin(), b.open_conditions().end());
    r.branches_disjoint = false;
    const std::size_t n = a.dim();
    for (std::size_t e = 0; e < n * n && !r.branches_disjoint; ++e) {
      const Polynomial diff = a.entry(e / n, e % n) - b.entry(e / n, e % n);
      if (!diff.is_zero() && nonvanishing_on_open_set(diff, conditions)) {
        r.branches_disjoint = true;
        r.disjointness = "entry (" + std::to_string(e / n + 1) + "," + std::to_string(e % n + 1) +
                         ") differs by " + diff.to_string() + ", nonzero wherever the open conditions hold";
      }
    }
    if (!r.branches_disjoint) r.disjointness = "no entry separates the branches";
  } else {
    r.disjointness = "single branch";
  }
  r.lie_group = r.components == 1 && r.dimension == r.parameter_count;
  if (r.lie_group)
    r.rationale = "one open chart of full rank " + std::to_string(r.dimension) +
                  " closed under products and inverses";
  else
    r.rationale = std::to_string(r.components) + " disjoint components of dimension " + std::to_string(r.dimension) +
                  " with the identity in only one of them";
  return r;
}

}  // namespace locsym
