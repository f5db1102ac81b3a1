#include "locsym/local_derivation.hpp"

namespace locsym {

std::vector<std::string> probe_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("nu" + std::to_string(i + 1));
  return v;
}

std::vector<std::string> operator_entry_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v.push_back(entry_name("b", i, j, n));
  return v;
}

std::optional<QVector> pointwise_membership(const DerivationSpace& der, const QMatrix& nabla, const QVector& x) {
  const std::size_t n = der.n;
  if (nabla.rows() != n || x.size() != n) throw InputError("pointwise_membership: dimension mismatch");
  if (der.basis.empty()) {
    const QVector y = nabla * x;
    if (std::all_of(y.begin(), y.end(), [](const Rational& q) { return q == 0; })) return QVector{};
    return std::nullopt;
  }
  QMatrix m(n, der.basis.size());
  for (std::size_t p = 0; p < der.basis.size(); ++p) {
    const QVector dx = der.basis[p] * x;
    for (std::size_t i = 0; i < n; ++i) m(i, p) = dx[i];
  }
  return solve(m, nabla * x);
}

PointwiseChecker::PointwiseChecker(const DerivationSpace& der, const QVector& x) : x_(x) {
  std::vector<QVector> images;
  for (const auto& d : der.basis) images.push_back(d * x);
  image_ = Subspace::span(der.n, images);
}

bool PointwiseChecker::admits(const QMatrix& nabla) const { return image_.contains(nabla * x_); }

ParametricSystem localization_system(const DerivationSpace& der) {
  const std::size_t n = der.n;
  ParametricSystem sys;
  sys.unknowns = der.params;
  sys.probes = probe_names(n);
  sys.params = operator_entry_names(n);
  std::vector<Polynomial> nu;
  for (const auto& p : sys.probes) nu.push_back(Polynomial::variable(p));
  for (std::size_t k = 0; k < n; ++k) {
    ParametricEquation eq;
    for (const auto& d : der.basis) {
      Polynomial c;
      for (std::size_t l = 0; l < n; ++l)
        if (d(k, l) != 0) c += nu[l] * d(k, l);
      eq.coeffs.push_back(std::move(c));
    }
    for (std::size_t l = 0; l < n; ++l) eq.rhs += Polynomial::variable(sys.params[k * n + l]) * nu[l];
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

std::vector<QVector> structured_probe_points(std::size_t n, Rng& rng, const CaseTree* tree) {
  std::vector<QVector> pts;
  if (n <= 16) {
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      QVector x(n, Rational(0));
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) x[i] = rng.nonzero_rational();
      pts.push_back(std::move(x));
    }
  }
  if (tree)
    for (const auto& l : tree->leaves) pts.push_back(l.sample);
  return pts;
}

std::vector<QVector> distinguished_stratum_points(std::size_t n, Rng& rng, std::size_t per_stratum) {
  std::vector<QVector> pts;
  if (n != 5) return pts;
  for (std::size_t t = 0; t < per_stratum; ++t) {
    QVector x = random_vector(rng, n);
    x[3] = -x[0];
    pts.push_back(x);
    QVector y = random_vector(rng, n);
    y[0] = 0;
    y[3] = 0;
    y[4] = -y[1];
    pts.push_back(y);
  }
  pts.push_back(QVector{1, 0, 0, -1, 0});
  pts.push_back(QVector{0, 1, 0, 0, -1});
  return pts;
}

PointwiseReport verify_pointwise(const DerivationSpace& der, const std::vector<QMatrix>& ops, std::size_t random_points,
                                 std::uint64_t seed, const CaseTree* tree) {
  PointwiseReport r;
  Rng rng(seed);
  auto check = [&](const QVector& x) {
    ++r.points;
    const PointwiseChecker pc(der, x);
    for (const auto& op : ops)
      if (!pc.admits(op)) {
        r.passed = false;
        r.failing_point = x;
        return false;
      }
    return true;
  };
  for (const auto& x : structured_probe_points(der.n, rng, tree))
    if (!check(x)) return r;
  for (const auto& x : distinguished_stratum_points(der.n, rng, 16))
    if (!check(x)) return r;
  for (std::size_t t = 0; t < random_points; ++t)
    if (!check(random_vector(rng, der.n))) return r;
  return r;
}

namespace {

LocalDerivationSpace from_solution(const Algebra& a, const Subspace& sol_params) {
  // The params are operator entries in row-major order, so params space == flattened matrices.
  LocalDerivationSpace s;
  s.algebra = a.name();
  s.n = a.dim();
  const std::vector<QVector> rows = sol_params.annihilator().basis();
  const std::size_t nn = s.n * s.n;
  std::vector<QVector> basis =
      rows.empty() ? Subspace::full(nn).basis() : nullspace_basis(QMatrix::from_rows(rows), FreeVariables::kLeading);
  for (const auto& v : basis) s.basis.push_back(QMatrix::from_flat(s.n, v));
  s.span = Subspace::span(nn, basis);
  return s;
}

LocalDerivationSpace probabilistic_space(const Algebra& a, const DerivationSpace& der, std::uint64_t seed,
                                         const CaseTree* tree, std::size_t generic_points) {
  const std::size_t n = a.dim();
  Rng rng(seed);
  std::vector<QVector> points = structured_probe_points(n, rng, tree);
  for (const auto& x : distinguished_stratum_points(n, rng, 4)) points.push_back(x);
  for (std::size_t t = 0; t < generic_points; ++t) points.push_back(random_vector(rng, n));
  const ParametricSystem sys = localization_system(der);
  std::vector<QVector> rows;
  for (const auto& x : points) {
    const QMatrix r = pointwise_constraint_rows(sys, x);
    for (std::size_t i = 0; i < r.rows(); ++i) rows.push_back(r.row(i));
  }
  Subspace sol = rows.empty() ? Subspace::full(n * n) : nullspace(QMatrix::from_rows(rows));
  LocalDerivationSpace s = from_solution(a, sol);
  s.provenance = LocalMode::kProbabilistic;
  return s;
}

}  // namespace

LocalDerivationSpace local_derivation_space(const Algebra& a, const DerivationSpace& der, LocalMode mode,
                                            std::uint64_t seed, std::size_t verify_points) {
  if (der.n != a.dim()) throw InputError("derivation space belongs to a different algebra");
  LocalDerivationSpace s;
  if (mode == LocalMode::kExact) {
    try {
      CaseTree tree = solve_parametric(localization_system(der), seed);
      s = from_solution(a, tree.solution_space());
      s.tree = std::move(tree);
      return s;
    } catch (const UnsupportedError& e) {
      s = probabilistic_space(a, der, seed, nullptr, 64);
      s.warning = std::string("exact stratification failed, probabilistic fallback: ") + e.what();
    }
  } else {
    std::optional<CaseTree> prelim;
    try {
      prelim = solve_parametric(localization_system(der), seed);
    } catch (const UnsupportedError&) {
    }
    s = probabilistic_space(a, der, seed, prelim ? &*prelim : nullptr, 64);
  }
  const PointwiseReport r = verify_pointwise(der, s.basis, verify_points, seed + 1);
  if (!r.passed) s.warning += (s.warning.empty() ? "" : "; ") + std::string("pointwise verification failed");
  return s;
}

std::optional<QMatrix> strict_inclusion_witness(const DerivationSpace& der, const LocalDerivationSpace& loc) {
  if (loc.dim() == der.dim()) return std::nullopt;
  for (auto it = loc.basis.rbegin(); it != loc.basis.rend(); ++it)
    if (!der.contains(*it)) return *it;
  return std::nullopt;
}

}  // namespace locsym
