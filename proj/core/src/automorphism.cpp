#include "locsym/automorphism.hpp"

#include "locsym/catalog.hpp"

namespace locsym {

bool is_automorphism(const Algebra& a, const QMatrix& phi) {
  const std::size_t n = a.dim();
  if (phi.rows() != n || phi.cols() != n) throw InputError("is_automorphism: operator dimension differs from algebra");
  if (rank(phi) != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (phi * a.product(i, j) != a.multiply(phi.col(i), phi.col(j))) return false;
  return true;
}

double multiplicativity_residual(const Algebra& a, const CMatrix& phi) {
  const std::size_t n = a.dim();
  if (phi.rows() != n || phi.cols() != n) throw InputError("multiplicativity_residual: dimension mismatch");
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const CVector lhs = phi * to_complex(a.product(i, j));
      const CVector rhs = a.multiply(phi.col(i), phi.col(j));
      for (std::size_t k = 0; k < n; ++k) r = std::max(r, std::abs(lhs[k] - rhs[k]));
    }
  return r;
}

std::optional<AutomorphismFamily> automorphism_family(const std::string& algebra) {
  auto a = builtin_algebra(algebra);
  auto t = catalog_template(algebra, TemplateKind::kAutomorphism);
  if (!a || !t) return std::nullopt;
  return AutomorphismFamily{*a, *t};
}

QMatrix instantiate(const MatrixTemplate& t, const Assignment& params) {
  for (const auto& c : t.open_conditions())
    if (c.evaluate<Rational>(params) == 0)
      throw InputError("open condition " + c.to_string() + " vanishes at the given parameters");
  return t.instantiate<Rational>(params);
}

Assignment random_valid_params(const MatrixTemplate& t, Rng& rng, std::int64_t bound) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Assignment p;
    for (const auto& name : t.params()) p[name] = rng.rational(bound);
    bool ok = true;
    for (const auto& c : t.open_conditions())
      if (c.evaluate<Rational>(p) == 0) ok = false;
    if (ok) return p;
  }
  throw NumericError("could not sample parameters satisfying the open conditions of " + t.name());
}

FamilyReport verify_family(const AutomorphismFamily& f, std::size_t trials, std::uint64_t seed) {
  FamilyReport r;
  Rng rng(seed);
  const std::size_t n = f.algebra.dim();
  for (std::size_t t = 0; t < trials; ++t) {
    const Assignment p = random_valid_params(f.family, rng);
    const QMatrix phi = instantiate(f, p);
    ++r.forward_checked;
    if (!is_automorphism(f.algebra, phi)) {
      r.passed = false;
      r.failure = "family member is not an automorphism";
      r.counterexample = phi;
      return r;
    }
    if (!template_match(f.family, phi)) {
      r.passed = false;
      r.failure = "family member does not match its own template";
      r.counterexample = phi;
      return r;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        QMatrix q = phi;
        q(i, j) += rng.nonzero_rational(1000);
        ++r.reverse_checked;
        const bool aut = is_automorphism(f.algebra, q);
        const bool match = template_match(f.family, q).has_value();
        if (aut != match) {
          r.passed = false;
          r.failure = aut ? "automorphism outside the family" : "family match that is not an automorphism";
          r.counterexample = q;
          return r;
        }
      }
  }
  return r;
}

FamilyReport family_group_closure(const AutomorphismFamily& f, std::size_t trials, std::uint64_t seed) {
  FamilyReport r;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const QMatrix x = instantiate(f, random_valid_params(f.family, rng));
    const QMatrix y = instantiate(f, random_valid_params(f.family, rng));
    const QMatrix prod = x * y;
    const auto inv = inverse(x);
    ++r.forward_checked;
    for (const QMatrix* m : {&prod, inv ? &*inv : nullptr}) {
      if (m == nullptr || !is_automorphism(f.algebra, *m) || !template_match(f.family, *m)) {
        r.passed = false;
        r.failure = m == &prod ? "product leaves the family" : "inverse leaves the family";
        r.counterexample = m ? *m : x;
        return r;
      }
    }
  }
  return r;
}

bool preserves_filtration(const Algebra& a, const QMatrix& phi) {
  const PowerFiltration f = power_filtration(a);
  for (const auto& s : f.subspaces) {
    std::vector<QVector> image;
    for (const auto& v : s.basis()) image.push_back(phi * v);
    if (!(Subspace::span(a.dim(), image) == s)) return false;
  }
  return true;
}

}  // namespace locsym
