#include "locsym/suite.hpp"

#include "locsym/automorphism.hpp"
#include "locsym/catalog.hpp"
#include "locsym/derivation.hpp"
#include "locsym/error.hpp"
#include "locsym/exp_bridge.hpp"
#include "locsym/geometry.hpp"
#include "locsym/local_automorphism.hpp"
#include "locsym/local_derivation.hpp"
#include "locsym/pattern_inference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

namespace locsym {

namespace {

const std::vector<std::string> kAlgebras{"pi2", "pi3"};

struct Spaces {
  Algebra algebra;
  DerivationSpace der;
  LocalDerivationSpace loc;
};

// Der and exact LocDer are deterministic, so they are computed once per process.
const Spaces& spaces(const std::string& name) {
  static std::map<std::string, std::unique_ptr<Spaces>> cache;
  auto& slot = cache[name];
  if (!slot) {
    Algebra a = *builtin_algebra(name);
    DerivationSpace der = derivation_algebra(a);
    LocalDerivationSpace loc = local_derivation_space(a, der, LocalMode::kExact, 7, 0);
    slot = std::make_unique<Spaces>(Spaces{std::move(a), std::move(der), std::move(loc)});
  }
  return *slot;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

struct Detail {
  std::ostringstream out;
  bool ok = true;
  void check(bool cond, const std::string& what) {
    if (!cond) ok = false;
    out << (out.tellp() > 0 ? "; " : "") << what << (cond ? "" : " [FAIL]");
  }
};

CriterionResult builtins(std::uint64_t seed) {
  Detail d;
  for (const auto& name : kAlgebras) {
    const Algebra a = *builtin_algebra(name);
    const auto f = power_filtration(a);
    const auto c = characteristic_sequence(a, 200, seed);
    d.check(is_associative(a), name + " associative");
    d.check(f.dims() == std::vector<std::size_t>{5, 3, 1, 0} && f.nilindex == 4,
            name + " filtration " + join_sizes(f.dims()) + " nilindex " + std::to_string(f.nilindex));
    d.check(c == std::vector<std::size_t>{3, 2}, name + " characteristic sequence " + join_sizes(c));
  }
  return {1, "built-in algebras", d.ok, d.out.str()};
}

CriterionResult derivations(std::uint64_t) {
  Detail d;
  const std::map<std::string, std::size_t> expected{{"pi2", 7}, {"pi3", 6}};
  for (const auto& name : kAlgebras) {
    const Spaces& s = spaces(name);
    const auto t = catalog_template(name, TemplateKind::kDerivation);
    d.check(s.der.dim() == expected.at(name), "dim Der(" + name + ") = " + std::to_string(s.der.dim()));
    d.check(template_space_equals(*t, s.der), "Der(" + name + ") equals the derivation template");
  }
  return {2, "derivation algebras", d.ok, d.out.str()};
}

// Linear relations checked on every basis element of the computed space.
bool basis_satisfies(const LocalDerivationSpace& l, const std::function<bool(const QMatrix&)>& rel) {
  return std::all_of(l.basis.begin(), l.basis.end(), rel);
}

CriterionResult local_derivations(std::uint64_t) {
  Detail d;
  const Spaces& p2 = spaces("pi2");
  const Spaces& p3 = spaces("pi3");
  for (const Spaces* s : {&p2, &p3}) {
    const std::string& name = s->algebra.name();
    d.check(s->loc.provenance == LocalMode::kExact && s->loc.warning.empty(), "LocDer(" + name + ") exact case tree");
    d.check(s->loc.dim() == (name == "pi2" ? 11u : 7u), "dim LocDer(" + name + ") = " + std::to_string(s->loc.dim()));
    d.check(template_space_equals(*catalog_template(name, TemplateKind::kLocalDerivation), s->loc.span),
            "LocDer(" + name + ") equals the local derivation template");
  }
  d.check(basis_satisfies(p2.loc, [](const QMatrix& b) { return b(3, 3) == b(3, 0) + b(0, 0); }), "pi2 b44 = b41 + b11");
  d.check(basis_satisfies(p2.loc, [](const QMatrix& b) { return b(4, 4) == b(1, 1) + b(4, 1); }), "pi2 b55 = b22 + b52");
  d.check(basis_satisfies(p3.loc,
                          [](const QMatrix& b) {
                            return b(1, 1) == 2 * b(0, 0) && b(2, 2) == 3 * b(0, 0) && b(3, 3) == b(0, 0) &&
                                   b(4, 4) == 2 * b(0, 0);
                          }),
          "pi3 b22 = 2b11, b33 = 3b11, b44 = b11, b55 = 2b11");
  return {3, "local derivation spaces", d.ok, d.out.str()};
}

CriterionResult strict_inclusions(std::uint64_t seed) {
  Detail d;
  for (const auto& name : kAlgebras) {
    const Spaces& s = spaces(name);
    const auto w = strict_inclusion_witness(s.der, s.loc);
    d.check(w.has_value() && s.der.dim() < s.loc.dim(), "Der(" + name + ") strictly inside LocDer(" + name + ")");
    if (!w) continue;
    d.check(!is_derivation(s.algebra, *w), name + " witness fails Leibniz");
    const auto rep = verify_pointwise(s.der, {*w}, 10000, seed, s.loc.tree ? &*s.loc.tree : nullptr);
    d.check(rep.passed && rep.points >= 10000,
            name + " witness pointwise local at " + std::to_string(rep.points) + " points");
  }
  return {4, "strict inclusions Der < LocDer", d.ok, d.out.str()};
}

DenseMatrix<Polynomial> pi3_locder_symbolic(const std::string& v) {
  auto x = [&](int k) { return Polynomial::variable(v + std::to_string(k)); };
  DenseMatrix<Polynomial> m(5, 5);
  m(0, 0) = x(1);
  m(1, 0) = x(4);
  m(1, 1) = x(1) * Polynomial(2);
  m(2, 0) = x(6);
  m(2, 1) = x(5);
  m(2, 2) = x(1) * Polynomial(3);
  m(2, 3) = x(2);
  m(3, 3) = x(1);
  m(4, 0) = x(7);
  m(4, 3) = x(3);
  m(4, 4) = x(1) * Polynomial(2);
  return m;
}

CriterionResult brackets(std::uint64_t seed) {
  Detail d;
  Rng rng(seed);
  for (const auto& name : kAlgebras) {
    const auto rep = bracket_closed(spaces(name).loc.basis, 1000, rng.next());
    d.check(rep.closed, "LocDer(" + name + ") closed under brackets, " + std::to_string(rep.pairs_checked) + " pairs");
  }
  // The displayed commutator of two generic pi3 local derivations.
  const auto cx = pi3_locder_symbolic("x"), cy = pi3_locder_symbolic("y");
  const DenseMatrix<Polynomial> br = commutator(cx, cy);
  DenseMatrix<Polynomial> expected(5, 5);
  expected(1, 0) = parse_polynomial("x1*y4 - x4*y1");
  expected(2, 0) = parse_polynomial("2*x1*y6 + x5*y4 - x4*y5 - 2*x6*y1");
  expected(2, 1) = parse_polynomial("x1*y5 - x5*y1");
  expected(2, 3) = parse_polynomial("2*x1*y2 - 2*x2*y1");
  expected(4, 0) = parse_polynomial("x1*y7 - x7*y1");
  expected(4, 3) = parse_polynomial("x1*y3 - x3*y1");
  d.check(br == expected, "pi3 commutator entries match the displayed formula identically");
  std::size_t agree = 0;
  for (int t = 0; t < 100; ++t) {
    Assignment at;
    for (int k = 1; k <= 7; ++k) {
      at["x" + std::to_string(k)] = rng.nonzero_rational();
      at["y" + std::to_string(k)] = rng.nonzero_rational();
    }
    const QMatrix x = cx.map([&](const Polynomial& p) { return p.evaluate<Rational>(at); });
    const QMatrix y = cy.map([&](const Polynomial& p) { return p.evaluate<Rational>(at); });
    const QMatrix e = expected.map([&](const Polynomial& p) { return p.evaluate<Rational>(at); });
    if (commutator(x, y) == e && spaces("pi3").loc.contains(commutator(x, y))) ++agree;
  }
  d.check(agree == 100, "numeric commutator agrees at " + std::to_string(agree) + "/100 random pairs");
  return {5, "bracket closure", d.ok, d.out.str()};
}

CriterionResult automorphisms(std::uint64_t seed) {
  Detail d;
  Rng rng(seed);
  for (const auto& name : kAlgebras) {
    const auto f = automorphism_family(name);
    const auto v = verify_family(*f, 500, rng.next());
    d.check(v.passed, "Aut(" + name + ") template verified, " + std::to_string(v.forward_checked) + " forward / " +
                          std::to_string(v.reverse_checked) + " reverse" + (v.passed ? "" : ": " + v.failure));
    const auto g = family_group_closure(*f, 500, rng.next());
    d.check(g.passed, "Aut(" + name + ") closed under products and inverses" + (g.passed ? "" : ": " + g.failure));
  }
  return {6, "automorphism templates", d.ok, d.out.str()};
}

CriterionResult local_automorphisms(std::uint64_t seed) {
  Detail d;
  Rng rng(seed);
  for (const auto& name : kAlgebras) {
    const Algebra a = *builtin_algebra(name);
    const auto p = locaut_pattern(name);
    const auto v = verify_pattern(a, *p, 200, rng.next());
    d.check(v.passed, "LocAut(" + name + ") pattern verified, " + std::to_string(v.forward_checked) + " feasibility / " +
                          std::to_string(v.reverse_checked) + " refutations" + (v.passed ? "" : ": " + v.failure));
    const auto g = pattern_group_closure(*p, 200, rng.next());
    d.check(g.passed, "LocAut(" + name + ") closed under products and inverses");
  }
  QMatrix b = QMatrix::identity(5);
  b(1, 1) = 2;
  const auto w = find_witness(pi3(), b);
  d.check(w && *w == QVector{0, 1, 0, 1, 0}, "pi3 diag(1,2,1,1,1) refuted at e2+e4");
  return {7, "local automorphism patterns", d.ok, d.out.str()};
}

std::string exp_summary(const BridgeReport& r) {
  std::ostringstream s;
  s.precision(3);
  s << r.algebra << (r.direction == BridgeDirection::kExp ? " exp" : " log") << " " << r.trials << " samples, max residual "
    << std::scientific << r.max_residual;
  if (!r.passed) s << ": " << r.failure;
  return s.str();
}

CriterionResult bridge(std::uint64_t seed) {
  Detail d;
  Rng rng(seed);
  const auto e3 = bridge_check(pi3(), BridgeDirection::kExp, 100, rng.next());
  d.check(e3.passed && e3.plus_branch == e3.trials, exp_summary(e3) + ", " + std::to_string(e3.plus_branch) + " in + branch");
  const auto l3 = bridge_check(pi3(), BridgeDirection::kLog, 100, rng.next());
  d.check(l3.passed, exp_summary(l3));
  const auto e2 = bridge_check(pi2(), BridgeDirection::kExp, 100, rng.next());
  d.check(e2.passed, exp_summary(e2));
  for (const auto& name : kAlgebras) {
    const auto r = exp_derivation_check(*builtin_algebra(name), 100, rng.next());
    d.check(r.passed, "exp Der(" + name + ") multiplicative");
  }
  return {8, "exponential bridge", d.ok, d.out.str()};
}

CriterionResult series(std::uint64_t seed) {
  Detail d;
  Rng rng(seed);
  // x * series against exponential combinations, avoiding division near 0
  const std::vector<std::pair<Series, std::function<Complex(Complex, Complex)>>> identities{
      {Series::kLambda21, [](Complex x, Complex v) { return v * x - (std::exp(2.0 * x) - std::exp(x)); }},
      {Series::kLambda31, [](Complex x, Complex v) { return v * 2.0 * x - (std::exp(3.0 * x) - std::exp(x)); }},
      {Series::kLambda32, [](Complex x, Complex v) { return v * x - (std::exp(3.0 * x) - std::exp(2.0 * x)); }},
      {Series::kMu31,
       [](Complex x, Complex v) { return v * 2.0 * x * x - (std::exp(3.0 * x) - 2.0 * std::exp(2.0 * x) + std::exp(x)); }},
      {Series::kLambda34, [](Complex x, Complex v) { return v * 2.0 * x - (std::exp(3.0 * x) - std::exp(x)); }},
  };
  std::vector<double> worst(identities.size(), 0.0);
  for (int t = 0; t < 100; ++t) {
    const Complex x = std::polar(std::sqrt(rng.uniform_real(0.0, 1.0)), rng.uniform_real(-M_PI, M_PI));
    for (std::size_t k = 0; k < identities.size(); ++k)
      worst[k] = std::max(worst[k], std::abs(identities[k].second(x, eval_series(identities[k].first, x).value)));
  }
  for (std::size_t k = 0; k < identities.size(); ++k) {
    std::ostringstream s;
    s.precision(2);
    s << to_string(identities[k].first) << " closed form gap " << std::scientific << worst[k];
    d.check(worst[k] <= 1e-10, s.str());
  }
  bool same = true;
  for (int k = 1; k <= kSeriesOrder; ++k)
    same = same && series_numerator(Series::kLambda34, k) == series_numerator(Series::kLambda31, k);
  d.check(same, "lambda34 and lambda31 agree termwise through N=30");
  return {9, "series identities", d.ok, d.out.str()};
}

CriterionResult geometry(std::uint64_t seed) {
  Detail d;
  const auto g2 = geometry_report("pi2", seed);
  d.check(g2.dimension == 11 && g2.components == 1 && g2.lie_group,
          "pi2 dim " + std::to_string(g2.dimension) + ", " + std::to_string(g2.components) + " component, Lie group " +
              (g2.lie_group ? "yes" : "no"));
  const auto g3 = geometry_report("pi3", seed);
  d.check(g3.dimension == 7 && g3.components == 2 && !g3.lie_group,
          "pi3 dim " + std::to_string(g3.dimension) + ", " + std::to_string(g3.components) + " components, Lie group " +
              (g3.lie_group ? "yes" : "no"));
  d.check(g3.branches_disjoint, "pi3 branches disjoint: " + g3.disjointness);
  // exact probe: members of one branch never match the other
  Rng rng(seed);
  const auto p = locaut_pattern("pi3");
  bool separated = true;
  for (int t = 0; t < 50; ++t)
    for (int sign : {+1, -1}) {
      const QMatrix m = random_pattern_member(*p, rng, sign);
      const auto c = pattern_check(*p, m);
      separated = separated && c.member && c.branch == sign &&
                  !template_match(p->branches[sign > 0 ? 1 : 0], m).has_value();
    }
  d.check(separated, "pi3 members match exactly one branch");
  return {10, "geometry report", d.ok, d.out.str()};
}

CriterionResult inference(std::uint64_t) {
  Detail d;
  for (const auto& name : kAlgebras) {
    const Spaces& s = spaces(name);
    const auto shape = infer_shape(*catalog_template(name, TemplateKind::kDerivation));
    const auto v = validate_prediction(shape, s.loc);
    d.check(v.passed, name + " prediction sound: " + std::to_string(shape.zero_set.size()) + " zeros, " +
                          std::to_string(shape.equal_pairs.size()) + " equal, " +
                          std::to_string(shape.independent_pairs.size()) + " distinct pairs");
    std::vector<Position> expected;
    for (const auto& [i, j] : catalog_template(name, TemplateKind::kLocalDerivation)->zero_positions())
      expected.push_back({i, j});
    auto got = shape.zero_set;
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    d.check(got == expected, name + " rule 0 zero set equals the local derivation zero pattern");
  }
  auto wrong = infer_shape(*catalog_template("pi2", TemplateKind::kDerivation));
  wrong.equal_pairs.push_back({{0, 0}, {1, 1}, 1});
  d.check(!validate_prediction(wrong, spaces("pi2").loc).passed, "planted pi2 equality (1,1)=(2,2) rejected");
  return {11, "pattern inference", d.ok, d.out.str()};
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  using Runner = CriterionResult (*)(std::uint64_t);
  static const Runner runners[kCriterionCount] = {builtins, derivations,   local_derivations, strict_inclusions,
                                                  brackets, automorphisms, local_automorphisms, bridge,
                                                  series,   geometry,      inference};
  if (id < 1 || id > kCriterionCount) throw InputError("criterion id must be 1.." + std::to_string(kCriterionCount));
  const std::uint64_t sub = Rng(seed).fork(static_cast<std::uint64_t>(id)).next();
  try {
    return runners[id - 1](sub);
  } catch (const std::exception& e) {
    return {id, "criterion " + std::to_string(id), false, std::string("raised: ") + e.what()};
  }
}

std::vector<CriterionResult> run_suite(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

}  // namespace locsym
