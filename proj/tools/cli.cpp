#include "cli.hpp"

#include "locsym/automorphism.hpp"
#include "locsym/catalog.hpp"
#include "locsym/derivation.hpp"
#include "locsym/error.hpp"
#include "locsym/exp_bridge.hpp"
#include "locsym/geometry.hpp"
#include "locsym/io.hpp"
#include "locsym/local_automorphism.hpp"
#include "locsym/local_derivation.hpp"
#include "locsym/pattern_inference.hpp"
#include "locsym/suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace locsym::cli {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
  std::string algebra;
  std::string target;  // positional of `algebra check`
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;
  double tol = kFeasibilityTol;
  std::string format = "text";
  std::string out;
  std::string matrix;
  std::string mode = "exact";
  std::string direction = "exp";
  std::string branch = "+";
  std::string verify;
};

struct Outcome {
  int code = kOk;
  json result = json::object();
  std::optional<json> counterexample;
};

json op_json(const QMatrix& m) { return json::parse(operator_to_json(m)); }
json op_json(const CMatrix& m) { return json::parse(operator_to_json(m)); }
QMatrix qmatrix_from(const json& j) {
  auto op = parse_operator(j.dump());
  if (const auto* q = std::get_if<QMatrix>(&op)) return *q;
  throw InputError("this check needs an exact rational operator");
}
json vec_json(const QVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}
QVector vec_from(const json& j) {
  QVector v;
  for (const auto& x : j) v.push_back(parse_rational(x.get<std::string>()));
  return v;
}
json algebra_json(const Algebra& a) { return json::parse(algebra_to_json(a)); }
Algebra algebra_from(const json& j) {
  if (j.is_string()) return load_algebra(j.get<std::string>());
  return parse_algebra(j.dump());
}
json sizes_json(const std::vector<std::size_t>& v) { return json(v); }

std::string trials_note(std::size_t n) { return std::to_string(n); }

struct Context {
  const Options& opt;
  std::size_t trials(std::size_t fallback) const { return opt.trials.value_or(fallback); }

  Algebra algebra() const {
    if (opt.algebra.empty()) throw InputError("--algebra <name|file> is required");
    return load_algebra(opt.algebra);
  }
  Operator matrix(std::size_t n) const {
    if (opt.matrix.empty()) throw InputError("--matrix <file> is required");
    Operator m = load_operator(opt.matrix);
    const std::size_t dim = std::visit([](const auto& x) { return x.rows(); }, m);
    if (dim != n) throw InputError("operator dimension " + std::to_string(dim) + " differs from algebra dimension");
    return m;
  }
  QMatrix rational_matrix(std::size_t n) const {
    Operator m = matrix(n);
    if (auto* q = std::get_if<QMatrix>(&m)) return *q;
    throw InputError("this check needs a rational operator");
  }
};

// ---- counterexample helpers -------------------------------------------------

std::optional<std::array<std::size_t, 3>> associativity_failure(const Algebra& a) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const QVector ei = basis_vector<Rational>(n, i), ej = basis_vector<Rational>(n, j),
                      ek = basis_vector<Rational>(n, k);
        if (a.multiply(a.multiply(ei, ej), ek) != a.multiply(ei, a.multiply(ej, ek))) return {{i, j, k}};
      }
  return std::nullopt;
}

bool leibniz_holds_at(const Algebra& a, const QMatrix& d, std::size_t i, std::size_t j) {
  const std::size_t n = a.dim();
  const QVector ei = basis_vector<Rational>(n, i), ej = basis_vector<Rational>(n, j);
  QVector rhs = a.multiply(d * ei, ej);
  const QVector right = a.multiply(ei, d * ej);
  for (std::size_t k = 0; k < n; ++k) rhs[k] += right[k];
  return d * a.multiply(ei, ej) == rhs;
}

bool multiplicative_at(const Algebra& a, const QMatrix& phi, std::size_t i, std::size_t j) {
  return phi * a.product(i, j) == a.multiply(phi.col(i), phi.col(j));
}

template <class Pred>
std::optional<std::pair<std::size_t, std::size_t>> first_pair(std::size_t n, Pred fails) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (fails(i, j)) return std::pair{i, j};
  return std::nullopt;
}

json pair_json(std::pair<std::size_t, std::size_t> p) { return json::array({p.first + 1, p.second + 1}); }

const CaseTree* tree_of(const LocalDerivationSpace& l) { return l.tree ? &*l.tree : nullptr; }

LocalDerivationSpace exact_space(const Algebra& a, const DerivationSpace& der, std::uint64_t seed) {
  return local_derivation_space(a, der, LocalMode::kExact, seed, 0);
}

std::optional<QVector> locder_failure_point(const DerivationSpace& der, const LocalDerivationSpace& loc,
                                            const QMatrix& b, std::size_t points, std::uint64_t seed) {
  auto rep = verify_pointwise(der, {b}, points, seed, tree_of(loc));
  if (!rep.passed) return rep.failing_point;
  return std::nullopt;
}

bool bridge_sample_fails(const Algebra& a, const std::string& direction, const std::string& branch, const CMatrix& m) {
  const auto locder = catalog_template(a.name(), TemplateKind::kLocalDerivation);
  const auto plus = catalog_template(a.name(), TemplateKind::kLocalAutomorphism, +1);
  if (!locder || !plus) throw UnsupportedError("bridge samples exist for pi2 and pi3 only");
  const double scale = std::max(1.0, max_abs(m));
  try {
    if (direction == "exp") {
      const CMatrix b = matrix_exp(m);
      return !(pattern_residual(*plus, b) < 1e-9 * std::max(1.0, max_abs(b)));
    }
    const CMatrix l = (a.name() == "pi3" && branch == "+") ? structured_log_pi3(m) : matrix_log(m);
    return !(max_abs(matrix_exp(l) - m) < 1e-8 * scale && pattern_residual(*locder, l) < 1e-8 * std::max(1.0, max_abs(l)));
  } catch (const NumericError&) {
    return true;
  } catch (const InputError&) {
    return true;
  }
}

// ---- commands ---------------------------------------------------------------

Outcome cmd_algebra_check(const Context& c) {
  const std::string target = c.opt.target.empty() ? c.opt.algebra : c.opt.target;
  if (target.empty()) throw InputError("algebra check needs a name or file");
  const Algebra a = load_algebra(target);
  Outcome o;
  const auto f = power_filtration(a);
  const auto bad = associativity_failure(a);
  o.result["name"] = a.name();
  o.result["dim"] = a.dim();
  o.result["associative"] = !bad.has_value();
  o.result["nilpotent"] = f.nilpotent;
  o.result["filtration_dims"] = sizes_json(f.dims());
  if (f.nilpotent) {
    o.result["nilindex"] = f.nilindex;
    o.result["characteristic_sequence"] = sizes_json(characteristic_sequence(a, c.trials(200), c.opt.seed));
    o.result["characteristic_sequence_note"] = "lexicographic maximum over sampled x outside A^2 (a lower bound)";
  }
  if (bad) {
    o.code = kViolated;
    o.counterexample = json{{"kind", "associativity_triple"},
                            {"algebra", algebra_json(a)},
                            {"triple", {(*bad)[0] + 1, (*bad)[1] + 1, (*bad)[2] + 1}}};
  }
  return o;
}

Outcome cmd_der_basis(const Context& c) {
  const Algebra a = c.algebra();
  const DerivationSpace der = derivation_algebra(a);
  Outcome o;
  o.result["dim"] = der.dim();
  o.result["params"] = der.params;
  json basis = json::array();
  for (const auto& b : der.basis) basis.push_back(op_json(b));
  o.result["basis"] = basis;
  if (auto t = catalog_template(a.name(), TemplateKind::kDerivation))
    o.result["matches_catalog_template"] = template_space_equals(*t, der);
  return o;
}

Outcome cmd_der_check(const Context& c) {
  const Algebra a = c.algebra();
  const QMatrix d = c.rational_matrix(a.dim());
  Outcome o;
  const auto bad = first_pair(a.dim(), [&](std::size_t i, std::size_t j) { return !leibniz_holds_at(a, d, i, j); });
  o.result["is_derivation"] = !bad.has_value();
  if (bad) {
    o.code = kViolated;
    o.counterexample = json{{"kind", "leibniz_pair"}, {"algebra", algebra_json(a)}, {"matrix", op_json(d)}, {"pair", pair_json(*bad)}};
  } else if (auto t = catalog_template(a.name(), TemplateKind::kDerivation)) {
    if (auto m = template_match(*t, d)) {
      json params = json::object();
      for (const auto& [k, v] : *m) params[k] = to_string(v);
      o.result["template_params"] = params;
    }
  }
  return o;
}

Outcome cmd_locder_basis(const Context& c) {
  const Algebra a = c.algebra();
  const DerivationSpace der = derivation_algebra(a);
  if (c.opt.mode != "exact" && c.opt.mode != "probabilistic") throw InputError("--mode must be exact or probabilistic");
  const LocalMode mode = c.opt.mode == "exact" ? LocalMode::kExact : LocalMode::kProbabilistic;
  const LocalDerivationSpace loc = local_derivation_space(a, der, mode, c.opt.seed, 0);
  Outcome o;
  o.result["dim"] = loc.dim();
  o.result["der_dim"] = der.dim();
  o.result["provenance"] = loc.provenance == LocalMode::kExact ? "exact" : "probabilistic";
  if (!loc.warning.empty()) o.result["warning"] = loc.warning;
  json basis = json::array();
  for (const auto& b : loc.basis) basis.push_back(op_json(b));
  o.result["basis"] = basis;
  if (loc.tree) {
    json leaves = json::array();
    for (const auto& l : loc.tree->leaves) leaves.push_back(l.signature());
    o.result["case_leaves"] = leaves;
    json cons = json::array();
    for (const auto& p : loc.tree->aggregated_constraints) cons.push_back(p.to_string() + " = 0");
    o.result["constraints"] = cons;
  }
  if (auto t = catalog_template(a.name(), TemplateKind::kLocalDerivation))
    o.result["matches_catalog_template"] = template_space_equals(*t, loc.span);
  return o;
}

Outcome cmd_locder_check(const Context& c) {
  const Algebra a = c.algebra();
  const QMatrix b = c.rational_matrix(a.dim());
  const DerivationSpace der = derivation_algebra(a);
  const LocalDerivationSpace loc = exact_space(a, der, c.opt.seed);
  Outcome o;
  const bool inside = loc.contains(b);
  o.result["is_local_derivation"] = inside;
  o.result["provenance"] = loc.provenance == LocalMode::kExact ? "exact" : "probabilistic";
  o.result["is_derivation"] = is_derivation(a, b);
  if (inside) return o;
  o.code = kViolated;
  if (auto x = locder_failure_point(der, loc, b, c.trials(1000), c.opt.seed))
    o.counterexample = json{{"kind", "locder_point"}, {"algebra", algebra_json(a)}, {"matrix", op_json(b)}, {"point", vec_json(*x)}};
  else
    o.counterexample = json{{"kind", "locder_span"}, {"algebra", algebra_json(a)}, {"matrix", op_json(b)}};
  return o;
}

Outcome cmd_locder_witness(const Context& c) {
  const Algebra a = c.algebra();
  const DerivationSpace der = derivation_algebra(a);
  const LocalDerivationSpace loc = exact_space(a, der, c.opt.seed);
  Outcome o;
  const auto w = strict_inclusion_witness(der, loc);
  o.result["der_dim"] = der.dim();
  o.result["locder_dim"] = loc.dim();
  if (!w) {
    o.result["witness"] = nullptr;
    return o;
  }
  const auto rep = verify_pointwise(der, {*w}, c.trials(10000), c.opt.seed, tree_of(loc));
  o.result["witness"] = op_json(*w);
  o.result["is_derivation"] = is_derivation(a, *w);
  o.result["pointwise_points"] = rep.points;
  o.result["pointwise_passed"] = rep.passed;
  return o;
}

Outcome cmd_aut_check(const Context& c) {
  const Algebra a = c.algebra();
  const QMatrix phi = c.rational_matrix(a.dim());
  Outcome o;
  const bool invertible = rank(phi) == a.dim();
  const auto bad = first_pair(a.dim(), [&](std::size_t i, std::size_t j) { return !multiplicative_at(a, phi, i, j); });
  o.result["invertible"] = invertible;
  o.result["is_automorphism"] = invertible && !bad;
  if (!invertible || bad) {
    o.code = kViolated;
    json ce{{"algebra", algebra_json(a)}, {"matrix", op_json(phi)}};
    ce["kind"] = bad ? "multiplicativity_pair" : "singular";
    if (bad) ce["pair"] = pair_json(*bad);
    o.counterexample = ce;
  } else if (auto f = automorphism_family(a.name())) {
    if (auto m = template_match(f->family, phi)) {
      json params = json::object();
      for (const auto& [k, v] : *m) params[k] = to_string(v);
      o.result["template_params"] = params;
    }
  }
  return o;
}

Outcome cmd_aut_family_verify(const Context& c) {
  const Algebra a = c.algebra();
  const auto f = automorphism_family(a.name());
  if (!f) throw UnsupportedError("automorphism templates exist for pi2 and pi3 only");
  const std::size_t n = c.trials(500);
  const auto v = verify_family(*f, n, c.opt.seed);
  const auto g = family_group_closure(*f, n, c.opt.seed + 1);
  Outcome o;
  o.result["template"] = json::parse(template_to_json(f->family));
  o.result["forward_checked"] = v.forward_checked;
  o.result["reverse_checked"] = v.reverse_checked;
  o.result["family_verified"] = v.passed;
  o.result["group_closed"] = g.passed;
  const FamilyReport& bad = !v.passed ? v : g;
  if (!bad.passed) {
    o.code = kViolated;
    o.result["failure"] = bad.failure;
    o.counterexample = json{{"kind", "family_mismatch"}, {"algebra", algebra_json(a)}, {"matrix", op_json(*bad.counterexample)}};
  }
  return o;
}

std::optional<CVector> complex_witness(const Algebra& a, const CMatrix& b, double tol) {
  for (const auto& x : locaut_probe_set(a.dim())) {
    const CVector cx = to_complex(x);
    if (!locaut_feasible_at(a, b, cx, tol).feasible) return cx;
  }
  return std::nullopt;
}

json cvec_json(const CVector& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back({format_double(z.real()), format_double(z.imag())});
  return a;
}

Outcome cmd_locaut_check(const Context& c) {
  const Algebra a = c.algebra();
  const auto p = locaut_pattern(a.name());
  if (!p) throw UnsupportedError("local automorphism patterns exist for pi2 and pi3 only");
  const Operator m = c.matrix(a.dim());
  Outcome o;
  if (const auto* q = std::get_if<QMatrix>(&m)) {
    const PatternCheck pc = pattern_check(*p, *q);
    o.result["member"] = pc.member;
    o.result["boundary"] = pc.boundary;
    if (pc.member || pc.boundary) o.result["branch"] = pc.branch > 0 ? "+" : "-";
    if (pc.params) {
      json params = json::object();
      for (const auto& [k, v] : *pc.params) params[k] = to_string(v);
      o.result["params"] = params;
    }
    if (pc.member) return o;
    o.code = kViolated;
    if (auto w = find_witness(a, *q, c.trials(1000), c.opt.seed))
      o.counterexample = json{{"kind", "locaut_point"}, {"algebra", algebra_json(a)}, {"matrix", op_json(*q)}, {"point", vec_json(*w)}};
    else
      o.counterexample = json{{"kind", "pattern_violation"}, {"algebra", algebra_json(a)}, {"matrix", op_json(*q)}};
    return o;
  }
  const CMatrix& z = std::get<CMatrix>(m);
  const double scale = std::max(1.0, max_abs(z));
  json residuals = json::object();
  bool member = false;
  for (std::size_t k = 0; k < p->branches.size(); ++k) {
    const double r = pattern_residual(p->branches[k], z);
    residuals[k == 0 ? "+" : "-"] = r;
    if (r <= c.opt.tol * scale) {
      member = true;
      o.result["branch"] = k == 0 ? "+" : "-";
    }
  }
  o.result["relation_residuals"] = residuals;
  o.result["member"] = member;
  if (member) return o;
  o.code = kViolated;
  if (auto w = complex_witness(a, z, c.opt.tol))
    o.counterexample = json{{"kind", "locaut_point"}, {"algebra", algebra_json(a)}, {"matrix", op_json(z)}, {"point", cvec_json(*w)}};
  else
    o.counterexample = json{{"kind", "pattern_violation"}, {"algebra", algebra_json(a)}, {"matrix", op_json(z)}};
  return o;
}

Outcome cmd_locaut_verify(const Context& c) {
  const Algebra a = c.algebra();
  const auto p = locaut_pattern(a.name());
  if (!p) throw UnsupportedError("local automorphism patterns exist for pi2 and pi3 only");
  const std::size_t n = c.trials(200);
  const auto v = verify_pattern(a, *p, n, c.opt.seed);
  const auto g = pattern_group_closure(*p, n, c.opt.seed + 1);
  Outcome o;
  o.result["relations"] = p->relations;
  o.result["forward_checked"] = v.forward_checked;
  o.result["reverse_checked"] = v.reverse_checked;
  o.result["pattern_verified"] = v.passed;
  o.result["group_closed"] = g.passed;
  const PatternReport& bad = !v.passed ? v : g;
  if (!bad.passed) {
    o.code = kViolated;
    o.result["failure"] = bad.failure;
    json ce{{"algebra", algebra_json(a)}, {"matrix", op_json(*bad.counterexample)}};
    if (bad.point) {
      ce["kind"] = "locaut_member_infeasible";
      ce["point"] = vec_json(*bad.point);
    } else {
      ce["kind"] = "pattern_violation";
    }
    o.counterexample = ce;
  }
  return o;
}

Outcome cmd_locaut_witness(const Context& c) {
  const Algebra a = c.algebra();
  if (!locaut_pattern(a.name())) throw UnsupportedError("local automorphism feasibility exists for pi2 and pi3 only");
  const Operator m = c.matrix(a.dim());
  Outcome o;
  if (const auto* q = std::get_if<QMatrix>(&m)) {
    const std::size_t budget = c.trials(1000);
    const auto w = find_witness(a, *q, budget, c.opt.seed);
    o.result["searched"] = std::to_string(locaut_probe_set(a.dim()).size()) + " probes + " + trials_note(budget) + " random points";
    o.result["witness"] = w ? vec_json(*w) : json(nullptr);
    if (w) {
      o.code = kViolated;
      o.counterexample = json{{"kind", "locaut_point"}, {"algebra", algebra_json(a)}, {"matrix", op_json(*q)}, {"point", vec_json(*w)}};
    }
    return o;
  }
  const CMatrix& z = std::get<CMatrix>(m);
  const auto w = complex_witness(a, z, c.opt.tol);
  o.result["searched"] = std::to_string(locaut_probe_set(a.dim()).size()) + " probes";
  o.result["witness"] = w ? cvec_json(*w) : json(nullptr);
  if (w) {
    o.code = kViolated;
    o.counterexample = json{{"kind", "locaut_point"}, {"algebra", algebra_json(a)}, {"matrix", op_json(z)}, {"point", cvec_json(*w)}};
  }
  return o;
}

CMatrix complex_operator(const Operator& m) {
  if (const auto* q = std::get_if<QMatrix>(&m)) return to_complex(*q);
  return std::get<CMatrix>(m);
}

Outcome cmd_exp(const Context& c) {
  if (c.opt.matrix.empty()) throw InputError("--matrix <file> is required");
  const CMatrix a = complex_operator(load_operator(c.opt.matrix));
  Outcome o;
  const CMatrix e = matrix_exp(a);
  o.result["exp"] = op_json(e);
  if (!c.opt.algebra.empty())
    if (auto p = locaut_pattern(load_algebra(c.opt.algebra).name())) {
      json r = json::object();
      for (std::size_t k = 0; k < p->branches.size(); ++k) r[k == 0 ? "+" : "-"] = pattern_residual(p->branches[k], e);
      o.result["pattern_residuals"] = r;
    }
  return o;
}

Outcome cmd_log(const Context& c) {
  if (c.opt.matrix.empty()) throw InputError("--matrix <file> is required");
  const CMatrix b = complex_operator(load_operator(c.opt.matrix));
  Outcome o;
  const CMatrix l = matrix_log(b);
  o.result["log"] = op_json(l);
  o.result["round_trip"] = max_abs(matrix_exp(l) - b);
  if (!c.opt.algebra.empty() && load_algebra(c.opt.algebra).name() == "pi3") {
    const auto plus = catalog_template("pi3", TemplateKind::kLocalAutomorphism, +1);
    if (pattern_residual(*plus, b) <= 1e-9 * std::max(1.0, max_abs(b))) {
      const CMatrix s = structured_log_pi3(b);
      o.result["structured_log"] = op_json(s);
      o.result["structured_vs_generic"] = max_abs(s - l);
    }
  }
  return o;
}

Outcome cmd_bridge(const Context& c) {
  const Algebra a = c.algebra();
  if (c.opt.direction != "exp" && c.opt.direction != "log") throw InputError("--direction must be exp or log");
  if (c.opt.branch != "+" && c.opt.branch != "-") throw InputError("--branch must be + or -");
  const std::size_t n = c.trials(100);
  Outcome o;
  if (c.opt.branch == "-") {
    if (a.name() != "pi3" || c.opt.direction != "log")
      throw UnsupportedError("the - branch experiment is the log direction on pi3");
    // Experiment: principal logarithms of - branch members, tested against the LocDer pattern.
    const auto minus = catalog_template("pi3", TemplateKind::kLocalAutomorphism, -1);
    Rng rng(c.opt.seed);
    std::size_t landed = 0;
    std::optional<CMatrix> first_miss;
    for (std::size_t t = 0; t < n; ++t) {
      std::map<std::string, Complex, NaturalLess> v;
      for (const auto& p : minus->params()) v[p] = Complex(rng.uniform_real(-1.0, 1.0), 0.0);
      v["b11"] = rng.uniform_real(0.5, 2.0);
      const CMatrix b = minus->instantiate<Complex>(v);
      if (bridge_sample_fails(a, "log", "-", b)) {
        if (!first_miss) first_miss = b;
      } else {
        ++landed;
      }
    }
    o.result["experiment"] = "logarithms of the - branch (unverified direction)";
    o.result["trials"] = n;
    o.result["landed_in_locder"] = landed;
    if (first_miss) {
      o.code = kViolated;
      o.counterexample = json{{"kind", "bridge_sample"}, {"algebra", algebra_json(a)}, {"direction", "log"}, {"branch", "-"}, {"matrix", op_json(*first_miss)}};
    }
    return o;
  }
  const auto r = bridge_check(a, c.opt.direction == "exp" ? BridgeDirection::kExp : BridgeDirection::kLog, n, c.opt.seed);
  o.result["trials"] = r.trials;
  o.result["passed"] = r.passed;
  o.result["max_residual"] = r.max_residual;
  o.result["residuals"] = r.residuals;
  if (a.name() == "pi3" && c.opt.direction == "exp") o.result["plus_branch"] = r.plus_branch;
  if (a.name() == "pi3" && c.opt.direction == "log") o.result["structured_vs_generic"] = r.max_method_gap;
  if (!r.passed) {
    o.code = kViolated;
    o.result["failure"] = r.failure;
    if (r.counterexample)
      o.counterexample = json{{"kind", "bridge_sample"}, {"algebra", algebra_json(a)}, {"direction", c.opt.direction}, {"branch", "+"}, {"matrix", op_json(*r.counterexample)}};
  }
  return o;
}

json positions_json(const std::vector<Position>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(to_string(p));
  return a;
}

json pairs_json(const std::vector<PositionPair>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back({{"a", to_string(p.a)}, {"b", to_string(p.b)}, {"rule", p.rule}});
  return a;
}

Outcome cmd_infer(const Context& c) {
  const Algebra a = c.algebra();
  const DerivationSpace der = derivation_algebra(a);
  const auto catalog = catalog_template(a.name(), TemplateKind::kDerivation);
  const MatrixTemplate t = catalog ? *catalog : derivation_template(der);
  const ShapePrediction s = infer_shape(t);
  const LocalDerivationSpace loc = exact_space(a, der, c.opt.seed);
  const ValidationReport v = validate_prediction(s, loc);
  Outcome o;
  o.result["zero_set"] = positions_json(s.zero_set);
  o.result["equal_pairs"] = pairs_json(s.equal_pairs);
  o.result["independent_pairs"] = pairs_json(s.independent_pairs);
  o.result["undetermined_pairs"] = s.undetermined;
  o.result["valid"] = v.passed;
  o.result["violations"] = v.violations;
  o.result["strongly_independent"] = v.strongly_independent;
  o.result["proportional_on_space"] = v.proportional;
  o.result["provenance"] = loc.provenance == LocalMode::kExact ? "exact" : "probabilistic";
  if (!v.passed) {
    o.code = kViolated;
    o.counterexample = json{{"kind", "prediction_violation"}, {"algebra", algebra_json(a)}, {"violations", v.violations}};
  }
  return o;
}

Outcome cmd_report_geometry(const Context& c) {
  const Algebra a = c.algebra();
  const GeometryReport g = geometry_report(a.name(), c.opt.seed);
  Outcome o;
  o.result["dimension"] = g.dimension;
  o.result["parameter_count"] = g.parameter_count;
  o.result["components"] = g.components;
  o.result["branches_disjoint"] = g.branches_disjoint;
  o.result["disjointness"] = g.disjointness;
  o.result["lie_group"] = g.lie_group;
  o.result["smoothness"] = g.smoothness;
  o.result["rationale"] = g.rationale;
  return o;
}

Outcome cmd_suite(const Context& c) {
  Outcome o;
  json list = json::array();
  std::optional<int> first_failure;
  for (const auto& r : run_suite(c.opt.seed)) {
    list.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    if (!r.passed && !first_failure) first_failure = r.id;
  }
  o.result["criteria"] = list;
  o.result["all_passed"] = !first_failure.has_value();
  if (first_failure) {
    o.code = kViolated;
    o.counterexample = json{{"kind", "criterion"}, {"id", *first_failure}, {"seed", c.opt.seed}};
  }
  return o;
}

// Re-checks a counterexample emitted by an earlier run: exit 0 when it still
// refutes the property, 1 when it does not.
Outcome cmd_verify_counterexample(const Context& c) {
  json doc;
  try {
    doc = json::parse(read_file(c.opt.verify));
  } catch (const json::exception& e) {
    throw InputError(std::string("counterexample file is not structured output: ") + e.what());
  }
  const json ce = doc.contains("counterexample") ? doc.at("counterexample") : doc;
  if (!ce.is_object() || !ce.contains("kind")) throw InputError("no counterexample in the file");
  const std::string kind = ce.at("kind").get<std::string>();
  bool confirmed = false;
  std::string reason;
  auto alg = [&] { return algebra_from(ce.at("algebra")); };
  auto pair = [&] { return std::pair<std::size_t, std::size_t>{ce.at("pair")[0].get<std::size_t>() - 1, ce.at("pair")[1].get<std::size_t>() - 1}; };
  if (kind == "associativity_triple") {
    const Algebra a = alg();
    const std::size_t n = a.dim();
    const auto t = ce.at("triple");
    const QVector ei = basis_vector<Rational>(n, t[0].get<std::size_t>() - 1), ej = basis_vector<Rational>(n, t[1].get<std::size_t>() - 1),
                  ek = basis_vector<Rational>(n, t[2].get<std::size_t>() - 1);
    confirmed = a.multiply(a.multiply(ei, ej), ek) != a.multiply(ei, a.multiply(ej, ek));
    reason = "(e_i e_j) e_k versus e_i (e_j e_k)";
  } else if (kind == "leibniz_pair") {
    const auto [i, j] = pair();
    confirmed = !leibniz_holds_at(alg(), qmatrix_from(ce.at("matrix")), i, j);
    reason = "Leibniz identity at the basis pair";
  } else if (kind == "multiplicativity_pair") {
    const auto [i, j] = pair();
    confirmed = !multiplicative_at(alg(), qmatrix_from(ce.at("matrix")), i, j);
    reason = "multiplicativity at the basis pair";
  } else if (kind == "singular") {
    const QMatrix m = qmatrix_from(ce.at("matrix"));
    confirmed = rank(m) < m.rows();
    reason = "rank below dimension";
  } else if (kind == "locder_point") {
    const Algebra a = alg();
    confirmed = !pointwise_membership(derivation_algebra(a), qmatrix_from(ce.at("matrix")), vec_from(ce.at("point")));
    reason = "no derivation D with D(x) = B x";
  } else if (kind == "locder_span") {
    const Algebra a = alg();
    const auto der = derivation_algebra(a);
    confirmed = !exact_space(a, der, c.opt.seed).contains(qmatrix_from(ce.at("matrix")));
    reason = "outside the computed local derivation space";
  } else if (kind == "locaut_point" || kind == "locaut_member_infeasible") {
    const Algebra a = alg();
    const Operator m = parse_operator(ce.at("matrix").dump());
    const json& pt = ce.at("point");
    if (const auto* q = std::get_if<QMatrix>(&m); q && pt[0].is_string()) {
      confirmed = !locaut_feasible_at(a, *q, vec_from(pt), c.opt.tol).feasible;
    } else {
      CVector x;
      for (const auto& z : pt) x.emplace_back(std::stod(z[0].get<std::string>()), std::stod(z[1].get<std::string>()));
      confirmed = !locaut_feasible_at(a, complex_operator(m), x, c.opt.tol).feasible;
    }
    reason = "no automorphism phi with phi(x) = B x";
  } else if (kind == "pattern_violation") {
    const Algebra a = alg();
    confirmed = !pattern_check(*locaut_pattern(a.name()), qmatrix_from(ce.at("matrix"))).member;
    reason = "relations of the local automorphism pattern";
  } else if (kind == "family_mismatch") {
    const Algebra a = alg();
    const QMatrix m = qmatrix_from(ce.at("matrix"));
    confirmed = is_automorphism(a, m) != template_match(automorphism_family(a.name())->family, m).has_value();
    reason = "automorphism test and template membership disagree";
  } else if (kind == "bridge_sample") {
    const Algebra a = alg();
    confirmed = bridge_sample_fails(a, ce.at("direction").get<std::string>(), ce.value("branch", "+"),
                                    complex_operator(parse_operator(ce.at("matrix").dump())));
    reason = "exponential bridge tolerance";
  } else if (kind == "prediction_violation") {
    const Algebra a = alg();
    const auto der = derivation_algebra(a);
    const auto catalog = catalog_template(a.name(), TemplateKind::kDerivation);
    confirmed = !validate_prediction(infer_shape(catalog ? *catalog : derivation_template(der)), exact_space(a, der, c.opt.seed)).passed;
    reason = "shape prediction against the computed space";
  } else if (kind == "criterion") {
    confirmed = !run_criterion(ce.at("id").get<int>(), ce.at("seed").get<std::uint64_t>()).passed;
    reason = "acceptance criterion rerun";
  } else {
    throw InputError("unknown counterexample kind \"" + kind + "\"");
  }
  Outcome o;
  o.result["kind"] = kind;
  o.result["confirmed"] = confirmed;
  o.result["checked"] = reason;
  o.code = confirmed ? kOk : kViolated;
  return o;
}

// ---- output -----------------------------------------------------------------

bool is_operator(const json& j) { return j.is_object() && j.contains("entries") && j.contains("backend"); }

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) return format_double(j.get<double>());
  if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string())
    return j[1].get<std::string>() == "0" ? j[0].get<std::string>() : "(" + j[0].get<std::string>() + "," + j[1].get<std::string>() + ")";
  return j.dump();
}

void render(std::ostream& os, const json& j, const std::string& indent) {
  if (is_operator(j)) {
    for (const auto& row : j.at("entries")) {
      os << indent;
      for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "  " : "") << scalar_text(row[k]);
      os << "\n";
    }
    return;
  }
  for (const auto& [key, v] : j.items()) {
    if (key == "products" && v.is_array()) {
      os << indent << "products:" << (v.empty() ? " none" : "") << "\n";
      for (const auto& p : v)
        os << indent << "  e" << p.at("i").get<int>() << " e" << p.at("j").get<int>() << " += " << scalar_text(p.at("c")) << " e"
           << p.at("k").get<int>() << "\n";
      continue;
    }
    const bool nested = is_operator(v) || v.is_object() ||
                        (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array()) && !(v[0].is_array() && v[0].size() == 2 && v[0][0].is_string()));
    if (!nested) {
      os << indent << key << ": ";
      if (v.is_array()) {
        for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << scalar_text(v[k]);
      } else {
        os << scalar_text(v);
      }
      os << "\n";
      continue;
    }
    os << indent << key << ":\n";
    if (v.is_array()) {
      for (std::size_t k = 0; k < v.size(); ++k) {
        os << indent << "  [" << k + 1 << "]\n";
        if (v[k].is_object()) render(os, v[k], indent + "    ");
        else os << indent << "    " << scalar_text(v[k]) << "\n";
      }
    } else {
      render(os, v, indent + "  ");
    }
  }
}

void emit_suite_text(std::ostream& os, const json& result) {
  for (const auto& r : result.at("criteria"))
    os << (r.at("passed").get<bool>() ? "PASS" : "FAIL") << " criterion " << r.at("id").get<int>() << " ("
       << r.at("title").get<std::string>() << "): " << r.at("detail").get<std::string>() << "\n";
  os << (result.at("all_passed").get<bool>() ? "all criteria passed" : "some criteria FAILED") << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  opt.seed = default_seed();
  CLI::App app{"locsym: derivations, local derivations and local automorphisms of small algebras", "locsym"};
  app.set_version_flag("--version", "locsym 0.1.0");
  app.require_subcommand(0, 1);
  app.add_option("--algebra", opt.algebra, "built-in name (pi2, pi3, zeroN) or algebra file");
  app.add_option("--seed", opt.seed, "random seed (default: LOCSYM_SEED or 20240601)");
  app.add_option("--trials", opt.trials, "number of random trials");
  app.add_option("--tol", opt.tol, "tolerance for floating comparisons");
  app.add_option("--format", opt.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--out", opt.out, "write the report to this path");
  app.add_option("--matrix", opt.matrix, "operator file");
  app.add_option("--mode", opt.mode, "exact or probabilistic (locder basis)");
  app.add_option("--direction", opt.direction, "exp or log (bridge)");
  app.add_option("--branch", opt.branch, "+ or - (bridge on pi3)");
  app.add_option("--verify-counterexample", opt.verify, "re-check the counterexample in a structured report");

  std::string command;
  std::function<Outcome(const Context&)> handler;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Outcome (*fn)(const Context&),
                  const std::string& full) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    s->callback([&, fn, full] {
      command = full;
      handler = fn;
    });
    return s;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->fallthrough();
    g->require_subcommand(1);
    return g;
  };
  CLI::App* alg = group("algebra", "algebra diagnostics");
  leaf(alg, "check", "associativity, power filtration, characteristic sequence", cmd_algebra_check, "algebra check")
      ->add_option("target", opt.target, "name or file");
  CLI::App* der = group("der", "derivations");
  leaf(der, "basis", "basis of Der(A)", cmd_der_basis, "der basis");
  leaf(der, "check", "is --matrix a derivation", cmd_der_check, "der check");
  CLI::App* locder = group("locder", "local derivations");
  leaf(locder, "basis", "basis of LocDer(A)", cmd_locder_basis, "locder basis");
  leaf(locder, "check", "is --matrix a local derivation", cmd_locder_check, "locder check");
  leaf(locder, "witness", "a local derivation that is not a derivation", cmd_locder_witness, "locder witness");
  CLI::App* aut = group("aut", "automorphisms");
  leaf(aut, "check", "is --matrix an automorphism", cmd_aut_check, "aut check");
  leaf(aut, "family-verify", "verify the automorphism template", cmd_aut_family_verify, "aut family-verify");
  CLI::App* locaut = group("locaut", "local automorphisms");
  leaf(locaut, "check", "does --matrix satisfy the local automorphism pattern", cmd_locaut_check, "locaut check");
  leaf(locaut, "verify", "verify the local automorphism pattern", cmd_locaut_verify, "locaut verify");
  leaf(locaut, "witness", "point refuting --matrix as a local automorphism", cmd_locaut_witness, "locaut witness");
  leaf(&app, "exp", "matrix exponential of --matrix", cmd_exp, "exp");
  leaf(&app, "log", "principal logarithm of --matrix", cmd_log, "log");
  leaf(&app, "bridge", "exp/log correspondence between LocDer and LocAut", cmd_bridge, "bridge");
  leaf(&app, "infer", "shape of LocDer predicted from Der, validated", cmd_infer, "infer");
  CLI::App* report = group("report", "reports");
  leaf(report, "geometry", "dimension, components and Lie group verdict", cmd_report_geometry, "report geometry");
  leaf(&app, "suite", "full acceptance battery", cmd_suite, "suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (!opt.verify.empty()) {
    command = "verify-counterexample";
    handler = cmd_verify_counterexample;
  }
  if (!handler) {
    err << app.help();
    return kUsage;
  }

  Outcome o;
  std::string error;
  try {
    o = handler(Context{opt});
  } catch (const UnsupportedError& e) {
    o.code = kUnsupported;
    error = e.what();
  } catch (const NumericError& e) {
    o.code = kUnsupported;
    error = std::string("numeric: ") + e.what();
  } catch (const InputError& e) {
    o.code = kUsage;
    error = e.what();
  } catch (const json::exception& e) {
    o.code = kUsage;
    error = std::string("malformed input: ") + e.what();
  } catch (const std::invalid_argument& e) {
    o.code = kUsage;
    error = std::string("malformed input: ") + e.what();
  }

  std::ostringstream body;
  if (opt.format == "structured") {
    json doc{{"schema_version", kSchemaVersion}, {"command", command}, {"exit_code", o.code}, {"seed", opt.seed}};
    if (!opt.algebra.empty()) doc["algebra"] = opt.algebra;
    if (error.empty()) doc["result"] = o.result;
    else doc["error"] = error;
    if (o.counterexample) doc["counterexample"] = *o.counterexample;
    body << doc.dump(2) << "\n";
  } else if (!error.empty()) {
    err << "locsym " << command << ": " << error << "\n";
  } else {
    if (command == "suite") emit_suite_text(body, o.result);
    else render(body, o.result, "");
    if (o.counterexample) {
      body << "counterexample:\n";
      render(body, *o.counterexample, "  ");
    }
  }
  if (opt.out.empty()) {
    out << body.str();
  } else {
    std::ofstream f(opt.out);
    if (!f) {
      err << "locsym: cannot write " << opt.out << "\n";
      return kUsage;
    }
    f << body.str();
  }
  return o.code;
}

}  // namespace locsym::cli
