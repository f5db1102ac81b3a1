#include "locsym/parametric.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace locsym {

void ParametricSystem::validate() const {
  const std::set<std::string> pr(probes.begin(), probes.end()), pa(params.begin(), params.end());
  for (const auto& eq : equations) {
    if (eq.coeffs.size() != unknowns.size()) throw InputError("parametric equation has the wrong number of coefficients");
    for (const auto& c : eq.coeffs)
      for (const auto& v : c.variables())
        if (!pr.count(v)) throw InputError("coefficient uses non-probe variable " + v);
    for (const auto& v : eq.rhs.variables())
      if (!pr.count(v) && !pa.count(v)) throw InputError("right-hand side uses unknown variable " + v);
    for (const auto& p : params)
      if (eq.rhs.degree_in(p) > 1) throw InputError("right-hand side is not linear in " + p);
  }
}

std::string StratumCase::signature() const {
  std::ostringstream os;
  for (const auto& e : equalities) os << e.to_string() << " = 0; ";
  for (const auto& e : inequations) os << e.to_string() << " != 0; ";
  return os.str();
}

namespace {

using NuMap = std::map<std::string, Rational, NaturalLess>;

NuMap probe_map(const QVector& nu, const std::vector<std::string>& probes) {
  if (nu.size() != probes.size()) throw InputError("probe point has the wrong length");
  NuMap m;
  for (std::size_t i = 0; i < probes.size(); ++i) m[probes[i]] = nu[i];
  return m;
}

Rational eval_at(const Polynomial& p, const NuMap& m) {
  return p.evaluate<Rational>([&](const std::string& v) -> Rational {
    auto it = m.find(v);
    if (it == m.end()) throw InputError("no value for " + v);
    return it->second;
  });
}

}  // namespace

bool StratumCase::contains(const QVector& nu, const std::vector<std::string>& probes) const {
  const NuMap m = probe_map(nu, probes);
  for (const auto& e : equalities)
    if (eval_at(e, m) != 0) return false;
  for (const auto& e : inequations)
    if (eval_at(e, m) == 0) return false;
  return true;
}

QVector linear_form_row(const Polynomial& form, const std::vector<std::string>& params) {
  QVector row(params.size(), Rational(0));
  Polynomial rest = form;
  for (std::size_t j = 0; j < params.size(); ++j) {
    const Polynomial c = form.coefficient_of(params[j], 1);
    if (!c.is_constant()) throw InputError("constraint is not linear in the parameters: " + form.to_string());
    row[j] = c.constant_term();
    rest -= Polynomial::variable(params[j]) * row[j];
  }
  if (!rest.is_zero()) throw InputError("constraint has terms outside the parameters: " + form.to_string());
  return row;
}

std::vector<Polynomial> constraint_forms(const std::vector<QVector>& rows, const std::vector<std::string>& params) {
  const std::size_t n = params.size();
  if (rows.empty()) return {};
  QMatrix rev(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) rev(i, j) = rows[i][n - 1 - j];
  const Rref red = rref(rev);
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < red.reduced.rows(); ++i) {
    Polynomial f;
    for (std::size_t j = 0; j < n; ++j)
      if (red.reduced(i, j) != 0) f += Polynomial::variable(params[n - 1 - j]) * red.reduced(i, j);
    out.push_back(primitive_part(f));
  }
  return out;
}

Subspace CaseTree::solution_space() const {
  const std::size_t m = system.params.size();
  if (constraint_rows.rows() == 0) return Subspace::full(m);
  return nullspace(constraint_rows);
}

const StratumCase& CaseTree::locate(const QVector& nu) const {
  const StratumCase* hit = nullptr;
  for (const auto& l : leaves) {
    if (!l.contains(nu, system.probes)) continue;
    if (hit) throw NumericError("case tree leaves overlap");
    hit = &l;
  }
  if (!hit) throw NumericError("case tree leaves do not cover the probe point");
  return *hit;
}

PointSystem specialize(const ParametricSystem& sys, const QVector& nu) {
  const NuMap m = probe_map(nu, sys.probes);
  PointSystem ps{QMatrix(sys.equations.size(), sys.unknowns.size()), QMatrix(sys.equations.size(), sys.params.size())};
  for (std::size_t e = 0; e < sys.equations.size(); ++e) {
    const auto& eq = sys.equations[e];
    for (std::size_t u = 0; u < sys.unknowns.size(); ++u) ps.lhs(e, u) = eval_at(eq.coeffs[u], m);
    for (std::size_t j = 0; j < sys.params.size(); ++j) ps.rhs_in_params(e, j) = eval_at(eq.rhs.coefficient_of(sys.params[j], 1), m);
  }
  return ps;
}

bool solvable_at(const ParametricSystem& sys, const QVector& nu, const QVector& params) {
  const PointSystem ps = specialize(sys, nu);
  return solve(ps.lhs, ps.rhs_in_params * params).has_value();
}

QMatrix pointwise_constraint_rows(const ParametricSystem& sys, const QVector& nu) {
  const PointSystem ps = specialize(sys, nu);
  // Left null vectors w of lhs; solvability <=> w^T R b = 0 for all w.
  const auto left = nullspace_basis(ps.lhs.transpose());
  QMatrix rows(left.size(), sys.params.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < sys.params.size(); ++j)
      for (std::size_t e = 0; e < left[i].size(); ++e) rows(i, j) += left[i][e] * ps.rhs_in_params(e, j);
  return rows;
}

namespace {

struct Work {
  std::vector<ParametricEquation> eqs;
  std::vector<Polynomial> nonzero;  // normalised factors known nonzero, in free probes
  std::vector<Polynomial> eq_display, ineq_display;
  std::vector<std::pair<std::string, Polynomial>> subs;
  std::vector<QVector> constraint_rows;
  std::size_t depth = 0;
};

bool contains_poly(const std::vector<Polynomial>& v, const Polynomial& p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

class Solver {
 public:
  Solver(const ParametricSystem& sys, std::uint64_t seed)
      : sys_(sys), probe_set_(sys.probes.begin(), sys.probes.end()), seed_(seed) {}

  std::vector<StratumCase> run() {
    Work w;
    w.eqs = sys_.equations;
    recurse(std::move(w));
    return std::move(leaves_);
  }

 private:
  void harvest(Work& w) {
    for (auto it = w.eqs.begin(); it != w.eqs.end();) {
      if (!std::all_of(it->coeffs.begin(), it->coeffs.end(), [](const Polynomial& c) { return c.is_zero(); })) {
        ++it;
        continue;
      }
      for (const auto& [mono, coeff] : it->rhs.collect(probe_set_)) {
        QVector row = linear_form_row(coeff, sys_.params);
        if (std::any_of(row.begin(), row.end(), [](const Rational& q) { return q != 0; }))
          w.constraint_rows.push_back(std::move(row));
      }
      it = w.eqs.erase(it);
    }
  }

  void divide_known(const Work& w, ParametricEquation& eq) const {
    for (const auto& f : w.nonzero) {
      for (;;) {
        std::vector<Polynomial> q;
        bool all = true;
        for (const auto& c : eq.coeffs) {
          if (c.is_zero()) {
            q.emplace_back();
            continue;
          }
          auto d = divide_exact(c, f);
          if (!d) {
            all = false;
            break;
          }
          q.push_back(std::move(*d));
        }
        if (!all) break;
        auto r = divide_exact(eq.rhs, f);
        if (!r) break;
        eq.coeffs = std::move(q);
        eq.rhs = std::move(*r);
      }
    }
  }

  struct Pivot {
    std::size_t eq = 0, unknown = 0;
    std::vector<Polynomial> open_factors;
  };

  Pivot choose(const Work& w) const {
    std::vector<std::size_t> occurrences(sys_.unknowns.size(), 0);
    for (const auto& eq : w.eqs)
      for (std::size_t u = 0; u < eq.coeffs.size(); ++u)
        if (!eq.coeffs[u].is_zero()) ++occurrences[u];
    Pivot best;
    std::tuple<std::size_t, unsigned, std::size_t, std::size_t, std::size_t> best_score{~0ull, ~0u, 0, 0, 0};
    bool have = false;
    for (std::size_t e = 0; e < w.eqs.size(); ++e)
      for (std::size_t u = 0; u < sys_.unknowns.size(); ++u) {
        const Polynomial& c = w.eqs[e].coeffs[u];
        if (c.is_zero()) continue;
        std::vector<Polynomial> open;
        for (auto& f : factor_linear(c, w.nonzero))
          if (!contains_poly(w.nonzero, f)) open.push_back(std::move(f));
        auto score = std::make_tuple(open.size(), c.degree(), occurrences[u], e, u);
        if (!have || score < best_score) {
          have = true;
          best_score = score;
          best = Pivot{e, u, std::move(open)};
        }
      }
    return best;
  }

  static void eliminate(Work& w, const Pivot& p, const Solver& self) {
    const ParametricEquation piv = w.eqs[p.eq];
    const Polynomial& a = piv.coeffs[p.unknown];
    for (std::size_t e = 0; e < w.eqs.size(); ++e) {
      if (e == p.eq) continue;
      ParametricEquation& eq = w.eqs[e];
      const Polynomial c = eq.coeffs[p.unknown];
      if (c.is_zero()) continue;
      for (std::size_t u = 0; u < eq.coeffs.size(); ++u) eq.coeffs[u] = a * eq.coeffs[u] - c * piv.coeffs[u];
      eq.rhs = a * eq.rhs - c * piv.rhs;
      self.divide_known(w, eq);
    }
    w.eqs.erase(w.eqs.begin() + static_cast<std::ptrdiff_t>(p.eq));
  }

  // Substitutes probe x := value; false when an inequation collapses to zero.
  static bool substitute(Work& w, const std::string& x, const Polynomial& value) {
    for (auto& eq : w.eqs) {
      for (auto& c : eq.coeffs) c = c.substitute(x, value);
      eq.rhs = eq.rhs.substitute(x, value);
    }
    for (auto& [v, expr] : w.subs) expr = expr.substitute(x, value);
    w.subs.emplace_back(x, value);
    std::vector<Polynomial> nz;
    for (const auto& g : w.nonzero) {
      const Polynomial h = g.substitute(x, value);
      if (h.is_zero()) return false;
      if (h.is_constant()) continue;
      for (auto& f : factor_linear(h, nz))
        if (!contains_poly(nz, f)) nz.push_back(std::move(f));
    }
    w.nonzero = std::move(nz);
    return true;
  }

  void recurse(Work w) {
    for (;;) {
      harvest(w);
      if (w.eqs.empty()) {
        finish(std::move(w));
        return;
      }
      Pivot p = choose(w);
      if (p.open_factors.empty()) {
        eliminate(w, p, *this);
        continue;
      }
      if (w.depth + 1 > kMaxCaseDepth)
        throw UnsupportedError("stratification unsupported: case tree deeper than " + std::to_string(kMaxCaseDepth));
      const Polynomial f = p.open_factors.front();
      Work nonzero_branch = w;
      nonzero_branch.depth += 1;
      nonzero_branch.nonzero.push_back(f);
      nonzero_branch.ineq_display.push_back(f);
      recurse(std::move(nonzero_branch));

      const auto x = solvable_variable(f);
      if (!x) throw UnsupportedError("stratification unsupported: cannot solve " + f.to_string() + " = 0 linearly");
      const Rational a = f.coefficient_of(*x, 1).constant_term();
      Polynomial value = f - Polynomial::variable(*x) * a;
      value *= Rational(-1) / a;
      Work zero_branch = std::move(w);
      zero_branch.depth += 1;
      zero_branch.eq_display.push_back(f);
      if (substitute(zero_branch, *x, value)) recurse(std::move(zero_branch));
      return;
    }
  }

  void finish(Work w) {
    StratumCase c;
    c.equalities = std::move(w.eq_display);
    c.inequations = std::move(w.ineq_display);
    c.substitutions = std::move(w.subs);
    c.derived_constraints = constraint_forms(w.constraint_rows, sys_.params);
    c.depth = w.depth;
    c.sample = sample_stratum(c, sys_.probes, seed_ + leaves_.size());
    leaves_.push_back(std::move(c));
  }

  const ParametricSystem& sys_;
  std::set<std::string, NaturalLess> probe_set_;
  std::uint64_t seed_;
  std::vector<StratumCase> leaves_;
};

}  // namespace

QVector sample_stratum(const StratumCase& c, const std::vector<std::string>& probes, std::uint64_t seed) {
  Rng rng(seed);
  std::set<std::string> substituted;
  for (const auto& [v, e] : c.substitutions) substituted.insert(v);
  for (std::int64_t bound = 4, attempt = 0; attempt < 4000; ++attempt) {
    if (attempt % 500 == 499) bound *= 8;
    NuMap m;
    for (const auto& p : probes)
      if (!substituted.count(p)) m[p] = rng.nonzero_rational(bound);
    for (const auto& [v, e] : c.substitutions) m[v] = eval_at(e, m);
    QVector nu;
    for (const auto& p : probes) nu.push_back(m.at(p));
    if (c.contains(nu, probes)) return nu;
  }
  throw UnsupportedError("could not sample a point on stratum " + c.signature());
}

CaseTree solve_parametric(const ParametricSystem& sys, std::uint64_t seed) {
  sys.validate();
  CaseTree tree;
  tree.system = sys;
  tree.leaves = Solver(sys, seed).run();
  std::sort(tree.leaves.begin(), tree.leaves.end(),
            [](const StratumCase& a, const StratumCase& b) { return a.signature() < b.signature(); });

  std::vector<QVector> rows;
  for (const auto& l : tree.leaves)
    for (const auto& f : l.derived_constraints) rows.push_back(linear_form_row(f, sys.params));
  tree.aggregated_constraints = constraint_forms(rows, sys.params);
  std::vector<QVector> reduced;
  for (const auto& f : tree.aggregated_constraints) reduced.push_back(linear_form_row(f, sys.params));
  tree.constraint_rows = reduced.empty() ? QMatrix(0, sys.params.size()) : QMatrix::from_rows(reduced);

  const Subspace sol = tree.solution_space();
  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  tree.verified = true;
  for (auto& l : tree.leaves) {
    QVector b(sys.params.size(), Rational(0));
    for (const auto& v : sol.basis()) {
      const Rational c = rng.rational(1000);
      for (std::size_t j = 0; j < b.size(); ++j) b[j] += c * v[j];
    }
    l.verified = solvable_at(sys, l.sample, b);
    tree.verified = tree.verified && l.verified;
  }
  return tree;
}

}  // namespace locsym
