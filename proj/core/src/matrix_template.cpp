#include "locsym/matrix_template.hpp"

#include <algorithm>
#include <set>

namespace locsym {

MatrixTemplate::MatrixTemplate(std::string name, std::size_t dim, std::vector<std::string> params)
    : name_(std::move(name)), dim_(dim), params_(std::move(params)), entries_(dim * dim) {
  std::set<std::string> seen;
  for (const auto& p : params_)
    if (!seen.insert(p).second) throw InputError("duplicate template parameter " + p);
}

MatrixTemplate MatrixTemplate::from_strings(std::string name, std::vector<std::string> params,
                                            const std::vector<std::vector<std::string>>& rows,
                                            const std::vector<std::string>& nonzero) {
  MatrixTemplate t(std::move(name), rows.size(), std::move(params));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw InputError("template entries must form a square array");
    for (std::size_t j = 0; j < rows.size(); ++j) t.set_entry(i, j, parse_polynomial(rows[i][j]));
  }
  for (const auto& s : nonzero) t.add_open_condition(parse_polynomial(s));
  return t;
}

namespace {

void check_params(const Polynomial& p, const std::vector<std::string>& params, const std::string& name) {
  for (const auto& v : p.variables())
    if (std::find(params.begin(), params.end(), v) == params.end())
      throw InputError("template " + name + " uses undeclared parameter " + v);
}

}  // namespace

void MatrixTemplate::set_entry(std::size_t i, std::size_t j, Polynomial p) {
  if (i >= dim_ || j >= dim_) throw InputError("template entry out of range");
  check_params(p, params_, name_);
  entries_[i * dim_ + j] = std::move(p);
}

void MatrixTemplate::add_open_condition(Polynomial p) {
  check_params(p, params_, name_);
  nonzero_.push_back(std::move(p));
}

bool MatrixTemplate::is_linear() const {
  if (!nonzero_.empty()) return false;
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Polynomial& e) { return e.degree() <= 1 && e.constant_term() == 0; });
}

Subspace MatrixTemplate::linear_span() const {
  if (!is_linear()) throw UnsupportedError("template " + name_ + " is not linear in its parameters");
  std::vector<QVector> gens;
  for (const auto& p : params_) {
    QVector v(dim_ * dim_, Rational(0));
    for (std::size_t k = 0; k < entries_.size(); ++k) v[k] = entries_[k].coefficient_of(p, 1).constant_term();
    gens.push_back(std::move(v));
  }
  return Subspace::span(dim_ * dim_, gens);
}

std::vector<std::pair<std::size_t, std::size_t>> MatrixTemplate::zero_positions() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (entry(i, j).is_zero()) out.emplace_back(i, j);
  return out;
}

std::size_t MatrixTemplate::occurrences(const std::string& param) const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [&](const Polynomial& e) { return e.contains_variable(param); }));
}

}  // namespace locsym
