#include "locsym/catalog.hpp"

namespace locsym {
namespace {

using Rows = std::vector<std::vector<std::string>>;

MatrixTemplate der_pi2() {
  return MatrixTemplate::from_strings("der_pi2", {"a11", "a21", "a31", "a34", "a41", "a51", "a54"},
                                      Rows{{"a11", "0", "0", "0", "0"},
                                           {"a21", "2*a11", "0", "0", "0"},
                                           {"a31", "2*a21", "3*a11", "a34", "0"},
                                           {"a41", "0", "0", "a41 + a11", "0"},
                                           {"a51", "2*a41", "0", "a54", "2*(a41 + a11)"}});
}

MatrixTemplate der_pi3() {
  return MatrixTemplate::from_strings("der_pi3", {"a11", "a21", "a31", "a34", "a51", "a54"},
                                      Rows{{"a11", "0", "0", "0", "0"},
                                           {"a21", "2*a11", "0", "0", "0"},
                                           {"a31", "2*a21", "3*a11", "a34", "0"},
                                           {"0", "0", "0", "a11", "0"},
                                           {"a51", "0", "0", "a54", "2*a11"}});
}

MatrixTemplate locder_pi2() {
  return MatrixTemplate::from_strings(
      "locder_pi2", {"b11", "b21", "b22", "b31", "b32", "b33", "b34", "b41", "b51", "b52", "b54"},
      Rows{{"b11", "0", "0", "0", "0"},
           {"b21", "b22", "0", "0", "0"},
           {"b31", "b32", "b33", "b34", "0"},
           {"b41", "0", "0", "b41 + b11", "0"},
           {"b51", "b52", "0", "b54", "b22 + b52"}});
}

MatrixTemplate locder_pi3() {
  return MatrixTemplate::from_strings("locder_pi3", {"b11", "b21", "b31", "b32", "b34", "b51", "b54"},
                                      Rows{{"b11", "0", "0", "0", "0"},
                                           {"b21", "2*b11", "0", "0", "0"},
                                           {"b31", "b32", "3*b11", "b34", "0"},
                                           {"0", "0", "0", "b11", "0"},
                                           {"b51", "0", "0", "b54", "2*b11"}});
}

MatrixTemplate aut_pi2() {
  return MatrixTemplate::from_strings("aut_pi2", {"a11", "a21", "a31", "a34", "a41", "a51", "a54"},
                                      Rows{{"a11", "0", "0", "0", "0"},
                                           {"a21", "a11^2", "0", "0", "0"},
                                           {"a31", "2*a11*a21", "a11^3", "a34", "0"},
                                           {"a41", "0", "0", "a11 + a41", "0"},
                                           {"a51", "2*a11*a41 + a41^2", "0", "a54", "(a11 + a41)^2"}},
                                      {"a11", "a11 + a41"});
}

MatrixTemplate aut_pi3() {
  return MatrixTemplate::from_strings("aut_pi3", {"a11", "a21", "a31", "a34", "a51", "a54"},
                                      Rows{{"a11", "0", "0", "0", "0"},
                                           {"a21", "a11^2", "0", "0", "0"},
                                           {"a31", "2*a11*a21", "a11^3", "a34", "0"},
                                           {"0", "0", "0", "a11", "0"},
                                           {"a51", "0", "0", "a54", "a11^2"}},
                                      {"a11"});
}

MatrixTemplate locaut_pi2() {
  return MatrixTemplate::from_strings(
      "locaut_pi2", {"b11", "b21", "b22", "b31", "b32", "b33", "b34", "b41", "b51", "b52", "b54"},
      Rows{{"b11", "0", "0", "0", "0"},
           {"b21", "b22", "0", "0", "0"},
           {"b31", "b32", "b33", "b34", "0"},
           {"b41", "0", "0", "b41 + b11", "0"},
           {"b51", "b52", "0", "b54", "b22 + b52"}},
      {"b11", "b22", "b33", "b41 + b11", "b22 + b52"});
}

MatrixTemplate locaut_pi3(int sign) {
  return MatrixTemplate::from_strings(sign > 0 ? "locaut_pi3_plus" : "locaut_pi3_minus",
                                      {"b11", "b21", "b31", "b32", "b34", "b51", "b54"},
                                      Rows{{"b11", "0", "0", "0", "0"},
                                           {"b21", "b11^2", "0", "0", "0"},
                                           {"b31", "b32", sign > 0 ? "b11^3" : "-b11^3", "b34", "0"},
                                           {"0", "0", "0", "b11", "0"},
                                           {"b51", "0", "0", "b54", "b11^2"}},
                                      {"b11"});
}

}  // namespace

std::optional<MatrixTemplate> catalog_template(const std::string& algebra, TemplateKind kind, int sign) {
  const bool p2 = algebra == "pi2", p3 = algebra == "pi3";
  if (!p2 && !p3) return std::nullopt;
  switch (kind) {
    case TemplateKind::kDerivation: return p2 ? der_pi2() : der_pi3();
    case TemplateKind::kLocalDerivation: return p2 ? locder_pi2() : locder_pi3();
    case TemplateKind::kAutomorphism: return p2 ? aut_pi2() : aut_pi3();
    case TemplateKind::kLocalAutomorphism: return p2 ? locaut_pi2() : locaut_pi3(sign);
  }
  return std::nullopt;
}

MatrixTemplate without_open_conditions(const MatrixTemplate& t) {
  MatrixTemplate out(t.name() + "_closure", t.dim(), t.params());
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j) out.set_entry(i, j, t.entry(i, j));
  return out;
}

MatrixTemplate with_entry(const MatrixTemplate& t, std::size_t i, std::size_t j, const std::string& entry) {
  MatrixTemplate out = t;
  out.set_entry(i, j, parse_polynomial(entry));
  return out;
}

std::string to_string(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::kDerivation: return "derivation";
    case TemplateKind::kLocalDerivation: return "local-derivation";
    case TemplateKind::kAutomorphism: return "automorphism";
    case TemplateKind::kLocalAutomorphism: return "local-automorphism";
  }
  return "?";
}

}  // namespace locsym
