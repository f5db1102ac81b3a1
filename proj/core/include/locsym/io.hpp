#pragma once

#include "locsym/algebra.hpp"
#include "locsym/matrix_template.hpp"

#include <string>
#include <variant>

namespace locsym {

// File formats use 1-based indices and rationals as "p/q" strings.

Algebra parse_algebra(const std::string& json_text);
std::string algebra_to_json(const Algebra& a);
/// Built-in name ("pi2", "pi3", "zeroN") or path to an algebra file.
Algebra load_algebra(const std::string& name_or_path);

using Operator = std::variant<QMatrix, CMatrix>;

Operator parse_operator(const std::string& json_text);
std::string operator_to_json(const QMatrix& m);
std::string operator_to_json(const CMatrix& m);
Operator load_operator(const std::string& path);

MatrixTemplate parse_template(const std::string& json_text, const std::string& name = "user");
std::string template_to_json(const MatrixTemplate& t);

std::string read_file(const std::string& path);
std::string format_double(double x);  // shortest round-trip decimal

}  // namespace locsym
