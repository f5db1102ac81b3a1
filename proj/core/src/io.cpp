#include "locsym/io.hpp"

#include "locsym/error.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace locsym {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed structured text: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field \"") + key + "\" has the wrong type");
  }
}

std::size_t index_field(const json& j, const char* key, std::size_t n) {
  const auto v = field<long long>(j, key);
  if (v < 1 || static_cast<std::size_t>(v) > n)
    throw InputError(std::string("index \"") + key + "\" out of range 1.." + std::to_string(n));
  return static_cast<std::size_t>(v - 1);
}

Rational rational_value(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InputError("rational entries must be \"p/q\" strings");
}

double decimal_value(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw InputError("complex parts must be decimal strings");
  try {
    std::size_t used = 0;
    const std::string s = v.get<std::string>();
    const double d = std::stod(s, &used);
    if (used != s.size()) throw InputError("bad decimal \"" + s + "\"");
    return d;
  } catch (const std::logic_error&) {
    throw InputError("bad decimal \"" + v.get<std::string>() + "\"");
  }
}

std::size_t checked_dim(const json& j) {
  const auto n = field<long long>(j, "dim");
  if (n < 1 || n > 64) throw InputError("dim must be between 1 and 64");
  return static_cast<std::size_t>(n);
}

const json& square_entries(const json& j, std::size_t n) {
  if (!j.contains("entries") || !j.at("entries").is_array() || j.at("entries").size() != n)
    throw InputError("\"entries\" must be an n x n nested list");
  for (const auto& row : j.at("entries"))
    if (!row.is_array() || row.size() != n) throw InputError("\"entries\" must be an n x n nested list");
  return j.at("entries");
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return std::to_string(x);
  return std::string(buf, end);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Algebra parse_algebra(const std::string& text) {
  const json j = parse_json(text);
  const std::size_t n = checked_dim(j);
  Algebra a(j.contains("name") ? field<std::string>(j, "name") : "user", n);
  if (!j.contains("products")) return a;
  if (!j.at("products").is_array()) throw InputError("\"products\" must be a list");
  for (const auto& p : j.at("products")) {
    if (!p.contains("c")) throw InputError("product record lacks \"c\"");
    a.add_product(index_field(p, "i", n), index_field(p, "j", n), index_field(p, "k", n), rational_value(p.at("c")));
  }
  return a;
}

std::string algebra_to_json(const Algebra& a) {
  json products = json::array();
  for (const auto& [ij, v] : a.table())
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (v[k] != 0) products.push_back({{"i", ij.first + 1}, {"j", ij.second + 1}, {"k", k + 1}, {"c", to_string(v[k])}});
  return json{{"name", a.name()}, {"dim", a.dim()}, {"products", products}}.dump(2);
}

Algebra load_algebra(const std::string& name_or_path) {
  if (auto b = builtin_algebra(name_or_path)) return *b;
  return parse_algebra(read_file(name_or_path));
}

Operator parse_operator(const std::string& text) {
  const json j = parse_json(text);
  const std::size_t n = checked_dim(j);
  const std::string backend = j.contains("backend") ? field<std::string>(j, "backend") : "rational";
  const json& e = square_entries(j, n);
  if (backend == "rational") {
    QMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = rational_value(e[r][c]);
    return m;
  }
  if (backend == "complex") {
    CMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const json& z = e[r][c];
        if (z.is_array() && z.size() == 2) m(r, c) = Complex(decimal_value(z[0]), decimal_value(z[1]));
        else m(r, c) = Complex(decimal_value(z), 0.0);
      }
    return m;
  }
  throw InputError("backend must be \"rational\" or \"complex\"");
}

std::string operator_to_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(row);
  }
  return json{{"dim", m.rows()}, {"backend", "rational"}, {"entries", rows}}.dump();
}

std::string operator_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back({format_double(m(r, c).real()), format_double(m(r, c).imag())});
    rows.push_back(row);
  }
  return json{{"dim", m.rows()}, {"backend", "complex"}, {"entries", rows}}.dump();
}

Operator load_operator(const std::string& path) { return parse_operator(read_file(path)); }

MatrixTemplate parse_template(const std::string& text, const std::string& name) {
  const json j = parse_json(text);
  const std::size_t n = checked_dim(j);
  const auto params = field<std::vector<std::string>>(j, "params");
  const json& e = square_entries(j, n);
  std::vector<std::vector<std::string>> rows(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (e[r][c].is_string()) rows[r].push_back(e[r][c].get<std::string>());
      else if (e[r][c].is_number_integer()) rows[r].push_back(std::to_string(e[r][c].get<long>()));
      else throw InputError("template entries must be polynomial strings");
    }
  const auto nonzero = j.contains("nonzero") ? field<std::vector<std::string>>(j, "nonzero") : std::vector<std::string>{};
  return MatrixTemplate::from_strings(name, params, rows, nonzero);
}

std::string template_to_json(const MatrixTemplate& t) {
  json rows = json::array();
  for (std::size_t r = 0; r < t.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < t.dim(); ++c) row.push_back(t.entry(r, c).to_string());
    rows.push_back(row);
  }
  json nonzero = json::array();
  for (const auto& c : t.open_conditions()) nonzero.push_back(c.to_string());
  return json{{"dim", t.dim()}, {"params", t.params()}, {"entries", rows}, {"nonzero", nonzero}}.dump(2);
}

}  // namespace locsym
