#include "locsym/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace locsym {

bool NaturalLess::operator()(std::string_view a, std::string_view b) const {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ei = i, ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      std::string_view na = a.substr(i, ei - i), nb = b.substr(j, ej - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ei;
      j = ej;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  NaturalLess less;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first == ib->first) {
      if (ia->second != ib->second) return ia->second > ib->second;
      ++ia;
      ++ib;
    } else {
      return less(ia->first, ib->first);
    }
  }
  return ia != a.end() && ib == b.end();
}

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial m = a;
  for (const auto& [v, e] : b) m[v] += e;
  return m;
}

bool divides(const Monomial& d, const Monomial& m) {
  for (const auto& [v, e] : d) {
    auto it = m.find(v);
    if (it == m.end() || it->second < e) return false;
  }
  return true;
}

Monomial quotient(const Monomial& m, const Monomial& d) {
  Monomial q = m;
  for (const auto& [v, e] : d) {
    auto it = q.find(v);
    it->second -= e;
    if (it->second == 0) q.erase(it);
  }
  return q;
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::variable(const std::string& name) {
  if (name.empty()) throw InputError("empty variable name");
  return monomial(Monomial{{name, 1}}, Rational(1));
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const { return terms_.empty() ? 0 : total_degree(terms_.begin()->first); }

unsigned Polynomial::degree_in(std::string_view var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(var);
    if (it != m.end()) d = std::max(d, it->second);
  }
  return d;
}

std::set<std::string, NaturalLess> Polynomial::variables() const {
  std::set<std::string, NaturalLess> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) out.insert(v);
  return out;
}

bool Polynomial::contains_variable(std::string_view var) const { return degree_in(var) > 0; }

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(multiply(ma, mb), ca * cb);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r(1), base = *this;
  while (e > 0) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return r;
}

Polynomial Polynomial::substitute(std::string_view var, const Polynomial& value) const {
  Polynomial out;
  std::vector<Polynomial> powers{Polynomial(1)};
  for (const auto& [m, c] : terms_) {
    auto it = m.find(var);
    if (it == m.end()) {
      out.add_term(m, c);
      continue;
    }
    const unsigned e = it->second;
    while (powers.size() <= e) powers.push_back(powers.back() * value);
    Monomial rest = m;
    rest.erase(std::string(var));
    out += monomial(rest, c) * powers[e];
  }
  return out;
}

Polynomial Polynomial::derivative(std::string_view var) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(var);
    if (it == m.end()) continue;
    Monomial rest = m;
    const unsigned e = it->second;
    if (e == 1) rest.erase(std::string(var));
    else rest[std::string(var)] = e - 1;
    out.add_term(rest, c * e);
  }
  return out;
}

Polynomial Polynomial::coefficient_of(std::string_view var, unsigned k) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(var);
    const unsigned e = it == m.end() ? 0 : it->second;
    if (e != k) continue;
    Monomial rest = m;
    if (it != m.end()) rest.erase(std::string(var));
    out.add_term(rest, c);
  }
  return out;
}

std::map<Monomial, Polynomial, GrlexGreater> Polynomial::collect(const std::set<std::string, NaturalLess>& vars) const {
  std::map<Monomial, Polynomial, GrlexGreater> out;
  for (const auto& [m, c] : terms_) {
    Monomial inside, outside;
    for (const auto& [v, e] : m) (vars.count(v) ? inside : outside)[v] = e;
    out[inside].add_term(outside, c);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (m.empty() || a != 1) {
      os << locsym::to_string(a);
      need_star = true;
    }
    for (const auto& [v, e] : m) {
      if (need_star) os << '*';
      os << v;
      if (e > 1) os << '^' << e;
      need_star = true;
    }
  }
  return os.str();
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("polynomial parse error at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (eat("+")) p += term();
      else if (eat("-")) p -= term();
      else return p;
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    for (;;) {
      skip();
      if (s_.substr(pos_, 2) == "**") return p;  // handled by power()
      if (eat("*")) {
        p *= unary();
      } else if (eat("/")) {
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        p *= Rational(1) / d.constant_term();
      } else {
        return p;
      }
    }
  }

  Polynomial unary() {
    if (eat("-")) return -unary();
    if (eat("+")) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (eat("^") || eat("**")) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer");
      const unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 64) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(")")) fail("missing ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return Polynomial(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return Polynomial::variable(std::string(s_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return Parser(text).parse(); }

std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& d) {
  if (d.is_zero()) throw InputError("division by the zero polynomial");
  Polynomial r = p, q;
  const Monomial& ld = d.leading_monomial();
  const Rational& lc = d.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!divides(ld, lr)) return std::nullopt;
    Polynomial t = Polynomial::monomial(quotient(lr, ld), r.leading_coefficient() / lc);
    q += t;
    r -= t * d;
  }
  return q;
}

Polynomial primitive_part(const Polynomial& p) {
  if (p.is_zero()) return p;
  mpz_class l = 1, g = 0;
  for (const auto& [m, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& [m, c] : p.terms()) {
    mpz_class n = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale(l, g);
  scale.canonicalize();
  if (p.leading_coefficient() < 0) scale = -scale;
  Polynomial out = p;
  out *= scale;
  return out;
}

std::optional<std::string> solvable_variable(const Polynomial& f) {
  const auto vars = f.variables();
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    if (f.degree_in(*it) != 1) continue;
    const Polynomial a = f.coefficient_of(*it, 1);
    if (a.is_constant()) return *it;
  }
  return std::nullopt;
}

namespace {

void push_unique(std::vector<Polynomial>& out, const Polynomial& f) {
  if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
}

void split(const Polynomial& f, std::vector<Polynomial>& out) {
  if (f.is_constant()) return;
  // Monomial content first: every variable dividing all terms.
  Monomial content;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    if (first) {
      content = m;
      first = false;
      continue;
    }
    for (auto it = content.begin(); it != content.end();) {
      auto jt = m.find(it->first);
      if (jt == m.end()) {
        it = content.erase(it);
      } else {
        it->second = std::min(it->second, jt->second);
        ++it;
      }
    }
  }
  if (!content.empty()) {
    Polynomial rest = *divide_exact(f, Polynomial::monomial(content, Rational(1)));
    for (const auto& [v, e] : content) push_unique(out, Polynomial::variable(v));
    split(rest, out);
    return;
  }
  if (solvable_variable(f)) {
    push_unique(out, primitive_part(f));
    return;
  }
  for (const auto& x : f.variables()) {
    if (f.degree_in(x) != 1) continue;
    const Polynomial a = f.coefficient_of(x, 1), b = f.coefficient_of(x, 0);
    if (auto q = divide_exact(b, a)) {
      split(a, out);
      push_unique(out, primitive_part(Polynomial::variable(x) + *q));
      return;
    }
  }
  throw UnsupportedError("stratification unsupported: pivot factor " + f.to_string() +
                         " is not linear in any coordinate");
}

}  // namespace

std::vector<Polynomial> factor_linear(const Polynomial& p, const std::vector<Polynomial>& known) {
  std::vector<Polynomial> out;
  if (p.is_constant()) return out;
  Polynomial rest = primitive_part(p);
  for (const auto& k0 : known) {
    if (k0.is_constant()) continue;
    const Polynomial k = primitive_part(k0);
    bool hit = false;
    while (!rest.is_constant()) {
      auto q = divide_exact(rest, k);
      if (!q) break;
      rest = *q;
      hit = true;
    }
    if (hit) push_unique(out, k);
  }
  split(rest, out);
  return out;
}

}  // namespace locsym
