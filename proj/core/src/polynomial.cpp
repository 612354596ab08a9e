#include "nij/polynomial.hpp"

#include <algorithm>
#include <cctype>

namespace nij {

namespace {

int variable_group(const std::string& name) {
  if (is_adjoined_symbol(name)) return 2;
  if (name.size() > 1 && name[0] == 'n' &&
      std::all_of(name.begin() + 1, name.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return 0;
  }
  return 1;
}

}  // namespace

bool is_adjoined_symbol(const std::string& name) { return name.rfind("sqrt(", 0) == 0; }

bool variable_less(const std::string& a, const std::string& b) {
  int ga = variable_group(a);
  int gb = variable_group(b);
  if (ga != gb) return ga < gb;
  return a < b;
}

Monomial Monomial::variable(const std::string& name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(name, exponent);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

unsigned Monomial::exponent_of(const std::string& name) const {
  for (const auto& [v, e] : factors_) {
    if (v == name) return e;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && variable_less(a->first, b->first))) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || variable_less(b->first, a->first)) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  Monomial out;
  auto a = factors_.begin();
  for (const auto& [var, e] : o.factors_) {
    while (a != factors_.end() && variable_less(a->first, var)) out.factors_.push_back(*a++);
    if (a == factors_.end() || a->first != var || a->second < e) return std::nullopt;
    if (a->second > e) out.factors_.emplace_back(var, a->second - e);
    ++a;
  }
  while (a != factors_.end()) out.factors_.push_back(*a++);
  return out;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (const auto& [var, e] : a.factors_) {
    unsigned f = b.exponent_of(var);
    if (f > 0) out.factors_.emplace_back(var, std::min(e, f));
  }
  return out;
}

Monomial Monomial::without(const std::string& name) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (f.first != name) out.factors_.push_back(f);
  }
  return out;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [var, e] : factors_) {
    if (!out.empty()) out += "*";
    out += var;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree();
  unsigned db = b.degree();
  if (da != db) return da < db;
  auto x = a.factors().begin();
  auto y = b.factors().begin();
  while (x != a.factors().end() && y != b.factors().end()) {
    if (x->first != y->first) {
      // The side holding the earlier variable has the larger exponent on it.
      return variable_less(y->first, x->first);
    }
    if (x->second != y->second) return x->second < y->second;
    ++x;
    ++y;
  }
  return x == a.factors().end() && y != b.factors().end();
}

Polynomial::Polynomial(GaussianRational c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

Polynomial Polynomial::variable(const std::string& name) {
  return term(Monomial::variable(name), GaussianRational(1));
}

Polynomial Polynomial::term(Monomial m, GaussianRational c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

GaussianRational Polynomial::constant_value() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? GaussianRational{} : it->second;
}

VariableSet Polynomial::variables() const {
  VariableSet out;
  for (const auto& t : terms_) {
    for (const auto& f : t.first.factors()) out.insert(f.first);
  }
  return out;
}

unsigned Polynomial::degree_in(const std::string& name) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.exponent_of(name));
  return d;
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

void Polynomial::add_term(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, -c);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial Polynomial::scaled(const GaussianRational& c) const {
  if (c.is_zero()) return {};
  Polynomial out;
  for (const auto& [m, k] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, k * c);
  return out;
}

Polynomial Polynomial::times_monomial(const Monomial& m) const {
  Polynomial out;
  for (const auto& [mono, c] : terms_) out.terms_.emplace(mono * m, c);
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial out(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) out = out * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return out;
}

Polynomial Polynomial::coefficient_of(const std::string& name, unsigned k) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    if (m.exponent_of(name) == k) out.add_term(m.without(name), c);
  }
  return out;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.begin()->first;
  for (const auto& t : terms_) {
    g = Monomial::gcd(g, t.first);
    if (g.is_one()) break;
  }
  return g;
}

Polynomial Polynomial::divide_by_monomial(const Monomial& m) const {
  Polynomial out;
  for (const auto& [mono, c] : terms_) out.terms_.emplace(*mono.divide(m), c);
  return out;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) return std::nullopt;
  Polynomial rem = a;
  Polynomial quot;
  const Monomial& lb = b.leading_monomial();
  const GaussianRational inv = b.leading_coefficient().inverse();
  while (!rem.is_zero()) {
    auto q = rem.leading_monomial().divide(lb);
    if (!q) return std::nullopt;
    GaussianRational c = rem.leading_coefficient() * inv;
    Polynomial t = Polynomial::term(*q, c);
    quot += t;
    rem -= b * t;
  }
  return quot;
}

Polynomial Polynomial::substitute(const std::string& name, const Polynomial& value) const {
  if (degree_in(name) == 0) return *this;
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exponent_of(name);
    Polynomial t = Polynomial::term(m.without(name), c);
    if (e > 0) t = t * value.pow(e);
    out += t;
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = c.is_real() ? sgn(c.re()) < 0 : (sgn(c.re()) < 0 || (sgn(c.re()) == 0 && sgn(c.im()) < 0));
    GaussianRational mag = negative ? -c : c;
    std::string body;
    if (m.is_one()) {
      body = mag.to_string();
    } else if (mag.is_one()) {
      body = m.to_string();
    } else {
      body = mag.to_string() + "*" + m.to_string();
    }
    if (first) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " + body : " + " + body;
    }
    first = false;
  }
  return out;
}

}  // namespace nij
