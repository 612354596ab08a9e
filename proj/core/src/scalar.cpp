#include "nij/scalar.hpp"

#include "nij/error.hpp"

namespace nij {

namespace {

const RelationSet& empty_relations() {
  static const RelationSet kEmpty;
  return kEmpty;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class n = q.get_num();
  mpz_class d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

// Exact square root in Q(i) of a real rational, if one exists.
std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& c) {
  if (!c.is_real()) return std::nullopt;
  if (sgn(c.re()) >= 0) {
    if (auto r = rational_sqrt(c.re())) return GaussianRational(*r);
    return std::nullopt;
  }
  if (auto r = rational_sqrt(mpq_class(-c.re()))) return GaussianRational(mpq_class(0), *r);
  return std::nullopt;
}

// Positive rational content: gcd of numerators over lcm of denominators.
std::optional<mpq_class> real_content(const Polynomial& p) {
  mpz_class g = 0;
  mpz_class l = 1;
  for (const auto& [m, c] : p.terms()) {
    if (!c.is_real()) return std::nullopt;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.re().get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
  }
  mpq_class out(g, l);
  out.canonicalize();
  return out;
}

}  // namespace

const Polynomial* RelationSet::radicand(const std::string& symbol) const {
  auto it = rules_.find(symbol);
  return it == rules_.end() ? nullptr : &it->second;
}

RelationSet RelationSet::with(const std::string& symbol, Polynomial radicand) const {
  RelationSet out = *this;
  out.rules_.emplace(symbol, std::move(radicand));
  return out;
}

std::shared_ptr<const RelationSet> RelationSet::merge(const std::shared_ptr<const RelationSet>& a,
                                                      const std::shared_ptr<const RelationSet>& b) {
  if (!a || a->empty() || a == b) return b ? b : a;
  if (!b || b->empty()) return a;
  bool b_in_a = true;
  for (const auto& [s, r] : b->rules_) {
    if (!a->rules_.count(s)) {
      b_in_a = false;
      break;
    }
  }
  if (b_in_a) return a;
  auto out = std::make_shared<RelationSet>(*a);
  for (const auto& [s, r] : b->rules_) out->rules_.emplace(s, r);
  return out;
}

Polynomial RelationSet::reduce(const Polynomial& p) const {
  if (rules_.empty()) return p;
  Polynomial current = p;
  for (bool changed = true; changed;) {
    changed = false;
    Polynomial next;
    for (const auto& [mono, c] : current.terms()) {
      Polynomial term = Polynomial::term(mono, c);
      for (const auto& [var, e] : mono.factors()) {
        if (e < 2) continue;
        const Polynomial* r = radicand(var);
        if (!r) continue;
        Monomial rest = mono.without(var) * Monomial::variable(var, e % 2);
        term = Polynomial::term(rest, c) * r->pow(e / 2);
        changed = true;
        break;
      }
      next += term;
    }
    current = std::move(next);
  }
  return current;
}

std::string root_symbol_name(const Polynomial& radicand) { return "sqrt(" + radicand.to_string() + ")"; }

Scalar Scalar::parameter(const std::string& name) { return Scalar(Polynomial::variable(name)); }

Scalar Scalar::sqrt(const Polynomial& radicand) {
  if (radicand.is_constant()) {
    GaussianRational c = radicand.constant_value();
    if (auto r = gaussian_sqrt(c)) return Scalar(*r);
  }
  // Pull a square rational content out of the radicand so that equal roots
  // up to a rational factor share one symbol.
  Scalar factor(1);
  Polynomial core = radicand;
  if (!radicand.is_constant()) {
    if (auto content = real_content(radicand); content && *content != 1) {
      if (auto r = rational_sqrt(*content)) {
        factor = Scalar(GaussianRational(*r));
        core = radicand.scaled(GaussianRational(mpq_class(1 / *content)));
      }
    }
  }
  for (const auto& v : core.variables()) {
    if (is_adjoined_symbol(v)) throw Error(ErrorKind::SyntaxError, "nested square roots are not supported");
  }
  std::string name = root_symbol_name(core);
  auto rels = std::make_shared<RelationSet>(RelationSet().with(name, core));
  Scalar out = Scalar::fraction(Polynomial::variable(name), Polynomial(1), rels);
  return out * factor;
}

Scalar Scalar::fraction(Polynomial num, Polynomial den, std::shared_ptr<const RelationSet> relations) {
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  Scalar out;
  out.num_ = std::move(num);
  out.den_ = std::move(den);
  out.rels_ = std::move(relations);
  out.normalize();
  return out;
}

const RelationSet& Scalar::relations() const { return rels_ ? *rels_ : empty_relations(); }

bool Scalar::is_one() const { return num_ == den_; }

GaussianRational Scalar::constant_value() const {
  return num_.constant_value() / den_.constant_value();
}

VariableSet Scalar::variables() const {
  VariableSet out = num_.variables();
  for (const auto& v : den_.variables()) out.insert(v);
  return out;
}

void Scalar::normalize() {
  const RelationSet& rels = relations();
  if (!rels.empty()) {
    num_ = rels.reduce(num_);
    den_ = rels.reduce(den_);
    // Rationalize: multiply through by the conjugate in each adjoined symbol.
    for (bool again = true; again;) {
      again = false;
      for (const auto& v : den_.variables()) {
        if (!rels.radicand(v)) continue;
        Polynomial a = den_.coefficient_of(v, 0);
        Polynomial b = den_.coefficient_of(v, 1);
        Polynomial conj = a - b * Polynomial::variable(v);
        num_ = rels.reduce(num_ * conj);
        den_ = rels.reduce(den_ * conj);
        again = true;
        break;
      }
    }
  }
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "denominator reduces to zero");
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    Monomial g = Monomial::gcd(num_.monomial_content(), den_.monomial_content());
    if (!g.is_one()) {
      num_ = num_.divide_by_monomial(g);
      den_ = den_.divide_by_monomial(g);
    }
    if (!den_.is_constant()) {
      if (auto q = Polynomial::divide_exact(num_, den_)) {
        num_ = std::move(*q);
        den_ = Polynomial(1);
      } else if (!num_.is_constant()) {
        if (auto q2 = Polynomial::divide_exact(den_, num_)) {
          num_ = Polynomial(1);
          den_ = std::move(*q2);
        }
      }
    }
  }
  GaussianRational lc = den_.leading_coefficient();
  if (!lc.is_one()) {
    GaussianRational inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

Scalar Scalar::normalized() const {
  Scalar out = *this;
  out.normalize();
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  out.num_ = -num_;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  rels_ = RelationSet::merge(rels_, o.rels_);
  if (den_ == o.den_) {
    num_ += o.num_;
    if (den_.is_constant() && (!rels_ || rels_->empty())) {
      if (num_.is_zero()) den_ = Polynomial(1);
      return *this;
    }
  } else if (auto q = Polynomial::divide_exact(o.den_, den_)) {
    num_ = num_ * *q + o.num_;
    den_ = o.den_;
  } else if (auto q2 = Polynomial::divide_exact(den_, o.den_)) {
    num_ += o.num_ * *q2;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Scalar();
  rels_ = RelationSet::merge(rels_, o.rels_);
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  bool plain = num_.is_constant() && den_.is_constant();
  if (plain && (!rels_ || rels_->empty())) {
    GaussianRational lc = den_.leading_coefficient();
    if (!lc.is_one()) {
      num_ = num_.scaled(lc.inverse());
      den_ = Polynomial(1);
    }
    return *this;
  }
  normalize();
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "division by a zero scalar");
  return Scalar::fraction(den_, num_, rels_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar out(1);
  Scalar base = *this;
  auto k = static_cast<unsigned>(e);
  while (k > 0) {
    if (k & 1U) out *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.den_ == b.den_ && a.num_ == b.num_) return true;
  return (a - b).is_zero();
}

GaussianRational Scalar::substitute(const Assignment& assignment) const {
  const RelationSet& rels = relations();
  std::function<GaussianRational(const std::string&)> lookup;
  std::map<std::string, GaussianRational> roots;
  lookup = [&](const std::string& var) -> GaussianRational {
    if (auto it = assignment.find(var); it != assignment.end() && !rels.radicand(var)) return it->second;
    const Polynomial* r = rels.radicand(var);
    if (!r) throw Error(ErrorKind::UnboundParameter, "no value for parameter '" + var + "'");
    if (auto it = roots.find(var); it != roots.end()) return it->second;
    GaussianRational value = r->evaluate<GaussianRational>(
        lookup, [](const GaussianRational& c) { return c; }, GaussianRational{});
    GaussianRational root;
    if (auto it = assignment.find(var); it != assignment.end()) {
      root = it->second;
      if (!(root * root == value)) {
        throw Error(ErrorKind::NoSquareRootInField,
                    "supplied root " + root.to_string() + " does not square to " + value.to_string());
      }
    } else if (auto s = gaussian_sqrt(value)) {
      root = *s;
    } else {
      throw Error(ErrorKind::NoSquareRootInField, var + " has no root in Q(i) at this point");
    }
    roots.emplace(var, root);
    return root;
  };
  auto id = [](const GaussianRational& c) { return c; };
  GaussianRational d = den_.evaluate<GaussianRational>(lookup, id, GaussianRational{});
  if (d.is_zero()) throw Error(ErrorKind::DenominatorVanishes, "denominator " + den_.to_string() + " vanishes");
  GaussianRational n = num_.evaluate<GaussianRational>(lookup, id, GaussianRational{});
  return n / d;
}

Scalar Scalar::substitute_partial(const std::map<std::string, Scalar>& values) const {
  auto lookup = [&](const std::string& var) -> Scalar {
    if (auto it = values.find(var); it != values.end()) return it->second;
    return Scalar::fraction(Polynomial::variable(var), Polynomial(1), rels_);
  };
  auto coeff = [](const GaussianRational& c) { return Scalar(c); };
  Scalar n = num_.evaluate<Scalar>(lookup, coeff, Scalar());
  Scalar d = den_.evaluate<Scalar>(lookup, coeff, Scalar());
  if (d.is_zero()) throw Error(ErrorKind::DenominatorVanishes, "denominator " + den_.to_string() + " vanishes");
  return n / d;
}

std::string Scalar::to_string() const {
  if (den_ == Polynomial(1)) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  bool simple_den = den_.terms().size() == 1 && den_.leading_coefficient().is_one() &&
                    den_.leading_monomial().factors().size() == 1;
  bool rational_den = den_.is_constant() && den_.constant_value().is_real();
  if (!simple_den && !rational_den) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace nij
