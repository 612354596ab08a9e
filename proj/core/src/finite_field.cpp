#include "nij/finite_field.hpp"

#include <algorithm>
#include <functional>

#include "nij/error.hpp"

namespace nij {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  unsigned __int128 result = 1;
  unsigned __int128 b = base % p;
  while (exp > 0) {
    if (exp & 1U) result = result * b % p;
    b = b * b % p;
    exp >>= 1U;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(ErrorKind::DivisionByZero, "zero has no inverse mod " + std::to_string(p));
  return mod_pow(a, p - 2, p);
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  for (std::uint64_t r = 0; r < p; ++r) {
    if (static_cast<unsigned __int128>(r) * r % p == a) return r;
  }
  return std::nullopt;
}

FiniteFieldElement::FiniteFieldElement(std::uint64_t value, std::uint64_t modulus)
    : value_(value % modulus), modulus_(modulus) {}

FiniteFieldElement FiniteFieldElement::operator-() const {
  return {value_ == 0 ? 0 : modulus_ - value_, modulus_};
}

FiniteFieldElement operator+(FiniteFieldElement a, FiniteFieldElement b) {
  return {(a.value_ + b.value_) % a.modulus_, a.modulus_};
}

FiniteFieldElement operator-(FiniteFieldElement a, FiniteFieldElement b) { return a + (-b); }

FiniteFieldElement operator*(FiniteFieldElement a, FiniteFieldElement b) {
  return {static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.value_) * b.value_ % a.modulus_),
          a.modulus_};
}

FiniteFieldElement operator/(FiniteFieldElement a, FiniteFieldElement b) {
  return a * FiniteFieldElement(mod_inverse(b.value_, b.modulus_), b.modulus_);
}

ModContext ModContext::for_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not prime");
  return {p, sqrt_mod(p - 1, p)};
}

std::uint64_t reduce_mod(const mpq_class& q, std::uint64_t p) {
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_class n;
  mpz_class d;
  mpz_mod(n.get_mpz_t(), q.get_num_mpz_t(), pz.get_mpz_t());
  mpz_mod(d.get_mpz_t(), q.get_den_mpz_t(), pz.get_mpz_t());
  if (d == 0) {
    throw Error(ErrorKind::DenominatorVanishes, "coefficient " + q.get_str() + " is not defined mod " + std::to_string(p));
  }
  std::uint64_t nv = n.get_ui();
  std::uint64_t dv = d.get_ui();
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(nv) * mod_inverse(dv, p) % p);
}

std::uint64_t reduce_mod(const GaussianRational& c, const ModContext& ctx) {
  std::uint64_t re = reduce_mod(c.re(), ctx.p);
  if (c.is_real()) return re;
  if (!ctx.i_root) {
    throw Error(ErrorKind::NoSquareRootInField, "-1 has no square root mod " + std::to_string(ctx.p));
  }
  std::uint64_t im = reduce_mod(c.im(), ctx.p);
  return (re + static_cast<std::uint64_t>(static_cast<unsigned __int128>(im) * *ctx.i_root % ctx.p)) % ctx.p;
}

FiniteFieldElement substitute_mod(const Scalar& s, const ModContext& ctx, const ModAssignment& assignment) {
  const RelationSet& rels = s.relations();
  std::map<std::string, std::uint64_t> roots;
  std::function<FiniteFieldElement(const std::string&)> lookup;
  auto coeff = [&](const GaussianRational& c) { return FiniteFieldElement(reduce_mod(c, ctx), ctx.p); };
  lookup = [&](const std::string& var) -> FiniteFieldElement {
    const Polynomial* r = rels.radicand(var);
    if (!r) {
      auto it = assignment.find(var);
      if (it == assignment.end()) throw Error(ErrorKind::UnboundParameter, "no value for parameter '" + var + "'");
      return {it->second, ctx.p};
    }
    if (auto it = roots.find(var); it != roots.end()) return {it->second, ctx.p};
    FiniteFieldElement value = r->evaluate<FiniteFieldElement>(lookup, coeff, FiniteFieldElement(0, ctx.p));
    std::uint64_t root = 0;
    if (auto it = assignment.find(var); it != assignment.end()) {
      root = it->second % ctx.p;
      if (FiniteFieldElement(root, ctx.p) * FiniteFieldElement(root, ctx.p) != value) {
        throw Error(ErrorKind::NoSquareRootInField, "supplied root does not square to the radicand of " + var);
      }
    } else if (auto sr = sqrt_mod(value.value(), ctx.p)) {
      root = *sr;
    } else {
      throw Error(ErrorKind::NoSquareRootInField, var + " has no root mod " + std::to_string(ctx.p));
    }
    roots.emplace(var, root);
    return {root, ctx.p};
  };
  FiniteFieldElement zero(0, ctx.p);
  FiniteFieldElement d = s.denominator().evaluate<FiniteFieldElement>(lookup, coeff, zero);
  if (d.is_zero()) throw Error(ErrorKind::DenominatorVanishes, "denominator vanishes mod " + std::to_string(ctx.p));
  FiniteFieldElement n = s.numerator().evaluate<FiniteFieldElement>(lookup, coeff, zero);
  return n / d;
}

CompiledScalar::CompiledScalar(const Scalar& s, const ModContext& ctx, const std::vector<std::string>& slots)
    : p_(ctx.p), num_(compile(s.numerator(), ctx, slots)), den_(compile(s.denominator(), ctx, slots)) {
  if (p_ >= (std::uint64_t{1} << 32)) {
    throw Error(ErrorKind::SearchSpaceTooLarge, "compiled evaluation needs p < 2^32");
  }
}

std::vector<CompiledScalar::Term> CompiledScalar::compile(const Polynomial& poly, const ModContext& ctx,
                                                          const std::vector<std::string>& slots) {
  std::vector<Term> out;
  for (const auto& [mono, c] : poly.terms()) {
    Term t{reduce_mod(c, ctx), {}};
    if (t.coeff == 0) continue;
    for (const auto& [var, e] : mono.factors()) {
      auto it = std::find(slots.begin(), slots.end(), var);
      if (it == slots.end()) throw Error(ErrorKind::UnboundParameter, "no slot for parameter '" + var + "'");
      t.powers.emplace_back(static_cast<std::size_t>(it - slots.begin()), e);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::uint64_t CompiledScalar::eval(const std::vector<Term>& terms, std::span<const std::uint64_t> values,
                                   std::uint64_t p) {
  std::uint64_t acc = 0;
  for (const auto& t : terms) {
    std::uint64_t v = t.coeff;
    for (const auto& [slot, e] : t.powers) {
      for (unsigned k = 0; k < e; ++k) v = v * values[slot] % p;
    }
    acc = (acc + v) % p;
  }
  return acc;
}

std::optional<std::uint64_t> CompiledScalar::evaluate(std::span<const std::uint64_t> values) const {
  std::uint64_t d = eval(den_, values, p_);
  if (d == 0) return std::nullopt;
  std::uint64_t n = eval(num_, values, p_);
  return n * mod_inverse(d, p_) % p_;
}

}  // namespace nij
