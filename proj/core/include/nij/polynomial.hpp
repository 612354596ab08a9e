#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nij/gaussian.hpp"

namespace nij {

// Canonical variable order: parameters of the form n<digits> first, then other
// plain identifiers, then adjoined square-root symbols; ties broken by name.
bool variable_less(const std::string& a, const std::string& b);
bool is_adjoined_symbol(const std::string& name);

struct VariableLess {
  bool operator()(const std::string& a, const std::string& b) const { return variable_less(a, b); }
};

using VariableSet = std::set<std::string, VariableLess>;

// Power product, stored as (variable, exponent > 0) pairs sorted by VariableLess.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(const std::string& name, unsigned exponent = 1);

  const std::vector<std::pair<std::string, unsigned>>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree() const;
  unsigned exponent_of(const std::string& name) const;

  Monomial operator*(const Monomial& o) const;
  // Exact quotient when `o` divides *this.
  std::optional<Monomial> divide(const Monomial& o) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);
  Monomial without(const std::string& name) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  std::string to_string() const;

 private:
  std::vector<std::pair<std::string, unsigned>> factors_;
};

// Graded lexicographic order; the comparator sorts greater monomials first so
// that the leading term of a polynomial is terms().begin().
bool grlex_less(const Monomial& a, const Monomial& b);
struct LeadingFirst {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, GaussianRational, LeadingFirst>;

  Polynomial() = default;
  Polynomial(GaussianRational c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)
  static Polynomial variable(const std::string& name);
  static Polynomial term(Monomial m, GaussianRational c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussianRational constant_value() const;  // coefficient of the unit monomial
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const GaussianRational& leading_coefficient() const { return terms_.begin()->second; }

  VariableSet variables() const;
  unsigned degree_in(const std::string& name) const;
  unsigned total_degree() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const GaussianRational& c) const;
  Polynomial times_monomial(const Monomial& m) const;
  Polynomial pow(unsigned e) const;

  // Coefficient of name^k when viewed as a polynomial in `name`.
  Polynomial coefficient_of(const std::string& name, unsigned k) const;

  Monomial monomial_content() const;
  Polynomial divide_by_monomial(const Monomial& m) const;

  // Quotient q with a = q*b if b divides a exactly, otherwise nullopt.
  static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

  // Replaces every occurrence of `name` by `value`.
  Polynomial substitute(const std::string& name, const Polynomial& value) const;

  // Ring-generic evaluation: each variable mapped through `lookup`, each
  // coefficient through `coeff`.
  template <typename T, typename Lookup, typename Coeff>
  T evaluate(Lookup&& lookup, Coeff&& coeff, T zero) const {
    T acc = zero;
    for (const auto& [mono, c] : terms_) {
      T term = coeff(c);
      for (const auto& [var, e] : mono.factors()) {
        T v = lookup(var);
        for (unsigned k = 0; k < e; ++k) term = term * v;
      }
      acc = acc + term;
    }
    return acc;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const GaussianRational& c);
  TermMap terms_;
};

}  // namespace nij
