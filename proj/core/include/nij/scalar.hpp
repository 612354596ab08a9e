#pragma once

#include <map>
#include <memory>
#include <string>

#include "nij/gaussian.hpp"
#include "nij/polynomial.hpp"

namespace nij {

// Rewrite rules symbol^2 -> radicand for adjoined square roots. Each symbol has
// exactly one rule and never occurs in its own radicand.
class RelationSet {
 public:
  RelationSet() = default;

  const std::map<std::string, Polynomial, VariableLess>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  const Polynomial* radicand(const std::string& symbol) const;

  RelationSet with(const std::string& symbol, Polynomial radicand) const;
  static std::shared_ptr<const RelationSet> merge(const std::shared_ptr<const RelationSet>& a,
                                                  const std::shared_ptr<const RelationSet>& b);

  // Applies the rules until every adjoined symbol has exponent <= 1.
  Polynomial reduce(const Polynomial& p) const;

 private:
  std::map<std::string, Polynomial, VariableLess> rules_;
};

// Value assignment for exact specialization over Q(i). Adjoined symbols may be
// bound explicitly (by symbol name); otherwise a rational root is looked for.
using Assignment = std::map<std::string, GaussianRational>;

// Element of the rational function field over Q(i) in the declared parameters,
// extended by adjoined square roots. Denominators are kept free of adjoined
// symbols and monic, so zero-testing only inspects the numerator.
class Scalar {
 public:
  Scalar() : num_(), den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(GaussianRational c) : num_(std::move(c)), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)

  static Scalar parameter(const std::string& name);
  static Scalar i() { return Scalar(GaussianRational::i()); }
  // Square root of a polynomial. Constant radicands with an exact root in Q(i)
  // evaluate directly; -1 maps to i; anything else adjoins a symbol.
  static Scalar sqrt(const Polynomial& radicand);
  static Scalar fraction(Polynomial num, Polynomial den,
                         std::shared_ptr<const RelationSet> relations = nullptr);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  const RelationSet& relations() const;
  const std::shared_ptr<const RelationSet>& relation_ptr() const { return rels_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  GaussianRational constant_value() const;  // requires is_constant()
  VariableSet variables() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar inverse() const;
  Scalar pow(int e) const;

  // Field equality (cross-multiplication), independent of representation.
  friend bool operator==(const Scalar& a, const Scalar& b);

  // Full specialization to an element of Q(i).
  GaussianRational substitute(const Assignment& assignment) const;
  // Replaces the named parameters by Scalars, leaving the rest symbolic.
  Scalar substitute_partial(const std::map<std::string, Scalar>& values) const;

  // Re-applies the normal form; idempotent.
  Scalar normalized() const;

  std::string to_string() const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
  std::shared_ptr<const RelationSet> rels_;
};

// Name under which sqrt(radicand) is adjoined.
std::string root_symbol_name(const Polynomial& radicand);

}  // namespace nij
