#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nij/scalar.hpp"

namespace nij {

bool is_prime(std::uint64_t n);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);
// Smallest r in [0, p) with r*r = a (mod p), if any.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

class FiniteFieldElement {
 public:
  FiniteFieldElement(std::uint64_t value, std::uint64_t modulus);

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  FiniteFieldElement operator-() const;
  friend FiniteFieldElement operator+(FiniteFieldElement a, FiniteFieldElement b);
  friend FiniteFieldElement operator-(FiniteFieldElement a, FiniteFieldElement b);
  friend FiniteFieldElement operator*(FiniteFieldElement a, FiniteFieldElement b);
  friend FiniteFieldElement operator/(FiniteFieldElement a, FiniteFieldElement b);
  friend bool operator==(const FiniteFieldElement&, const FiniteFieldElement&) = default;

 private:
  std::uint64_t value_;
  std::uint64_t modulus_;
};

// Prime field F_p together with the chosen square root of -1, when one exists.
struct ModContext {
  std::uint64_t p;
  std::optional<std::uint64_t> i_root;

  static ModContext for_prime(std::uint64_t p);  // throws NonPrimeModulus
};

std::uint64_t reduce_mod(const mpq_class& q, std::uint64_t p);
std::uint64_t reduce_mod(const GaussianRational& c, const ModContext& ctx);

// Parameter values in [0, p); adjoined symbols may be bound by name, otherwise
// the smallest root of the reduced radicand is used.
using ModAssignment = std::map<std::string, std::uint64_t>;

FiniteFieldElement substitute_mod(const Scalar& s, const ModContext& ctx, const ModAssignment& assignment);

// A Scalar compiled against a fixed variable slot order for repeated fast
// evaluation over F_p.
class CompiledScalar {
 public:
  CompiledScalar() = default;
  CompiledScalar(const Scalar& s, const ModContext& ctx, const std::vector<std::string>& slots);

  // nullopt when the denominator vanishes at `values`.
  std::optional<std::uint64_t> evaluate(std::span<const std::uint64_t> values) const;

 private:
  struct Term {
    std::uint64_t coeff;
    std::vector<std::pair<std::size_t, unsigned>> powers;
  };
  static std::vector<Term> compile(const Polynomial& poly, const ModContext& ctx,
                                   const std::vector<std::string>& slots);
  static std::uint64_t eval(const std::vector<Term>& terms, std::span<const std::uint64_t> values,
                            std::uint64_t p);
  std::uint64_t p_ = 2;
  std::vector<Term> num_;
  std::vector<Term> den_;
};

}  // namespace nij
