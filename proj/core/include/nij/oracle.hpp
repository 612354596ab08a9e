#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nij/algebra.hpp"
#include "nij/finite_field.hpp"
#include "nij/operators.hpp"

namespace nij {

// Dense structure constants reduced mod p; c[(i*n + j)*n + t] = C_ij^t.
struct FFAlgebra {
  std::string name;
  int dim = 0;
  std::uint64_t p = 5;
  std::vector<std::uint32_t> c;

  // Algebra parameters (k, lambda, ...) must all be bound in `params`.
  static FFAlgebra reduce(const StructureConstants& a, const ModContext& ctx, const ModAssignment& params = {});

  std::uint32_t at(int i, int j, int t) const { return c[(static_cast<std::size_t>(i) * dim + j) * dim + t]; }
};

// n*n entries mod p, row i = N(e_i).
using FFMatrix = std::vector<std::uint32_t>;

std::string to_string(const FFMatrix& m, int dim);

bool is_nijenhuis_ff(const FFAlgebra& a, std::span<const std::uint32_t> n);
bool is_rota_baxter_ff(const FFAlgebra& a, std::span<const std::uint32_t> r, std::uint32_t weight);

// Candidates in row-major order with ascending entry values, so the returned
// list is sorted. Refuses spaces larger than 10^8 candidates.
std::vector<FFMatrix> enumerate_nijenhuis_ff(const FFAlgebra& a, unsigned threads = 0);
std::vector<FFMatrix> enumerate_rb_ff(const FFAlgebra& l, std::uint32_t weight, unsigned threads = 0);
// Maps R on the base whose skew tensor R - R^21 has zero CYBE residual in
// `double_algebra` (base dimension n, dual vectors at n..2n-1).
std::vector<FFMatrix> enumerate_cybe_ff(const FFAlgebra& double_algebra, int base_dim, unsigned threads = 0);

std::uint64_t search_space_size(std::uint64_t p, int entries);  // throws SearchSpaceTooLarge

// Values for the algebra's own parameters: the smallest in 1..p-1 satisfying
// its constraints, keeping every family constraint on those parameters alone
// nonzero and every family radicand a nonzero square mod p; falls back to the
// algebra's constraints alone.
ModAssignment default_algebra_values(const StructureConstants& a, const std::vector<const ParametricFamily*>& families,
                                     const ModContext& ctx);

struct CoverageMatch {
  FFMatrix matrix;
  std::string family;
  ModAssignment assignment;
};

struct CoverageReport {
  std::string algebra;
  std::uint64_t p = 0;
  int dim = 0;
  ModAssignment algebra_values;
  std::size_t total = 0;
  std::vector<CoverageMatch> matched;      // one per solution, first family in catalog order
  std::vector<FFMatrix> unmatched;         // solutions no family reaches
  std::vector<CoverageMatch> unsound;      // family specializations that are not solutions (first 64 kept)
  std::size_t unsound_total = 0;
  std::vector<std::string> unsound_families;
  std::vector<std::string> empty_families; // no valid specialization over F_p
  bool sound() const { return unsound_total == 0; }
  bool complete() const { return unmatched.empty(); }
};

// Specializes every family at every parameter value over F_p (skipping values
// that violate constraints, side conditions or denominators, and radicands
// without a root) and compares against the exhaustive solution set.
CoverageReport family_coverage(const StructureConstants& a, const std::vector<const ParametricFamily*>& families,
                               const ModContext& ctx, const FamilyKind& kind,
                               std::optional<ModAssignment> algebra_values = std::nullopt, unsigned threads = 0);

}  // namespace nij
