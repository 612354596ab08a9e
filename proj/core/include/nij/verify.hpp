#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "nij/catalog.hpp"
#include "nij/oracle.hpp"
#include "nij/report.hpp"

namespace nij {

// Sections of the verification run:
//   2  algebra catalog: identities, commutativity, catalog integrity, round trips
//   3  Nijenhuis families on the 2-dimensional pre-Lie algebras, with the F_p oracle
//   4  Nijenhuis families on the 3-dimensional associative algebras, with the F_p oracle
//   5  sub-adjacent Lie algebras, Rota-Baxter tables, CYBE solutions, remarks
struct VerifyOptions {
  std::optional<int> section;
  std::uint64_t prime = 5;
  unsigned threads = 0;
  int random_operators = 200;
  std::uint64_t seed = 20240601;
  bool oracle = true;  // false skips every finite-field sweep
};

Report run_verify_paper(const Catalog& catalog, const VerifyOptions& options);

// Sections the completeness of whose family lists does not depend on the field
// (every case split in the derivation is of the form x^2 = 0 => x = 0).
bool completeness_asserted(const std::string& algebra);

// Random operator with small Gaussian-integer entries, about a third of them zero.
LinearOperator random_operator(int dim, std::mt19937_64& rng);

// Square-zero matrices over F_p in enumeration order.
std::vector<FFMatrix> square_zero_ff(int dim, std::uint64_t p);

// parse(print(x)) == x for every object in one catalog file; nullopt on
// success, else a description of the first mismatch.
std::optional<std::string> roundtrip_file(const Catalog& catalog, const std::string& relative_path);

}  // namespace nij
