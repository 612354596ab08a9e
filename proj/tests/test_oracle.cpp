#include <doctest.h>

#include <algorithm>

#include "nij/catalog.hpp"
#include "nij/error.hpp"
#include "nij/oracle.hpp"
#include "nij/verify.hpp"
#include "nij/yangbaxter.hpp"

using namespace nij;

namespace {

const Catalog& cat() { return Catalog::builtin(); }
const ModContext F5 = ModContext::for_prime(5);

FFAlgebra ff(const std::string& id) {
  const auto& a = cat().algebra(id).table;
  return FFAlgebra::reduce(a, F5, default_algebra_values(a, cat().families_on(id), F5));
}

}  // namespace

TEST_CASE("A4 is the zero algebra: every map is Nijenhuis") {
  auto sols = enumerate_nijenhuis_ff(ff("A4"));
  CHECK(sols.size() == 625);
  CHECK(std::is_sorted(sols.begin(), sols.end()));
}

TEST_CASE("A5 solutions are exactly [[a,b],[0,a]]") {
  // e1 e1 = e2, N = [[a,b],[c,d]]. Residuals by hand:
  //   (1,2): -c^2 e1 + c(a - d) e2        so c = 0
  //   (1,1): -c(a - d) e1 + ((a - d)^2 + bc) e2   so then d = a
  //   (2,1) mirrors (1,2), (2,2) is c^2 e2.
  auto sols = enumerate_nijenhuis_ff(ff("A5"));
  std::vector<FFMatrix> expect;
  for (std::uint32_t a = 0; a < 5; ++a)
    for (std::uint32_t b = 0; b < 5; ++b) expect.push_back({a, b, 0, a});
  std::sort(expect.begin(), expect.end());
  CHECK(sols == expect);

  auto cov = family_coverage(cat().algebra("A5").table, cat().families_on("A5"), F5, FamilyKind::nijenhuis());
  CHECK(cov.total == 25);
  CHECK(cov.matched.size() == 25);
  CHECK(cov.unmatched.empty());
  CHECK(cov.sound());
}

TEST_CASE("A1 solutions are the union of its three families") {
  auto cov = family_coverage(cat().algebra("A1").table, cat().families_on("A1"), F5, FamilyKind::nijenhuis());
  CHECK(cov.sound());
  CHECK(cov.complete());
  CHECK(cov.matched.size() + cov.unmatched.size() == cov.total);
}

TEST_CASE("A4 coverage") {
  auto cov = family_coverage(cat().algebra("A4").table, cat().families_on("A4"), F5, FamilyKind::nijenhuis());
  CHECK(cov.total == 625);
  CHECK(cov.matched.size() == 625);
}

TEST_CASE("B6 families are sound over F5") {
  auto cov = family_coverage(cat().algebra("B6").table, cat().families_on("B6"), F5, FamilyKind::nijenhuis());
  CHECK(cov.sound());
  CHECK(cov.empty_families.empty());
}

TEST_CASE("Rota-Baxter enumeration") {
  LieAlgebra ab = sub_adjacent(cat().algebra("A2").table);
  CHECK(enumerate_rb_ff(FFAlgebra::reduce(ab.table(), F5), 0).size() == 625);

  FFAlgebra g1 = FFAlgebra::reduce(cat().lie("g1").table(), F5);
  auto rb = enumerate_rb_ff(g1, 0);
  for (const auto& m : square_zero_ff(2, 5)) CHECK(std::binary_search(rb.begin(), rb.end(), m));

  FFAlgebra dbl = FFAlgebra::reduce(cat().double_of("g1").total().table(), F5);
  auto cy = enumerate_cybe_ff(dbl, 2);
  CHECK(rb == cy);
}

TEST_CASE("square-zero maps mod 5") {
  auto nil = square_zero_ff(2, 5);
  // zero map plus (p^2 - 1) nonzero nilpotents
  CHECK(nil.size() == 25);
  CHECK(std::is_sorted(nil.begin(), nil.end()));
}

TEST_CASE("guards") {
  try {
    (void)search_space_size(5, 16);
    FAIL("expected SearchSpaceTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SearchSpaceTooLarge);
  }
  CHECK(search_space_size(5, 9) == 1953125);
  try {
    (void)ModContext::for_prime(15);
    FAIL("expected NonPrimeModulus");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPrimeModulus);
  }
}

TEST_CASE("enumeration is deterministic and thread-count independent") {
  FFAlgebra b3 = ff("B3");
  auto one = enumerate_nijenhuis_ff(b3, 1);
  auto many = enumerate_nijenhuis_ff(b3, 4);
  CHECK(one == many);
  CHECK(one == enumerate_nijenhuis_ff(b3, 1));
}

TEST_CASE("soundness on one 3-dimensional algebra") {
  auto cov = family_coverage(cat().algebra("C1").table, cat().families_on("C1"), F5, FamilyKind::nijenhuis());
  CHECK(cov.sound());
  CHECK(cov.matched.size() + cov.unmatched.size() == cov.total);
}

TEST_CASE("listed errata show up as unsound specializations") {
  const auto& c5 = cat().algebra("C5").table;
  std::vector<const ParametricFamily*> stated{&cat().family("N_C5^8")};
  auto bad = family_coverage(c5, stated, F5, FamilyKind::nijenhuis());
  CHECK_FALSE(bad.sound());
  std::vector<const ParametricFamily*> fixed{&cat().family("N_C5^8c")};
  CHECK(family_coverage(c5, fixed, F5, FamilyKind::nijenhuis()).sound());
}
