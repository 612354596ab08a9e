#include <doctest.h>

#include "nij/algebra.hpp"
#include "nij/catalog.hpp"
#include "nij/error.hpp"
#include "nij/text_format.hpp"

using namespace nij;

namespace {

const StructureConstants& alg(const std::string& id) { return Catalog::builtin().algebra(id).table; }

Vector v(int dim, std::initializer_list<std::pair<int, long>> coords) {
  Vector out(dim);
  for (auto [i, c] : coords) out.set(i, Scalar(c));
  return out;
}

StructureConstants parse_one(const std::string& text) {
  Document d = parse_document(text);
  REQUIRE(d.algebras.size() == 1);
  return d.algebras.front().table;
}

}  // namespace

TEST_CASE("product on catalog algebras") {
  const auto& a5 = alg("A5");
  CHECK(product(a5, a5.basis(0), a5.basis(0)) == a5.basis(1));
  const auto& b1 = alg("B1");
  CHECK(product(b1, b1.basis(1), b1.basis(1)) == v(2, {{0, 1}, {1, -1}}));
  CHECK(product(b1, b1.zero(), b1.basis(1)).is_zero());
  CHECK_THROWS_AS(product(b1, Vector(3), b1.basis(0)), Error);
}

TEST_CASE("product is bilinear") {
  const auto& d9 = alg("D9");
  Vector x = v(3, {{0, 2}, {2, -1}});
  Vector y = v(3, {{1, 3}, {2, 1}});
  Vector z = v(3, {{0, 1}, {1, 1}});
  CHECK(product(d9, x + z, y) == product(d9, x, y) + product(d9, z, y));
  CHECK(product(d9, x, y.scaled(Scalar(5))) == product(d9, x, y).scaled(Scalar(5)));
}

TEST_CASE("pre-Lie identity on A and B, associativity on C and D") {
  for (const auto& a : Catalog::builtin().algebras()) {
    CAPTURE(a.table.name());
    CHECK(check_pre_lie(a.table).holds());
    if (a.table.name()[0] == 'C' || a.table.name()[0] == 'D') CHECK(check_associative(a.table).holds());
  }
}

TEST_CASE("pre-Lie residual is symmetric in its first two slots") {
  const auto& b6 = alg("B6");
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) CHECK(pre_lie_residual(b6, i, i, k).is_zero());
}

TEST_CASE("mutated B6 fails the pre-Lie identity") {
  // e1.e1 = e1 instead of 2 e1. Hand expansion:
  //   (e1 e2) e2 - e1 (e2 e2) - (e2 e1) e2 + e2 (e1 e2) = e1 - e1 - 0 + e1 = e1
  // and the (2,1,2) triple is its negative; every other triple vanishes,
  // (1,1,k) included since the identity is symmetric in the first two slots.
  auto m = parse_one("algebra B6m\ndim 2\nbasis e1 e2\ne1 * e1 = e1\ne1 * e2 = e2\ne2 * e2 = e1\nend\n");
  CHECK(pre_lie_residual(m, 0, 0, 1).is_zero());
  CHECK(pre_lie_residual(m, 0, 1, 1) == v(2, {{0, 1}}));
  CHECK(pre_lie_residual(m, 1, 0, 1) == v(2, {{0, -1}}));
  auto rep = check_pre_lie(m);
  CHECK(rep.failures.size() == 2);
  CHECK_THROWS_AS(sub_adjacent(m), Error);
  try {
    sub_adjacent(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPreLie);
  }
}

TEST_CASE("associativity") {
  CHECK(check_associative(alg("D12")).holds());
  CHECK(check_associative(alg("C2")).holds());
  auto b6 = check_associative(alg("B6"));
  CHECK_FALSE(b6.holds());
  // (e2 e2) e2 = e1 e2 = e2, e2 (e2 e2) = e2 e1 = 0
  CHECK(associator(alg("B6"), 1, 1, 1) == v(2, {{1, 1}}));
}

TEST_CASE("commutativity") {
  CHECK(check_commutative(alg("A2")).commutative());
  auto one = parse_one("algebra L1\ndim 1\nbasis e1\ne1 * e1 = 3 e1\nend\n");
  CHECK(check_commutative(one).commutative());
  auto d2 = check_commutative(alg("D2"));
  REQUIRE_FALSE(d2.commutative());
  bool has21 = false;
  for (auto [i, j] : d2.witnesses) has21 = has21 || (i == 1 && j == 0);
  CHECK(has21);
  for (const auto& a : Catalog::builtin().algebras()) {
    char s = a.table.name()[0];
    CAPTURE(a.table.name());
    CHECK(check_commutative(a.table).commutative() == (s == 'A' || s == 'C'));
  }
}

TEST_CASE("sub-adjacent Lie algebras") {
  LieAlgebra g1 = sub_adjacent(alg("B1"));
  CHECK(g1.bracket(g1.table().basis(0), g1.table().basis(1)) == v(2, {{0, 1}}));
  CHECK(g1.bracket(g1.table().basis(1), g1.table().basis(0)) == v(2, {{0, -1}}));
  CHECK(sub_adjacent(alg("A1")).is_abelian());

  LieAlgebra d12 = sub_adjacent(alg("D12"));
  CHECK(d12.bracket(d12.table().basis(0), d12.table().basis(2)) == v(3, {{0, -1}}));
  CHECK(d12.bracket(d12.table().basis(1), d12.table().basis(2)) == v(3, {{1, 1}}));
  CHECK(d12.bracket(d12.table().basis(0), d12.table().basis(1)).is_zero());

  for (const auto& a : Catalog::builtin().algebras()) {
    LieAlgebra l = sub_adjacent(a.table);
    char s = a.table.name()[0];
    CAPTURE(a.table.name());
    CHECK(l.is_abelian() == (s == 'A' || s == 'C'));
    for (int i = 0; i < l.dim(); ++i)
      for (int j = 0; j < l.dim(); ++j) {
        CHECK(l.bracket(l.table().basis(i), l.table().basis(j)) == -l.bracket(l.table().basis(j), l.table().basis(i)));
        for (int k = 0; k < l.dim(); ++k) CHECK(jacobi_residual(l.table(), i, j, k).is_zero());
      }
  }
}

TEST_CASE("sub-adjacent tables equal the stored Lie algebras") {
  const auto& cat = Catalog::builtin();
  for (const auto& lie : cat.lie_algebras()) {
    for (const auto& src : lie.from) {
      CAPTURE(src);
      CHECK(sub_adjacent(alg(src)).table().same_table(lie.table));
    }
  }
  CHECK(sub_adjacent(alg("B3")).table().same_table(sub_adjacent(alg("B4")).table()));
}

TEST_CASE("LieAlgebra refuses non-Lie tables") {
  auto t = parse_one("algebra X\ndim 2\nbasis e1 e2\ne1 * e2 = e1\nend\n");  // no antisymmetric partner
  try {
    LieAlgebra l(t);
    FAIL("expected NotLie");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotLie);
  }
}
