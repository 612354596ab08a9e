#include <doctest.h>

#include <random>

#include "nij/catalog.hpp"
#include "nij/verify.hpp"
#include "nij/yangbaxter.hpp"

using namespace nij;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

Tensor2 t2(int dim, std::initializer_list<std::pair<std::array<int, 2>, long>> entries) {
  Tensor2 out(dim);
  for (const auto& [k, v] : entries) out.add(k, Scalar(v));
  return out;
}

}  // namespace

TEST_CASE("coadjoint action") {
  LieAlgebra g1 = cat().lie("g1");
  auto ads = coadjoint(g1);
  // ad*_{e1}(e1*) = -e2*
  CHECK(ads[0].row(0) == -Vector::basis(2, 1));
  LieAlgebra g2 = cat().lie("g2");
  // ad*_{e2}(e3*) = e1*
  CHECK(coadjoint(g2)[1].row(2) == Vector::basis(3, 0));
  LieAlgebra ab = sub_adjacent(cat().algebra("C4").table);
  for (const auto& m : coadjoint(ab)) CHECK(m.is_zero());
  for (const auto& l : cat().lie_algebras()) {
    CAPTURE(l.table.name());
    CHECK(check_coadjoint(cat().lie(l.table.name())).holds());
  }
}

TEST_CASE("semidirect double") {
  SemidirectDouble d(cat().lie("g1"));
  const auto& t = d.total().table();
  CHECK(t.dim() == 4);
  std::vector<std::string> names{"e1", "e2", "e1*", "e2*"};
  CHECK(t.basis_names() == names);
  // nonzero brackets up to antisymmetry: [e1,e2]=e1, [e1,e1*]=-e2*, [e2,e1*]=e1*
  std::map<std::pair<int, int>, Vector> expect{{{0, 1}, Vector::basis(4, 0)},
                                               {{0, 2}, -Vector::basis(4, 3)},
                                               {{1, 2}, Vector::basis(4, 2)}};
  int nonzero = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Vector b = t.basis_product(i, j);
      if (b.is_zero()) continue;
      ++nonzero;
      REQUIRE(expect.count({i, j}));
      CHECK(b == expect.at({i, j}));
    }
  CHECK(nonzero == 3);

  SemidirectDouble ab(sub_adjacent(cat().algebra("A3").table));
  CHECK(ab.total().dim() == 4);
  CHECK(ab.total().is_abelian());

  SemidirectDouble d12(cat().lie("gD12"));
  // [e3, e1*] = -e1*
  CHECK(d12.total().table().basis_product(2, 3) == -Vector::basis(6, 3));

  for (const auto& l : cat().lie_algebras()) {
    SemidirectDouble dd(cat().lie(l.table.name()));
    const auto& tt = dd.total().table();
    const int n = dd.base_dim();
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j) {
        if (i < n && j < n) {
          Vector lifted(2 * n);
          for (const auto& [k, c] : l.table.basis_product(i, j).coords()) lifted.set(k, c);
          CHECK(tt.basis_product(i, j) == lifted);
        }
        if (i >= n && j >= n) CHECK(tt.basis_product(i, j).is_zero());
        for (int k = 0; k < 2 * n; ++k) CHECK(jacobi_residual(tt, i, j, k).is_zero());
      }
  }
}

TEST_CASE("operator to tensor and skewize") {
  LinearOperator r(2);
  r.set_entry(1, 0, Scalar(1));  // R(e2) = e1
  CHECK(operator_to_tensor(r, 2) == t2(4, {{{0, 3}, 1}}));
  CHECK(operator_to_tensor(LinearOperator(2), 2).is_zero());
  CHECK(operator_to_tensor(LinearOperator::identity(2), 2) == t2(4, {{{0, 2}, 1}, {{1, 3}, 1}}));

  CHECK(skewize(t2(4, {{{0, 3}, 1}})) == t2(4, {{{0, 3}, 1}, {{3, 0}, -1}}));
  CHECK(skewize(t2(4, {{{0, 0}, 1}})).is_zero());
  Tensor2 skew = t2(4, {{{0, 1}, 1}, {{1, 0}, -1}});
  CHECK(skewize(skew) == skew.scaled(Scalar(2)));
  Tensor2 any = t2(4, {{{0, 1}, 3}, {{2, 1}, -1}, {{3, 3}, 5}});
  CHECK((skewize(any) + flip(skewize(any))).is_zero());
}

TEST_CASE("CYBE residual on double(g1)") {
  SemidirectDouble d(cat().lie("g1"));
  CHECK(cybe_residual(d, t2(4, {{{0, 3}, 1}, {{3, 0}, -1}})).is_zero());
  CHECK(cybe_residual(d, Tensor2(4)).is_zero());

  // r = e1 (x) e1* - e1* (x) e1, hand expansion of the three double sums
  // (indices e1=0, e2=1, e1*=2, e2*=3):
  //   + e1 (x) e2* (x) e1*   + e2* (x) e1* (x) e1   - e1 (x) e1* (x) e2*
  //   - e2* (x) e1 (x) e1*   + e1* (x) e1 (x) e2*   - e1* (x) e2* (x) e1
  Tensor3 res = cybe_residual(d, t2(4, {{{0, 2}, 1}, {{2, 0}, -1}}));
  Tensor3 expect(4);
  expect.add({0, 3, 2}, Scalar(1));
  expect.add({3, 2, 0}, Scalar(1));
  expect.add({0, 2, 3}, Scalar(-1));
  expect.add({3, 0, 2}, Scalar(-1));
  expect.add({2, 0, 3}, Scalar(1));
  expect.add({2, 3, 0}, Scalar(-1));
  CHECK(res.at({0, 3, 2}) == Scalar(1));
  CHECK(res == expect);
}

TEST_CASE("catalog RB operators give CYBE solutions") {
  for (const auto& f : cat().rb_operators()) {
    LieAlgebra l = cat().lie(f.algebra);
    SemidirectDouble d(l);
    CAPTURE(f.id);
    CHECK(cybe_residual(d, skewize(operator_to_tensor(reduced_matrix(f), l.dim()))).is_zero());
  }
}

TEST_CASE("RB residual and CYBE residual vanish together on random operators") {
  std::mt19937_64 rng(31);
  for (const auto& l : cat().lie_algebras()) {
    LieAlgebra g = cat().lie(l.table.name());
    SemidirectDouble d(g);
    for (int k = 0; k < 50; ++k) {
      LinearOperator r = random_operator(g.dim(), rng);
      bool rb = !first_rota_baxter_failure(g.table(), r, Scalar(0)).has_value();
      bool cy = cybe_residual(d, skewize(operator_to_tensor(r, g.dim()))).is_zero();
      CAPTURE(g.name());
      CHECK(rb == cy);
    }
  }
}

TEST_CASE("every catalog CYBE tensor is skew with zero residual") {
  for (const auto& t : cat().tensors()) {
    CAPTURE(t.id);
    CHECK((t.r + flip(t.r)).is_zero());
    SemidirectDouble d(cat().lie(t.lie()));
    CHECK(cybe_residual(d, t.r).is_zero());
  }
}

TEST_CASE("tensor printing uses starred names") {
  SemidirectDouble d(cat().lie("g1"));
  std::string s = t2(4, {{{0, 3}, 1}, {{3, 0}, -1}}).to_string(d.total().basis_names());
  CHECK(s.find("e2*") != std::string::npos);
  CHECK(s.find("(x)") != std::string::npos);
}
