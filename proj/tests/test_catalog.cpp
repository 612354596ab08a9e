#include <doctest.h>

#include <set>

#include "nij/catalog.hpp"
#include "nij/error.hpp"
#include "nij/text_format.hpp"
#include "nij/verify.hpp"

using namespace nij;

namespace {

const Catalog& cat() { return Catalog::builtin(); }

ErrorKind parse_error_kind(const std::string& text) {
  try {
    (void)parse_document(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("parse succeeded");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("algebra text format") {
  Document d = parse_document(
      "algebra B1\ndim 2\nbasis e1 e2\ne2 * e1 = -1 e1\ne2 * e2 = 1 e1 + -1 e2\nend\n");
  REQUIRE(d.algebras.size() == 1);
  CHECK(d.algebras[0].table.same_table(cat().algebra("B1").table));

  Document z = parse_document("algebra Z\ndim 2\nbasis e1 e2\nend\n");
  CHECK(z.algebras[0].table.table().empty());
  CHECK(z.algebras[0].table.same_table(cat().algebra("A4").table));
}

TEST_CASE("parser errors") {
  CHECK(parse_error_kind("algebra X\ndim 2\nbasis e1 e2\ne3 * e1 = e1\nend\n") == ErrorKind::IndexOutOfRange);
  CHECK(parse_error_kind("algebra X\ndim 2\nbasis e1 e2\ne1 * e1 = e1\ne1 * e1 = e2\nend\n") ==
        ErrorKind::DuplicateProduct);
  CHECK(parse_error_kind("algebra X\ndim 2\nbasis e1 e2\ne1 * e1 = e1 +\nend\n") == ErrorKind::SyntaxError);
  CHECK(parse_error_kind("algebra X\ndim 2\nbasis e1 e2\ne1 * e1 = e1\n") == ErrorKind::SyntaxError);
  CHECK(parse_error_kind("family F on Nowhere\nparams a\nN e1 = a e1\nend\n") == ErrorKind::UnknownId);

  // SyntaxError carries file, line and column
  try {
    (void)parse_document("algebra X\ndim 2\nbasis e1 e2\ne1 * e1 = (e1\nend\n", {}, "x.alg");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(std::string(e.what()).find("x.alg:4:") != std::string::npos);
  }
}

TEST_CASE("round trip of every catalog file") {
  REQUIRE(cat().files().size() >= 15);
  for (const auto& f : cat().files()) {
    CAPTURE(f);
    auto problem = roundtrip_file(cat(), f);
    CHECK_MESSAGE(!problem.has_value(), problem.value_or(""));
  }
}

TEST_CASE("round trip of families and tensors through print") {
  for (const auto& f : cat().families()) {
    auto basis = *cat().basis(f.algebra);
    std::string text = print_family(f, basis);
    Document d = parse_document(text, cat().resolver());
    REQUIRE(d.families.size() == 1);
    CAPTURE(text);
    CHECK(print_family(d.families[0], basis) == text);
    for (int i = 0; i < f.matrix.dim(); ++i) CHECK(d.families[0].matrix.row(i) == f.matrix.row(i));
  }
  for (const auto& t : cat().tensors()) {
    auto basis = *cat().basis(t.target);
    Document d = parse_document(print_tensor(t, basis), cat().resolver());
    REQUIRE(d.tensors.size() == 1);
    CHECK(d.tensors[0].r == t.r);
  }
}

TEST_CASE("catalog counts") {
  std::map<char, int> series;
  for (const auto& a : cat().algebras()) ++series[a.table.name()[0]];
  CHECK(series == std::map<char, int>{{'A', 5}, {'B', 6}, {'C', 12}, {'D', 12}});
  CHECK(cat().lie_algebras().size() == 8);
  CHECK(cat().families().size() == 132);
  CHECK(cat().rb_operators().size() == 31);
  CHECK(cat().tensors().size() == 26);
  int corrected = 0;
  for (const auto& f : cat().families()) corrected += f.role == FamilyRole::Corrected;
  CHECK(corrected == 5);
}

TEST_CASE("catalog lookup") {
  auto d3 = cat().lookup(EntryKind::Algebra, "D3");
  const auto& t = std::get<const AlgebraDoc*>(d3.payload)->table;
  CHECK(t.basis_product(0, 0) == t.basis(2));
  CHECK(t.basis_product(0, 1) == t.basis(2));
  CHECK(t.basis_product(1, 1) == t.basis(2).scaled(Scalar::parameter("lambda")));
  REQUIRE(t.constraints().size() == 1);
  CHECK(t.constraints()[0] == Scalar::parameter("lambda"));

  auto b6 = cat().lookup(EntryKind::Remark, "B6_rb_zero");
  CHECK(std::get<const RemarkDoc*>(b6.payload)->check == "square_zero_nijenhuis_trivial");

  auto r1 = cat().lookup(EntryKind::CybeSolution, "g1_r1");
  const TensorDoc* tensor = std::get<const TensorDoc*>(r1.payload);
  CHECK(tensor->target == "double(g1)");
  Tensor2 expect(4);
  expect.add({0, 3}, Scalar::parameter("n21"));
  expect.add({3, 0}, -Scalar::parameter("n21"));
  CHECK(tensor->r == expect);

  try {
    (void)cat().lookup(EntryKind::NijenhuisFamily, "N_Z9^1");
    FAIL("expected UnknownId");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownId);
  }
  CHECK(entry_kind_from_string("cybe_solution") == EntryKind::CybeSolution);
}

TEST_CASE("catalog integrity") {
  auto rep = cat().integrity();
  for (const auto& i : rep.issues) MESSAGE(i.id << ": " << i.message);
  CHECK(rep.pass());
}

TEST_CASE("a family pointing at a missing algebra fails integrity") {
  Catalog broken = Catalog::load(NIJ_TEST_FIXTURES "/dangling_catalog");
  auto rep = broken.integrity();
  CHECK_FALSE(rep.pass());
  bool named = false;
  for (const auto& i : rep.issues) named = named || i.message.find("A2") != std::string::npos;
  CHECK(named);
}

TEST_CASE("ids are unique across kinds") {
  std::set<std::string> ids;
  std::size_t n = 0;
  for (const auto& f : cat().families()) ids.insert(f.id), ++n;
  for (const auto& f : cat().rb_operators()) ids.insert(f.id), ++n;
  for (const auto& t : cat().tensors()) ids.insert(t.id), ++n;
  CHECK(ids.size() == n);
}

TEST_CASE("corrected families point at failing listed ones") {
  for (const auto& f : cat().families()) {
    if (f.role != FamilyRole::Corrected) continue;
    CAPTURE(f.id);
    const auto& listed = cat().family(f.corrects);
    const auto& a = cat().algebra(f.algebra).table;
    CHECK(listed.role == FamilyRole::Stated);
    CHECK_FALSE(validate_family(a, listed, FamilyKind::nijenhuis()).pass);
    CHECK(validate_family(a, f, FamilyKind::nijenhuis()).pass);
  }
}
