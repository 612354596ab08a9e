// One PASS/FAIL line per acceptance criterion. Exit status is 0 when the set
// of failing criteria equals kKnownUnattainable exactly.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "nij/catalog.hpp"
#include "nij/oracle.hpp"
#include "nij/report.hpp"
#include "nij/text_format.hpp"
#include "nij/verify.hpp"
#include "nij/yangbaxter.hpp"

using namespace nij;

namespace {

// Criteria 3 and 7 quantify over the listed families, five of which are not
// Nijenhuis operators; see the erratum entries printed with them.
const std::set<int> kKnownUnattainable{3, 7};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << "s";
  return o.str();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

const Catalog& cat() { return Catalog::builtin(); }

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

const CheckRecord* find(const Report& r, const std::string& check, const std::string& id) {
  for (const auto& c : r.records)
    if (c.check == check && c.id == id) return &c;
  return nullptr;
}

// ---- criteria -------------------------------------------------------------

Outcome algebra_identities() {
  Outcome o;
  auto t0 = Clock::now();
  int pre = 0, assoc = 0;
  for (const auto& a : cat().algebras()) {
    const auto& t = a.table;
    const char s = t.name()[0];
    if (!check_pre_lie(t).holds()) o.fail(t.name() + " is not pre-Lie");
    if (s == 'A' || s == 'B') ++pre;
    if (s == 'C' || s == 'D') {
      ++assoc;
      if (!check_associative(t).holds()) o.fail(t.name() + " is not associative");
    }
  }
  double dt = since(t0);
  if (pre != 11 || assoc != 24) o.fail("expected 11 pre-Lie and 24 associative algebras");
  if (dt >= 1.0) o.fail("took " + fmt_seconds(dt));
  if (o.pass) o.detail = std::to_string(pre) + " pre-Lie, " + std::to_string(assoc) + " associative in " + fmt_seconds(dt);
  return o;
}

Outcome sub_adjacent_tables() {
  // Expected nonzero brackets [e_i, e_j] (i < j, 1-based) by source algebra.
  using Entry = std::tuple<int, int, int, long>;  // i, j, t, coefficient of e_t
  const std::map<std::string, std::vector<Entry>> expect{
      {"B1", {{1, 2, 1, 1}}},  {"B2", {{1, 2, 1, 1}}},  {"B3", {{1, 2, 1, 1}}},  {"B4", {{1, 2, 1, 1}}},
      {"B5", {{1, 2, 1, 1}}},  {"B6", {{1, 2, 2, 1}}},  {"D1", {{1, 2, 3, 1}}},  {"D2", {{1, 2, 3, 1}}},
      {"D3", {{1, 2, 3, 1}}},  {"D4", {{2, 3, 2, -1}}}, {"D5", {{2, 3, 2, 1}}},  {"D6", {{2, 3, 2, -1}}},
      {"D7", {{2, 3, 2, 1}}},  {"D8", {{2, 3, 2, -1}}}, {"D9", {{2, 3, 2, -1}}},
      {"D10", {{1, 3, 1, -1}, {2, 3, 2, -1}}},        {"D11", {{1, 3, 1, 1}, {2, 3, 2, 1}}},
      {"D12", {{1, 3, 1, -1}, {2, 3, 2, 1}}}};
  Outcome o;
  int abelian = 0;
  for (const auto& a : cat().algebras()) {
    const auto& t = a.table;
    LieAlgebra g = sub_adjacent(t);
    const char s = t.name()[0];
    if (s == 'A' || s == 'C') {
      if (!g.is_abelian()) o.fail(t.name() + " has a non-abelian commutator");
      ++abelian;
      continue;
    }
    auto it = expect.find(t.name());
    if (it == expect.end()) {
      o.fail("no expected table for " + t.name());
      continue;
    }
    StructureConstants want(t.name(), t.basis_names());
    for (auto [i, j, k, c] : it->second) {
      Vector v(t.dim());
      v.set(k - 1, Scalar(c));
      want.set_product(i - 1, j - 1, v);
      want.set_product(j - 1, i - 1, -v);
    }
    if (!g.table().same_table(want)) o.fail(t.name() + " commutator differs from the listed table");
  }
  for (const auto& l : cat().lie_algebras()) {
    for (const auto& src : l.from)
      if (!sub_adjacent(cat().algebra(src).table).table().same_table(l.table)) o.fail(l.table.name() + " alias " + src);
  }
  if (o.pass) {
    o.detail = std::to_string(expect.size()) + " tables entry-for-entry, " + std::to_string(abelian) +
               " abelian, " + std::to_string(cat().lie_algebras().size()) + " aliases";
  }
  return o;
}

Outcome nijenhuis_classifications() {
  Outcome o;
  auto t0 = Clock::now();
  int listed = 0, pass = 0;
  std::vector<std::string> failing, fixes;
  bool saw_i = false, saw_root = false;
  for (const auto& f : cat().families()) {
    if (f.role != FamilyRole::Stated) continue;
    ++listed;
    const auto& a = cat().algebra(f.algebra).table;
    if (validate_family(a, f, FamilyKind::nijenhuis()).pass) {
      ++pass;
      for (const auto& row : f.matrix.rows())
        for (const auto& [j, c] : row.coords()) {
          const std::string s = c.to_string();
          saw_root = saw_root || s.find("sqrt(") != std::string::npos;
          saw_i = saw_i || s.find("i*") != std::string::npos;
        }
    } else {
      failing.push_back(f.id);
    }
  }
  for (const auto& f : cat().families()) {
    if (f.role != FamilyRole::Corrected) continue;
    bool ok = validate_family(cat().algebra(f.algebra).table, f, FamilyKind::nijenhuis()).pass;
    fixes.push_back(f.id + (ok ? " passes" : " FAILS"));
  }
  double dt = since(t0);
  if (!saw_i) o.fail("no sqrt(-1) family was checked");
  if (!saw_root) o.fail("no adjoined-root family was checked");
  if (dt >= 60) o.fail("took " + fmt_seconds(dt));
  if (!failing.empty()) {
    o.fail(std::to_string(listed - pass) + " of " + std::to_string(listed) + " listed families have a nonzero residual: " +
           join(failing) + "; corrections: " + join(fixes));
  }
  if (o.pass) o.detail = std::to_string(listed) + " listed families in " + fmt_seconds(dt);
  return o;
}

Outcome random_identities() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  long checks = 0;
  for (const auto& a : cat().algebras()) {
    const auto& t = a.table;
    LieAlgebra g = sub_adjacent(t);
    for (int k = 0; k < 200; ++k) {
      LinearOperator n = random_operator(t.dim(), rng);
      LinearOperator sq = operator_square(n);
      for (int i = 0; i < t.dim(); ++i)
        for (int j = 0; j < t.dim(); ++j) {
          ++checks;
          Vector rb = rota_baxter_residual(t, n, Scalar(0), i, j);
          if (!(nijenhuis_residual(t, n, i, j) == rb + sq.apply(product(t, t.basis(i), t.basis(j)))))
            o.fail("(a) on " + t.name());
          if (!(rota_baxter_residual(g, n, Scalar(0), i, j) == rb - rota_baxter_residual(t, n, Scalar(0), j, i)))
            o.fail("(b) on " + t.name());
          if (!o.pass) return o;
        }
    }
  }
  o.detail = "200 operators on each of " + std::to_string(cat().algebras().size()) + " algebras, " +
             std::to_string(checks) + " basis pairs";
  return o;
}

Outcome rb_tables(const Report& full) {
  Outcome o;
  for (const auto& f : cat().rb_operators()) {
    if (!validate_family(cat().lie(f.algebra).table(), f, FamilyKind::rota_baxter(Scalar(0))).pass) o.fail(f.id);
  }
  for (const char* chart : {"R_g1^3a", "R_g1^3b"}) {
    const auto& f = cat().rb_operator(chart);
    if (!operator_square(reduced_matrix(f)).is_zero()) o.fail(std::string(chart) + " is not square-zero");
  }
  // every square-zero 2x2 map is one of the two charts: count over F5
  {
    ModContext f5 = ModContext::for_prime(5);
    std::vector<const ParametricFamily*> charts{&cat().rb_operator("R_g1^3a"), &cat().rb_operator("R_g1^3b")};
    auto cov = family_coverage(cat().lie("g1").table(), charts, f5, FamilyKind::rota_baxter(Scalar(0)));
    std::set<FFMatrix> reached;
    for (const auto& m : cov.matched) reached.insert(m.matrix);
    std::size_t nonzero_nil = 0;
    for (const auto& m : square_zero_ff(2, 5)) {
      if (std::all_of(m.begin(), m.end(), [](auto x) { return x == 0; })) continue;
      ++nonzero_nil;
      if (!reached.count(m)) o.fail("nilpotent " + to_string(m, 2) + " outside both charts");
    }
    if (nonzero_nil != 24) o.fail("expected 24 nonzero square-zero maps mod 5");
  }
  // derived operator on B6 is zero: no nonzero square-zero Nijenhuis map
  {
    FFAlgebra b6 = FFAlgebra::reduce(cat().algebra("B6").table, ModContext::for_prime(5));
    for (const auto& m : square_zero_ff(2, 5)) {
      bool zero = std::all_of(m.begin(), m.end(), [](auto x) { return x == 0; });
      if (!zero && is_nijenhuis_ff(b6, m)) o.fail("B6 has square-zero Nijenhuis map " + to_string(m, 2));
    }
  }
  const CheckRecord* remark = find(full, "remark.square_zero_nijenhuis_trivial", "B6_rb_zero");
  if (!remark || remark->status != Status::Pass) o.fail("B6 remark not confirmed by verify-paper");
  if (o.pass) o.detail = std::to_string(cat().rb_operators().size()) + " operators, both nilpotent charts, B6 remark";
  return o;
}

Outcome cybe_solutions(const Report& full) {
  Outcome o;
  auto t0 = Clock::now();
  for (const auto& t : cat().tensors()) {
    SemidirectDouble d(cat().lie(t.lie()));
    if (!(t.r + flip(t.r)).is_zero()) o.fail(t.id + " is not skew");
    if (!cybe_residual(d, t.r).is_zero()) o.fail(t.id + " has nonzero residual");
  }
  double dt = since(t0);
  if (dt >= 60) o.fail("took " + fmt_seconds(dt));
  const CheckRecord* v = find(full, "remark.cybe_variants", "g2_r1_variants");
  if (!v || v->status != Status::Finding) {
    o.fail("r1 variant finding missing");
  } else if (v->detail.find("g2_r1_derived") == std::string::npos) {
    o.fail("r1 finding does not name a variant");
  }
  if (o.pass) {
    o.detail = std::to_string(cat().tensors().size()) + " tensors in " + fmt_seconds(dt) + "; FINDING " + v->detail;
  }
  return o;
}

Outcome oracle_soundness(const Report& full) {
  Outcome o;
  ModContext f5 = ModContext::for_prime(5);
  auto a4 = enumerate_nijenhuis_ff(FFAlgebra::reduce(cat().algebra("A4").table, f5));
  if (a4.size() != 625) o.fail("A4 has " + std::to_string(a4.size()) + " solutions");
  // A5: c = 0 from pair (1,2), then (a - d)^2 = 0 from pair (1,1)
  auto a5 = enumerate_nijenhuis_ff(FFAlgebra::reduce(cat().algebra("A5").table, f5));
  std::vector<FFMatrix> want;
  for (std::uint32_t a = 0; a < 5; ++a)
    for (std::uint32_t b = 0; b < 5; ++b) want.push_back({a, b, 0, a});
  if (a5 != want) o.fail("A5 solutions differ from [[a,b],[0,a]]");

  double secs = 0;
  int algebras = 0;
  std::vector<std::string> unsound;
  for (const auto& r : full.records) {
    if (r.check != "oracle.soundness" || (r.section != 3 && r.section != 4)) continue;
    ++algebras;
    secs += r.seconds;
    if (r.status != Status::Pass) unsound.push_back(r.id + " (" + r.detail.substr(r.detail.find(';') + 2) + ")");
  }
  for (const auto& r : full.records)
    if (r.check == "oracle.completeness") secs += r.seconds;
  if (algebras != 35) o.fail("oracle ran on " + std::to_string(algebras) + " algebras");
  if (secs >= 300) o.fail("sweep took " + fmt_seconds(secs));
  if (!unsound.empty()) {
    o.fail("listed families leave the solution set on " + join(unsound) +
           "; with the corrected families every specialization is a solution");
  }
  if (o.pass) o.detail = std::to_string(algebras) + " algebras sound in " + fmt_seconds(secs) + ", A4 625, A5 25";
  return o;
}

Outcome lemma_exhaustive() {
  Outcome o;
  ModContext f5 = ModContext::for_prime(5);
  FFAlgebra g1 = FFAlgebra::reduce(cat().lie("g1").table(), f5);
  FFAlgebra dbl = FFAlgebra::reduce(cat().double_of("g1").total().table(), f5);
  auto rb = enumerate_rb_ff(g1, 0);
  auto cy = enumerate_cybe_ff(dbl, 2);
  std::size_t only_rb = 0, only_cy = 0;
  for (const auto& m : rb) only_rb += !std::binary_search(cy.begin(), cy.end(), m);
  for (const auto& m : cy) only_cy += !std::binary_search(rb.begin(), rb.end(), m);
  if (only_rb) o.fail(std::to_string(only_rb) + " RB maps without a CYBE solution");
  if (only_cy) o.fail(std::to_string(only_cy) + " CYBE solutions that are not RB");
  if (o.pass) o.detail = "625 maps, " + std::to_string(rb.size()) + " in both sets";
  return o;
}

Outcome roundtrip_and_determinism(const Report& first, const VerifyOptions& opts) {
  Outcome o;
  for (const auto& f : cat().files()) {
    if (auto problem = roundtrip_file(cat(), f)) o.fail(f + ": " + *problem);
  }
  Report second = run_verify_paper(cat(), opts);
  std::string a = format_machine(first), b = format_machine(second);
  if (a != b) o.fail("machine reports differ between runs");
  if (o.pass) {
    o.detail = std::to_string(cat().files().size()) + " files round-trip; two runs byte-identical (" +
               std::to_string(a.size()) + " bytes)";
  }
  return o;
}

}  // namespace

int main() {
  VerifyOptions opts;  // full run, p = 5
  std::cout << "running verify-paper...\n" << std::flush;
  auto t0 = Clock::now();
  Report full = run_verify_paper(cat(), opts);
  std::cout << "verify-paper: " << full.count(Status::Pass) << " pass, " << full.count(Status::Fail) << " fail, "
            << full.count(Status::Finding) << " finding in " << fmt_seconds(since(t0)) << "\n";

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"algebra identities", algebra_identities},
      {"sub-adjacent tables", sub_adjacent_tables},
      {"Nijenhuis classifications", nijenhuis_classifications},
      {"operator identities on random operators", random_identities},
      {"Rota-Baxter tables", [&] { return rb_tables(full); }},
      {"CYBE solutions", [&] { return cybe_solutions(full); }},
      {"oracle soundness at p=5", [&] { return oracle_soundness(full); }},
      {"RB/CYBE equivalence on g1 at p=5", lemma_exhaustive},
      {"round trip and determinism", [&] { return roundtrip_and_determinism(full, opts); }},
  };

  std::set<int> failed;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    Outcome out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    if (!out.pass) failed.insert(id);
    std::cout << "criterion " << id << " " << (out.pass ? "PASS" : "FAIL") << "  " << criteria[k].first << ": "
              << out.detail << "\n";
  }

  if (failed == kKnownUnattainable) {
    std::cout << "failing criteria match the known-unattainable set {3, 7}\n";
    return 0;
  }
  std::cout << "failing criteria differ from the known-unattainable set {3, 7}\n";
  return 1;
}
