// Command-line front end over the nij library and the built-in catalog.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nij/catalog.hpp"
#include "nij/error.hpp"
#include "nij/oracle.hpp"
#include "nij/report.hpp"
#include "nij/text_format.hpp"
#include "nij/verify.hpp"

namespace fs = std::filesystem;
using namespace nij;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::string format = "text";
  bool timing = false;
  unsigned threads = 0;
};

const Catalog& catalog() { return Catalog::builtin(); }

std::string render(const Report& r, const Globals& g) {
  if (g.format == "machine") return format_machine(r);
  if (g.format == "json") return format_json(r, g.timing);
  return format_text(r, g.timing);
}

int finish(const Report& r, const Globals& g) {
  std::cout << render(r, g);
  return r.ok() ? 0 : kExitFailure;
}

// Algebras from a file, or the catalog entry with that id. Files may hold
// several algebras; `name` picks one.
struct LoadedAlgebra {
  AlgebraDoc doc;
  std::vector<AlgebraDoc> file_algebras;  // extra context for resolving targets
};

LoadedAlgebra load_algebra(const std::string& spec) {
  if (fs::is_regular_file(spec)) {
    Document d = parse_file(spec, catalog().resolver());
    if (d.algebras.empty()) throw Error(ErrorKind::UnknownId, spec + " defines no algebra");
    return {d.algebras.front(), d.algebras};
  }
  return {catalog().algebra(spec), {}};
}

BasisResolver resolver_with(const std::vector<AlgebraDoc>& extra) {
  auto base = catalog().resolver();
  return [extra, base](const std::string& target) -> std::optional<std::vector<std::string>> {
    for (const auto& a : extra) {
      if (a.table.name() == target) return a.table.basis_names();
    }
    return base(target);
  };
}

std::string pair_text(const PairResidual& w, const std::vector<std::string>& basis) {
  return "(" + basis[w.i] + ", " + basis[w.j] + ") -> " + w.residual.to_string(basis);
}

int cmd_check_algebra(const std::string& file, const Globals& g) {
  Document d = parse_file(file, catalog().resolver());
  Report rep;
  rep.command = "check-algebra " + file;
  for (const auto& a : d.algebras) {
    const auto& t = a.table;
    auto add = [&](const std::string& check, Status s, std::string detail, std::string witness = {}) {
      rep.records.push_back({0, check, t.name(), s, std::move(detail), std::move(witness), 0});
    };
    if (a.lie) {
      try {
        LieAlgebra l(t);
        add("lie", Status::Pass, "antisymmetric, Jacobi on all basis triples");
      } catch (const Error& e) {
        add("lie", Status::Fail, "", e.what());
      }
      continue;
    }
    auto pl = check_pre_lie(t);
    add("pre_lie", pl.holds() ? Status::Pass : Status::Fail, std::to_string(pl.failures.size()) + " failing triples",
        pl.holds() ? "" : pl.failures.front().residual.to_string(t.basis_names()));
    auto as = check_associative(t);
    add("associative", Status::Pass, as.holds() ? "yes" : "no, " + std::to_string(as.failures.size()) + " triples");
    auto co = check_commutative(t);
    add("commutative", Status::Pass,
        co.commutative() ? "yes"
                         : "no, e" + std::to_string(co.witnesses.front().first + 1) + " e" +
                               std::to_string(co.witnesses.front().second + 1));
  }
  return finish(rep, g);
}

int cmd_sub_adjacent(const std::string& file) {
  Document d = parse_file(file, catalog().resolver());
  for (const auto& a : d.algebras) {
    if (a.lie) continue;
    LieAlgebra l = sub_adjacent(a.table, "g" + a.table.name());
    AlgebraDoc out;
    out.table = l.table();
    out.lie = true;
    out.from = {a.table.name()};
    std::cout << print_algebra(out);
  }
  return 0;
}

int cmd_family_check(const std::string& alg_spec, const std::string& file, const FamilyKind& kind,
                     const std::string& label, const Globals& g) {
  LoadedAlgebra alg = load_algebra(alg_spec);
  Document d = parse_file(file, resolver_with(alg.file_algebras));
  Report rep;
  rep.command = label + " " + alg_spec + " " + file;
  const auto& t = alg.doc.table;
  for (const auto& f : d.families) {
    CheckRecord r{0, label, f.id, Status::Pass, "", "", 0};
    if (f.algebra != t.name()) r.detail = "declared on " + f.algebra + ", checked on " + t.name();
    try {
      auto fr = validate_family(t, f, kind);
      if (!fr.pass) {
        r.status = Status::Fail;
        r.witness = pair_text(*fr.witness, t.basis_names());
      }
    } catch (const Error& e) {
      r.status = Status::Fail;
      r.witness = e.what();
    }
    rep.records.push_back(std::move(r));
  }
  return finish(rep, g);
}

int cmd_cybe(const std::string& alg_spec, const std::string& file, const Globals& g) {
  LoadedAlgebra alg = load_algebra(alg_spec);
  LieAlgebra l(alg.doc.table);
  SemidirectDouble dbl(l);
  Document d = parse_file(file, resolver_with(alg.file_algebras));
  Report rep;
  rep.command = "cybe " + alg_spec + " " + file;
  for (const auto& t : d.tensors) {
    CheckRecord r{0, "cybe", t.id, Status::Pass, "on " + t.target, "", 0};
    try {
      const LieAlgebra& space = t.on_double() ? dbl.total() : l;
      Tensor3 res = cybe_residual(space, t.r);
      if (!res.is_zero()) {
        r.status = Status::Fail;
        r.witness = res.to_string(space.basis_names());
      }
    } catch (const Error& e) {
      r.status = Status::Fail;
      r.witness = e.what();
    }
    rep.records.push_back(std::move(r));
  }
  return finish(rep, g);
}

ModAssignment parse_settings(const std::vector<std::string>& sets, std::uint64_t p) {
  ModAssignment out;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected NAME=VALUE, got " + s);
    long v = std::stol(s.substr(eq + 1));
    out[s.substr(0, eq)] = static_cast<std::uint64_t>(((v % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p));
  }
  return out;
}

bool is_lie(const AlgebraDoc& a) { return a.lie; }

int cmd_enumerate(const std::string& alg_spec, std::uint64_t p, long weight, const std::vector<std::string>& sets,
                  const Globals& g) {
  LoadedAlgebra alg = load_algebra(alg_spec);
  ModContext ctx = ModContext::for_prime(p);
  const auto& t = alg.doc.table;
  ModAssignment values = sets.empty() ? default_algebra_values(t, catalog().families_on(t.name()), ctx)
                                      : parse_settings(sets, p);
  FFAlgebra ff = FFAlgebra::reduce(t, ctx, values);
  auto w = static_cast<std::uint32_t>(((weight % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p));
  auto sols = is_lie(alg.doc) ? enumerate_rb_ff(ff, w, g.threads) : enumerate_nijenhuis_ff(ff, g.threads);
  if (g.format == "json") {
    std::cout << "{\"algebra\": \"" << t.name() << "\", \"p\": " << p << ", \"count\": " << sols.size()
              << ", \"matrices\": [";
    for (std::size_t k = 0; k < sols.size(); ++k) std::cout << (k ? ", " : "") << "\"" << to_string(sols[k], t.dim()) << "\"";
    std::cout << "]}\n";
    return 0;
  }
  std::cout << "# " << (is_lie(alg.doc) ? "weight-" + std::to_string(w) + " Rota-Baxter" : std::string("Nijenhuis"))
            << " operators on " << t.name() << " mod " << p;
  for (const auto& [k, v] : values) std::cout << " " << k << "=" << v;
  std::cout << "\n";
  for (const auto& m : sols) std::cout << to_string(m, t.dim()) << "\n";
  std::cout << "# count " << sols.size() << "\n";
  return 0;
}

int cmd_coverage(const std::string& alg_spec, std::uint64_t p, const std::string& families_file,
                 const std::vector<std::string>& sets, const Globals& g) {
  LoadedAlgebra alg = load_algebra(alg_spec);
  ModContext ctx = ModContext::for_prime(p);
  const auto& t = alg.doc.table;
  Document extra;
  std::vector<const ParametricFamily*> fams;
  if (!families_file.empty()) {
    extra = parse_file(families_file, resolver_with(alg.file_algebras));
    for (const auto& f : extra.families) fams.push_back(&f);
  } else {
    fams = alg.doc.lie ? catalog().rb_on(t.name()) : catalog().families_on(t.name());
  }
  FamilyKind kind = alg.doc.lie ? FamilyKind::rota_baxter(Scalar(0)) : FamilyKind::nijenhuis();
  std::optional<ModAssignment> values;
  if (!sets.empty()) values = parse_settings(sets, p);
  CoverageReport cov = family_coverage(t, fams, ctx, kind, values, g.threads);

  Report rep;
  rep.command = "coverage --prime " + std::to_string(p) + " " + alg_spec;
  std::ostringstream d;
  d << cov.total << " solutions, " << cov.matched.size() << " matched, " << cov.unmatched.size() << " unmatched";
  for (const auto& [k, v] : cov.algebra_values) d << ", " << k << "=" << v;
  CheckRecord sound{0, "soundness", t.name(), cov.sound() ? Status::Pass : Status::Fail, d.str(), "", 0};
  if (!cov.sound()) {
    std::vector<std::string> w;
    for (const auto& u : cov.unsound) w.push_back(u.family + " " + to_string(u.matrix, t.dim()));
    std::string s;
    for (const auto& x : w) s += (s.empty() ? "" : "; ") + x;
    sound.witness = s;
  }
  rep.records.push_back(sound);
  CheckRecord comp{0, "completeness", t.name(), Status::Pass, "", "", 0};
  if (!cov.complete()) {
    const bool asserted = !alg.doc.lie && completeness_asserted(t.name());
    comp.status = asserted ? Status::Fail : Status::Finding;
    std::string s;
    for (const auto& m : cov.unmatched) s += (s.empty() ? "" : " ") + to_string(m, t.dim());
    comp.witness = s;
    comp.detail = std::to_string(cov.unmatched.size()) + " solutions outside every family";
  }
  rep.records.push_back(comp);
  for (const auto& f : cov.empty_families) {
    rep.records.push_back({0, "empty_family", f, Status::Finding, "no valid specialization mod " + std::to_string(p), "", 0});
  }
  return finish(rep, g);
}

int cmd_lookup(const std::string& kind, const std::string& id) {
  CatalogEntry e = catalog().lookup(entry_kind_from_string(kind), id);
  if (auto a = std::get_if<const AlgebraDoc*>(&e.payload)) {
    std::cout << print_algebra(**a);
  } else if (auto f = std::get_if<const ParametricFamily*>(&e.payload)) {
    std::cout << print_family(**f, *catalog().basis((*f)->algebra));
  } else if (auto t = std::get_if<const TensorDoc*>(&e.payload)) {
    std::cout << print_tensor(**t, *catalog().basis((*t)->target));
  } else if (auto r = std::get_if<const RemarkDoc*>(&e.payload)) {
    std::cout << print_remark(**r);
  }
  return 0;
}

int cmd_verify(const VerifyOptions& opt, const std::string& output_dir, const Globals& g) {
  Report rep = run_verify_paper(catalog(), opt);
  if (!output_dir.empty()) {
    fs::create_directories(output_dir);
    std::ofstream(fs::path(output_dir) / "report.txt") << format_text(rep, true);
    std::ofstream(fs::path(output_dir) / "report.machine") << format_machine(rep);
    std::ofstream(fs::path(output_dir) / "report.json") << format_json(rep, false);
  }
  return finish(rep, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of Nijenhuis, Rota-Baxter and CYBE tables over structure-constant algebras"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "machine", "json"}));
  app.add_flag("--timing", g.timing, "Include timings in text and json reports");
  app.add_option("--threads", g.threads, "Worker threads for finite-field sweeps (0 = hardware)");

  std::string file;
  std::string alg;
  auto* check_alg = app.add_subcommand("check-algebra", "Identity checks for every algebra in FILE");
  check_alg->add_option("FILE", file)->required();

  auto* sub_adj = app.add_subcommand("sub-adjacent", "Print the commutator Lie algebra of every algebra in FILE");
  sub_adj->add_option("FILE", file)->required();

  auto* nij = app.add_subcommand("nijenhuis-check", "Validate the families in FILE as Nijenhuis operators on ALG");
  nij->add_option("ALG", alg, "Catalog id or algebra file")->required();
  nij->add_option("FILE", file)->required();

  std::string weight_text = "0";
  auto* rb = app.add_subcommand("rb-check", "Validate the families in FILE as Rota-Baxter operators on ALG");
  rb->add_option("--weight", weight_text, "Weight, any scalar expression");
  rb->add_option("ALG", alg)->required();
  rb->add_option("FILE", file)->required();

  auto* cy = app.add_subcommand("cybe", "CYBE residual of every tensor in TENSORFILE over ALG or its double");
  cy->add_option("ALG", alg)->required();
  cy->add_option("TENSORFILE", file)->required();

  std::uint64_t prime = 5;
  long ff_weight = 0;
  std::vector<std::string> sets;
  auto* en = app.add_subcommand("enumerate", "All Nijenhuis (or, on a Lie algebra, Rota-Baxter) maps over F_p");
  en->add_option("--prime", prime, "Prime modulus");
  en->add_option("--weight", ff_weight, "Rota-Baxter weight for Lie algebras");
  en->add_option("--set", sets, "Fix an algebra parameter, NAME=VALUE");
  en->add_option("ALG", alg)->required();

  std::string families_file;
  auto* cov = app.add_subcommand("coverage", "Compare the F_p solution set against the catalog families");
  cov->add_option("--prime", prime, "Prime modulus");
  cov->add_option("--families", families_file, "Family file to use instead of the catalog");
  cov->add_option("--set", sets, "Fix an algebra parameter, NAME=VALUE");
  cov->add_option("ALG", alg)->required();

  std::string kind;
  std::string id;
  auto* look = app.add_subcommand("lookup", "Print a catalog entry");
  look->add_option("KIND", kind, "algebra, nijenhuis_family, rb_operator, cybe_solution or remark")->required();
  look->add_option("ID", id)->required();

  VerifyOptions vopt;
  int section = 0;
  std::string output_dir;
  bool no_oracle = false;
  auto* ver = app.add_subcommand("verify-paper", "Run every catalog check");
  ver->add_option("--section", section,
                  "2 algebras, 3 two-dimensional families, 4 three-dimensional families, 5 Lie/RB/CYBE");
  ver->add_option("--prime", vopt.prime, "Prime for the finite-field oracle");
  ver->add_option("--random", vopt.random_operators, "Random operators per algebra for the identity checks");
  ver->add_option("--output-dir", output_dir, "Also write report.txt, report.machine and report.json here");
  ver->add_flag("--no-oracle", no_oracle, "Skip the finite-field sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check_alg) return cmd_check_algebra(file, g);
    if (*sub_adj) return cmd_sub_adjacent(file);
    if (*nij) return cmd_family_check(alg, file, FamilyKind::nijenhuis(), "nijenhuis-check", g);
    if (*rb) return cmd_family_check(alg, file, FamilyKind::rota_baxter(parse_scalar(weight_text)), "rb-check", g);
    if (*cy) return cmd_cybe(alg, file, g);
    if (*en) return cmd_enumerate(alg, prime, ff_weight, sets, g);
    if (*cov) return cmd_coverage(alg, prime, families_file, sets, g);
    if (*look) return cmd_lookup(kind, id);
    if (*ver) {
      if (section) vopt.section = section;
      vopt.oracle = !no_oracle;
      vopt.threads = g.threads;
      return cmd_verify(vopt, output_dir, g);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
