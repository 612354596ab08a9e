#include "nij/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>

#include "nij/error.hpp"

#ifndef NIJ_DEFAULT_CATALOG_DIR
#define NIJ_DEFAULT_CATALOG_DIR "catalog"
#endif

namespace nij {

namespace fs = std::filesystem;

std::string to_string(EntryKind kind) {
  switch (kind) {
    case EntryKind::Algebra:
      return "algebra";
    case EntryKind::NijenhuisFamily:
      return "nijenhuis_family";
    case EntryKind::RbOperator:
      return "rb_operator";
    case EntryKind::CybeSolution:
      return "cybe_solution";
    case EntryKind::Remark:
      return "remark";
  }
  return "?";
}

EntryKind entry_kind_from_string(const std::string& s) {
  for (auto k : {EntryKind::Algebra, EntryKind::NijenhuisFamily, EntryKind::RbOperator, EntryKind::CybeSolution,
                 EntryKind::Remark}) {
    if (to_string(k) == s) return k;
  }
  if (s == "family") return EntryKind::NijenhuisFamily;
  if (s == "rb") return EntryKind::RbOperator;
  if (s == "cybe" || s == "tensor") return EntryKind::CybeSolution;
  throw Error(ErrorKind::UnknownId, "unknown entry kind '" + s + "'");
}

std::string Catalog::default_dir() {
  if (const char* env = std::getenv("NIJ_CATALOG_DIR"); env && *env) return env;
  // build tree first, then the installed copy
  if (fs::is_directory(NIJ_DEFAULT_CATALOG_DIR)) return NIJ_DEFAULT_CATALOG_DIR;
  return NIJ_INSTALLED_CATALOG_DIR;
}

const Catalog& Catalog::builtin() {
  static const Catalog c = load(default_dir());
  return c;
}

namespace {

std::vector<fs::path> files_with_extension(const fs::path& dir, const std::string& ext) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class Map>
const auto& find_or_throw(const Map& ix, const std::string& id, const std::string& what) {
  auto it = ix.find(id);
  if (it == ix.end()) throw Error(ErrorKind::UnknownId, "no " + what + " '" + id + "' in the catalog");
  return it->second;
}

}  // namespace

Catalog Catalog::load(const std::string& dir) {
  Catalog c;
  c.dir_ = dir;
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Io, "catalog directory " + dir + " not found");
  // Algebras first: every other file refers to them by name.
  const std::pair<const char*, const char*> layout[] = {
      {"algebras", ".alg"}, {"families", ".fam"}, {"rb", ".fam"}, {"cybe", ".tns"}, {"remarks", ".rmk"}};
  for (const auto& [sub, ext] : layout) {
    for (const auto& path : files_with_extension(fs::path(dir) / sub, ext)) {
      c.files_.push_back((fs::path(sub) / path.filename()).generic_string());
      const std::string rel = c.files_.back();
      try {
        c.add(parse_file(path.string(), c.resolver()), sub);
      } catch (const Error& e) {
        // a dangling reference skips the file and fails integrity; bad syntax still throws
        if (e.kind() != ErrorKind::UnknownId) throw;
        c.load_issues_.push_back({rel, e.what()});
      }
      c.index();
    }
  }
  return c;
}

void Catalog::add(Document doc, const std::string& subdir) {
  auto misplaced = [&](const std::string& id, const std::string& what) {
    load_issues_.push_back({id, what + " found under " + subdir + "/"});
  };
  for (auto& a : doc.algebras) {
    if (subdir != "algebras") misplaced(a.table.name(), "algebra block");
    (a.lie ? lie_ : algebras_).push_back(std::move(a));
  }
  for (auto& f : doc.families) {
    if (subdir == "rb") rb_.push_back(std::move(f));
    else {
      if (subdir != "families") misplaced(f.id, "family block");
      families_.push_back(std::move(f));
    }
  }
  for (auto& t : doc.tensors) {
    if (subdir != "cybe") misplaced(t.id, "tensor block");
    tensors_.push_back(std::move(t));
  }
  for (auto& r : doc.remarks) {
    if (subdir != "remarks") misplaced(r.id, "remark block");
    remarks_.push_back(std::move(r));
  }
}

void Catalog::index() {
  auto build = [&](auto& ix, const auto& items, auto id_of, const std::string& what) {
    ix.clear();
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (!ix.emplace(id_of(items[k]), k).second) {
        IntegrityIssue issue{id_of(items[k]), "duplicate " + what + " id"};
        bool seen = std::any_of(load_issues_.begin(), load_issues_.end(), [&](const IntegrityIssue& x) {
          return x.id == issue.id && x.message == issue.message;
        });
        if (!seen) load_issues_.push_back(issue);
      }
    }
  };
  auto alg_id = [](const AlgebraDoc& a) { return a.table.name(); };
  auto fam_id = [](const ParametricFamily& f) { return f.id; };
  build(algebra_ix_, algebras_, alg_id, "algebra");
  build(lie_ix_, lie_, alg_id, "Lie algebra");
  build(family_ix_, families_, fam_id, "family");
  build(rb_ix_, rb_, fam_id, "Rota-Baxter operator");
  build(tensor_ix_, tensors_, [](const TensorDoc& t) { return t.id; }, "tensor");
  build(remark_ix_, remarks_, [](const RemarkDoc& r) { return r.id; }, "remark");
  for (const auto& [id, k] : lie_ix_) {
    if (algebra_ix_.count(id)) load_issues_.push_back({id, "Lie algebra id also names an algebra"});
  }
}

bool Catalog::contains(EntryKind kind, const std::string& id) const {
  switch (kind) {
    case EntryKind::Algebra:
      return algebra_ix_.count(id) || lie_ix_.count(id);
    case EntryKind::NijenhuisFamily:
      return family_ix_.count(id) > 0;
    case EntryKind::RbOperator:
      return rb_ix_.count(id) > 0;
    case EntryKind::CybeSolution:
      return tensor_ix_.count(id) > 0;
    case EntryKind::Remark:
      return remark_ix_.count(id) > 0;
  }
  return false;
}

CatalogEntry Catalog::lookup(EntryKind kind, const std::string& id) const {
  switch (kind) {
    case EntryKind::Algebra: {
      const auto& a = algebra(id);
      return {kind, id, a.source, &a};
    }
    case EntryKind::NijenhuisFamily: {
      const auto& f = family(id);
      return {kind, id, f.source, &f};
    }
    case EntryKind::RbOperator: {
      const auto& f = rb_operator(id);
      return {kind, id, f.source, &f};
    }
    case EntryKind::CybeSolution: {
      const auto& t = tensor(id);
      return {kind, id, t.source, &t};
    }
    case EntryKind::Remark: {
      const auto& r = remark(id);
      return {kind, id, r.source, &r};
    }
  }
  throw Error(ErrorKind::UnknownId, id);
}

const AlgebraDoc& Catalog::algebra(const std::string& id) const {
  if (auto it = algebra_ix_.find(id); it != algebra_ix_.end()) return algebras_[it->second];
  return lie_[find_or_throw(lie_ix_, id, "algebra")];
}
const ParametricFamily& Catalog::family(const std::string& id) const {
  return families_[find_or_throw(family_ix_, id, "Nijenhuis family")];
}
const ParametricFamily& Catalog::rb_operator(const std::string& id) const {
  return rb_[find_or_throw(rb_ix_, id, "Rota-Baxter operator")];
}
const TensorDoc& Catalog::tensor(const std::string& id) const {
  return tensors_[find_or_throw(tensor_ix_, id, "CYBE solution")];
}
const RemarkDoc& Catalog::remark(const std::string& id) const {
  return remarks_[find_or_throw(remark_ix_, id, "remark")];
}

LieAlgebra Catalog::lie(const std::string& id) const {
  const auto& a = lie_[find_or_throw(lie_ix_, id, "Lie algebra")];
  std::string prov;
  for (const auto& f : a.from) prov += (prov.empty() ? "" : " ") + f;
  return LieAlgebra(a.table, prov);
}

SemidirectDouble Catalog::double_of(const std::string& lie_id) const { return SemidirectDouble(lie(lie_id)); }

std::vector<const ParametricFamily*> Catalog::families_on(const std::string& algebra) const {
  std::vector<const ParametricFamily*> out;
  for (const auto& f : families_) {
    if (f.algebra == algebra) out.push_back(&f);
  }
  return out;
}

std::vector<const ParametricFamily*> Catalog::rb_on(const std::string& lie) const {
  std::vector<const ParametricFamily*> out;
  for (const auto& f : rb_) {
    if (f.algebra == lie) out.push_back(&f);
  }
  return out;
}

std::optional<std::vector<std::string>> Catalog::basis(const std::string& target) const {
  std::string name = target;
  bool dbl = false;
  if (target.rfind("double(", 0) == 0 && target.size() > 8 && target.back() == ')') {
    name = target.substr(7, target.size() - 8);
    dbl = true;
  }
  const AlgebraDoc* a = nullptr;
  if (auto it = algebra_ix_.find(name); it != algebra_ix_.end()) a = &algebras_[it->second];
  if (auto it = lie_ix_.find(name); it != lie_ix_.end()) a = &lie_[it->second];
  if (!a) return std::nullopt;
  std::vector<std::string> out = a->table.basis_names();
  if (dbl) {
    for (const auto& b : a->table.basis_names()) out.push_back(b + "*");
  }
  return out;
}

BasisResolver Catalog::resolver() const {
  return [this](const std::string& target) { return basis(target); };
}

IntegrityReport Catalog::integrity(const CatalogCounts& expected) const {
  IntegrityReport rep;
  rep.issues = load_issues_;
  auto issue = [&](const std::string& id, const std::string& msg) { rep.issues.push_back({id, msg}); };

  std::map<char, int> series;
  for (const auto& a : algebras_) series[a.table.name().empty() ? '?' : a.table.name()[0]]++;
  for (const auto& [s, n] : expected.algebras_by_series) {
    if (series[s] != n) {
      issue(std::string(1, s), "expected " + std::to_string(n) + " algebras in series " + s + ", found " +
                                   std::to_string(series[s]));
    }
  }
  for (const auto& [s, n] : series) {
    if (!expected.algebras_by_series.count(s)) issue(std::string(1, s), "unexpected algebra series");
  }
  auto count = [&](const std::string& what, std::size_t got, int want) {
    if (static_cast<int>(got) != want) {
      issue(what, "expected " + std::to_string(want) + " " + what + ", found " + std::to_string(got));
    }
  };
  count("Lie algebras", lie_.size(), expected.lie_algebras);
  count("Nijenhuis families", families_.size(), expected.nijenhuis_families);
  count("Rota-Baxter operators", rb_.size(), expected.rb_operators);
  count("CYBE solutions", tensors_.size(), expected.cybe_solutions);

  for (const auto& f : families_) {
    if (!algebra_ix_.count(f.algebra)) issue(f.id, "family on unknown algebra " + f.algebra);
    if (!f.corrects.empty() && !family_ix_.count(f.corrects)) issue(f.id, "corrects unknown family " + f.corrects);
  }
  for (const auto& r : rb_) {
    if (!lie_ix_.count(r.algebra)) issue(r.id, "operator on unknown Lie algebra " + r.algebra);
    for (const auto& src : r.derived_from) {
      if (!family_ix_.count(src)) issue(r.id, "derived from unknown family " + src);
    }
  }
  for (const auto& t : tensors_) {
    if (!t.on_double()) issue(t.id, "CYBE solution is not on a double");
    if (!lie_ix_.count(t.lie())) issue(t.id, "tensor on the double of unknown Lie algebra " + t.lie());
    for (const auto& src : t.derived_from) {
      if (!rb_ix_.count(src)) issue(t.id, "derived from unknown Rota-Baxter operator " + src);
    }
  }
  for (const auto& r : remarks_) {
    for (const auto& arg : r.args) {
      bool known = algebra_ix_.count(arg) || lie_ix_.count(arg) || family_ix_.count(arg) || rb_ix_.count(arg) ||
                   tensor_ix_.count(arg);
      if (!known) issue(r.id, "remark refers to unknown id " + arg);
    }
  }
  // Aliases: each named Lie algebra is the sub-adjacent algebra of everything it lists.
  for (const auto& l : lie_) {
    try {
      LieAlgebra checked(l.table);
    } catch (const Error& e) {
      issue(l.table.name(), e.what());
      continue;
    }
    for (const auto& src : l.from) {
      auto it = algebra_ix_.find(src);
      if (it == algebra_ix_.end()) {
        issue(l.table.name(), "alias of unknown algebra " + src);
        continue;
      }
      try {
        LieAlgebra g = sub_adjacent(algebras_[it->second].table);
        if (!g.table().same_table(l.table)) issue(l.table.name(), "differs from the sub-adjacent algebra of " + src);
      } catch (const Error& e) {
        issue(l.table.name(), src + ": " + e.what());
      }
    }
  }
  return rep;
}

}  // namespace nij
