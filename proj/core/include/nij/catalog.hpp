#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "nij/text_format.hpp"
#include "nij/yangbaxter.hpp"

namespace nij {

enum class EntryKind { Algebra, NijenhuisFamily, RbOperator, CybeSolution, Remark };

std::string to_string(EntryKind kind);
EntryKind entry_kind_from_string(const std::string& s);  // throws UnknownId

struct CatalogEntry {
  EntryKind kind;
  std::string id;
  std::string source;
  std::variant<const AlgebraDoc*, const ParametricFamily*, const TensorDoc*, const RemarkDoc*> payload;
};

struct IntegrityIssue {
  std::string id;
  std::string message;
};

struct IntegrityReport {
  std::vector<IntegrityIssue> issues;
  bool pass() const { return issues.empty(); }
};

// Expected entry counts, fixed when the tables were transcribed.
struct CatalogCounts {
  std::map<char, int> algebras_by_series{{'A', 5}, {'B', 6}, {'C', 12}, {'D', 12}};
  int lie_algebras = 8;
  int nijenhuis_families = 132;
  int rb_operators = 31;
  int cybe_solutions = 26;
};

// Loaded once from a directory of .alg, .fam, .tns and .rmk files:
//   algebras/*.alg  families/*.fam  rb/*.fam  cybe/*.tns  remarks/*.rmk
class Catalog {
 public:
  static Catalog load(const std::string& dir);
  // $NIJ_CATALOG_DIR, else the directory baked in at build time.
  static std::string default_dir();
  static const Catalog& builtin();

  const std::string& dir() const { return dir_; }

  // Pre-Lie and associative algebras, in file order.
  const std::vector<AlgebraDoc>& algebras() const { return algebras_; }
  const std::vector<AlgebraDoc>& lie_algebras() const { return lie_; }
  const std::vector<ParametricFamily>& families() const { return families_; }
  const std::vector<ParametricFamily>& rb_operators() const { return rb_; }
  const std::vector<TensorDoc>& tensors() const { return tensors_; }
  const std::vector<RemarkDoc>& remarks() const { return remarks_; }
  // Every file that was read, relative to dir(), sorted.
  const std::vector<std::string>& files() const { return files_; }

  CatalogEntry lookup(EntryKind kind, const std::string& id) const;  // throws UnknownId
  bool contains(EntryKind kind, const std::string& id) const;

  const AlgebraDoc& algebra(const std::string& id) const;  // pre-Lie/associative or Lie
  const ParametricFamily& family(const std::string& id) const;
  const ParametricFamily& rb_operator(const std::string& id) const;
  const TensorDoc& tensor(const std::string& id) const;
  const RemarkDoc& remark(const std::string& id) const;

  LieAlgebra lie(const std::string& id) const;
  SemidirectDouble double_of(const std::string& lie_id) const;

  // Families (catalog order) living on the given algebra.
  std::vector<const ParametricFamily*> families_on(const std::string& algebra) const;
  std::vector<const ParametricFamily*> rb_on(const std::string& lie) const;

  // Basis labels for "A1", "g1" or "double(g1)".
  std::optional<std::vector<std::string>> basis(const std::string& target) const;
  BasisResolver resolver() const;

  IntegrityReport integrity(const CatalogCounts& expected = {}) const;

 private:
  void add(Document doc, const std::string& subdir);
  void index();

  std::string dir_;
  std::vector<AlgebraDoc> algebras_;
  std::vector<AlgebraDoc> lie_;
  std::vector<ParametricFamily> families_;
  std::vector<ParametricFamily> rb_;
  std::vector<TensorDoc> tensors_;
  std::vector<RemarkDoc> remarks_;
  std::vector<std::string> files_;
  std::vector<IntegrityIssue> load_issues_;  // duplicate ids and misplaced blocks

  std::map<std::string, std::size_t> algebra_ix_;
  std::map<std::string, std::size_t> lie_ix_;
  std::map<std::string, std::size_t> family_ix_;
  std::map<std::string, std::size_t> rb_ix_;
  std::map<std::string, std::size_t> tensor_ix_;
  std::map<std::string, std::size_t> remark_ix_;
};

}  // namespace nij
