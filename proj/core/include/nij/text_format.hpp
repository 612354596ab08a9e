#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nij/algebra.hpp"
#include "nij/operators.hpp"
#include "nij/yangbaxter.hpp"

namespace nij {

// Algebra block. Lie blocks give brackets as "[x, y] = ..." and the opposite
// bracket is implied.
struct AlgebraDoc {
  StructureConstants table;
  bool lie = false;
  std::vector<std::string> from;  // pre-Lie algebras whose sub-adjacent algebra this is
  std::vector<std::string> notes;
  std::string source;
};

// Tensor block, e.g. a CYBE solution on the double of a Lie algebra.
struct TensorDoc {
  std::string id;
  std::string target;  // "g1" or "double(g1)"
  std::vector<std::string> params;
  Tensor2 r;
  std::vector<Scalar> constraints;
  std::vector<Scalar> side_conditions;
  std::vector<std::string> derived_from;
  std::vector<std::string> notes;
  FamilyRole role = FamilyRole::Stated;
  std::string variant;  // free-form tag telling apart alternative readings
  std::string source;

  bool on_double() const { return target.rfind("double(", 0) == 0; }
  std::string lie() const { return on_double() ? target.substr(7, target.size() - 8) : target; }
};

// Annotation with a named machine check and its arguments.
struct RemarkDoc {
  std::string id;
  std::string check;
  std::vector<std::string> args;
  std::vector<std::string> text;
  std::string source;
};

struct Document {
  std::vector<AlgebraDoc> algebras;
  std::vector<ParametricFamily> families;
  std::vector<TensorDoc> tensors;
  std::vector<RemarkDoc> remarks;
};

// Basis labels of the space a family or tensor lives on ("A1", "double(g1)"),
// or nullopt when unknown. Algebras defined earlier in the same text are
// consulted first.
using BasisResolver = std::function<std::optional<std::vector<std::string>>(const std::string& target)>;

Document parse_document(std::string_view text, const BasisResolver& resolver = {}, const std::string& filename = {});
Document parse_file(const std::string& path, const BasisResolver& resolver = {});

// Scalar expressions in the shared syntax (no basis labels).
Scalar parse_scalar(std::string_view text);

std::string print_algebra(const AlgebraDoc& doc);
std::string print_family(const ParametricFamily& f, const std::vector<std::string>& basis);
std::string print_tensor(const TensorDoc& t, const std::vector<std::string>& basis);
std::string print_remark(const RemarkDoc& r);

std::string to_string(FamilyRole role);

}  // namespace nij
