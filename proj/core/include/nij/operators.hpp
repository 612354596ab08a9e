#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nij/algebra.hpp"

namespace nij {

// Linear map on a based space; row i holds the coordinates of N(e_i).
class LinearOperator {
 public:
  LinearOperator() = default;
  explicit LinearOperator(int dim);
  static LinearOperator identity(int dim);
  static LinearOperator from_rows(std::vector<std::vector<Scalar>> rows);

  int dim() const { return static_cast<int>(rows_.size()); }
  const Vector& row(int i) const { return rows_.at(i); }
  const std::vector<Vector>& rows() const { return rows_; }
  Scalar entry(int i, int j) const { return rows_.at(i).coord(j); }
  void set_row(int i, Vector v);
  void set_entry(int i, int j, Scalar v);
  bool is_zero() const;

  Vector apply(const Vector& x) const;
  LinearOperator scaled(const Scalar& c) const;
  LinearOperator operator+(const LinearOperator& o) const;
  friend bool operator==(const LinearOperator&, const LinearOperator&);

  std::string to_string(const std::vector<std::string>& basis_names) const;

 private:
  std::vector<Vector> rows_;
};

// outer o inner as maps: x -> outer(inner(x)).
LinearOperator compose(const LinearOperator& outer, const LinearOperator& inner);
LinearOperator operator_square(const LinearOperator& n);

// N(e_i) N(e_j) - N(N(e_i) e_j + e_i N(e_j) - N(e_i e_j))
Vector nijenhuis_residual(const StructureConstants& a, const LinearOperator& n, int i, int j);
// Same quantity from the expanded structure-constant sums
//   sum C_kl^m n_ik n_jl - C_kj^l n_ik n_lm - C_il^k n_jl n_km + C_ij^t n_tl n_lm.
Vector nijenhuis_residual_constants(const StructureConstants& a, const LinearOperator& n, int i, int j);
// R(e_i) R(e_j) - R(R(e_i) e_j + e_i R(e_j) + weight e_i e_j)
Vector rota_baxter_residual(const StructureConstants& m, const LinearOperator& r, const Scalar& weight, int i,
                            int j);
Vector rota_baxter_residual(const LieAlgebra& m, const LinearOperator& r, const Scalar& weight, int i, int j);

struct PairResidual {
  int i = 0;
  int j = 0;
  Vector residual;
};

// First basis pair with a nonzero residual, if any.
std::optional<PairResidual> first_nijenhuis_failure(const StructureConstants& a, const LinearOperator& n);
std::optional<PairResidual> first_rota_baxter_failure(const StructureConstants& m, const LinearOperator& r,
                                                      const Scalar& weight);

enum class FamilyRole { Stated, Corrected, Variant };

// Operator family with symbolic entries over declared parameters, as listed in
// a classification table. Nonzero constraints make the listed parameters units;
// side conditions are equalities that must hold (each solved for one variable).
struct ParametricFamily {
  std::string id;
  std::string algebra;
  std::vector<std::string> params;
  LinearOperator matrix;
  std::vector<Scalar> constraints;
  std::vector<Scalar> side_conditions;
  std::vector<std::string> derived_from;  // source families for tabled RB operators
  std::vector<std::string> notes;
  FamilyRole role = FamilyRole::Stated;
  std::string corrects;  // id of the stated family this one repairs, if any
  std::string source;
};

struct FamilyKind {
  enum class Type { Nijenhuis, RotaBaxter } type = Type::Nijenhuis;
  Scalar weight;
  static FamilyKind nijenhuis() { return {}; }
  static FamilyKind rota_baxter(Scalar w) { return {Type::RotaBaxter, std::move(w)}; }
};

struct FamilyReport {
  std::string id;
  bool pass = false;
  std::optional<PairResidual> witness;
};

// Symbolic residual check over the rational function field in the family's
// parameters (nonzero-constrained parameters are invertible there).
FamilyReport validate_family(const StructureConstants& a, const ParametricFamily& f, const FamilyKind& kind);

// Matrix with side conditions eliminated, still symbolic.
LinearOperator reduced_matrix(const ParametricFamily& f);

LinearOperator specialize_family(const ParametricFamily& f, const Assignment& assignment);

}  // namespace nij
