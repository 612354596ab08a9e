#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nij/scalar.hpp"

namespace nij {

// Sparse coordinate vector over a based space of dimension dim(). Indices are
// 0-based; zero coordinates are never stored.
class Vector {
 public:
  explicit Vector(int dim = 0) : dim_(dim) {}
  static Vector basis(int dim, int index);

  int dim() const { return dim_; }
  bool is_zero() const { return coords_.empty(); }
  const std::map<int, Scalar>& coords() const { return coords_; }
  Scalar coord(int index) const;
  void set(int index, Scalar value);

  Vector& add_scaled(const Vector& o, const Scalar& c);
  Vector& operator+=(const Vector& o) { return add_scaled(o, Scalar(1)); }
  Vector& operator-=(const Vector& o) { return add_scaled(o, Scalar(-1)); }
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  Vector scaled(const Scalar& c) const;
  Vector operator-() const { return scaled(Scalar(-1)); }

  friend bool operator==(const Vector& a, const Vector& b);

  // "2 e1 - n12 e2" style, using the given basis labels.
  std::string to_string(const std::vector<std::string>& basis_names) const;

 private:
  int dim_;
  std::map<int, Scalar> coords_;
};

// e_i . e_j = sum_t C_ij^t e_t, stored sparsely by (i, j).
class StructureConstants {
 public:
  StructureConstants() = default;
  StructureConstants(std::string name, std::vector<std::string> basis_names);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_names_.size()); }
  const std::vector<std::string>& basis_names() const { return basis_names_; }

  // Structural parameters (e.g. k in a one-parameter family of algebras) and
  // the polynomials they must keep nonzero.
  const std::vector<std::string>& params() const { return params_; }
  const std::vector<Scalar>& constraints() const { return constraints_; }
  void declare_param(const std::string& name) { params_.push_back(name); }
  void add_constraint(Scalar nonzero) { constraints_.push_back(std::move(nonzero)); }

  void set_product(int i, int j, Vector value);
  bool has_product(int i, int j) const { return table_.count({i, j}) > 0; }
  const Vector& basis_product(int i, int j) const;
  Scalar constant(int i, int j, int t) const { return basis_product(i, j).coord(t); }
  const std::map<std::pair<int, int>, Vector>& table() const { return table_; }

  Vector zero() const { return Vector(dim()); }
  Vector basis(int i) const { return Vector::basis(dim(), i); }
  int index_of(const std::string& label) const;  // -1 when absent

  // Same basis size and equal products entry for entry.
  bool same_table(const StructureConstants& o) const;

 private:
  std::string name_;
  std::vector<std::string> basis_names_;
  std::vector<std::string> params_;
  std::vector<Scalar> constraints_;
  std::map<std::pair<int, int>, Vector> table_;
  Vector zero_;
};

Vector product(const StructureConstants& a, const Vector& x, const Vector& y);

// (e_i e_j) e_k - e_i (e_j e_k) - (e_j e_i) e_k + e_j (e_i e_k)
Vector pre_lie_residual(const StructureConstants& a, int i, int j, int k);
// (e_i e_j) e_k - e_i (e_j e_k)
Vector associator(const StructureConstants& a, int i, int j, int k);

struct TripleFailure {
  std::array<int, 3> indices;
  Vector residual;
};

struct IdentityReport {
  std::vector<TripleFailure> failures;
  bool holds() const { return failures.empty(); }
};

IdentityReport check_pre_lie(const StructureConstants& a);
IdentityReport check_associative(const StructureConstants& a);

struct CommutativityReport {
  std::vector<std::pair<int, int>> witnesses;  // ordered pairs with e_i e_j != e_j e_i
  bool commutative() const { return witnesses.empty(); }
};
CommutativityReport check_commutative(const StructureConstants& a);

// [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] for a bracket table.
Vector jacobi_residual(const StructureConstants& bracket, int i, int j, int k);

// A bracket table certified antisymmetric with vanishing Jacobi residual on
// every basis triple. Construction fails with NotLie otherwise.
class LieAlgebra {
 public:
  explicit LieAlgebra(StructureConstants bracket, std::string provenance = {});

  const StructureConstants& table() const { return bracket_; }
  const std::string& name() const { return bracket_.name(); }
  int dim() const { return bracket_.dim(); }
  const std::vector<std::string>& basis_names() const { return bracket_.basis_names(); }
  const std::string& provenance() const { return provenance_; }
  bool is_abelian() const { return bracket_.table().empty(); }

  Vector bracket(const Vector& x, const Vector& y) const { return product(bracket_, x, y); }

 private:
  StructureConstants bracket_;
  std::string provenance_;
};

// Commutator algebra [x,y] = xy - yx; refuses input failing the pre-Lie identity.
LieAlgebra sub_adjacent(const StructureConstants& a, const std::string& name = {});

}  // namespace nij
