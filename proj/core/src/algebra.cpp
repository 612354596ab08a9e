#include "nij/algebra.hpp"

#include "nij/error.hpp"
#include "nij/format.hpp"

namespace nij {

Vector Vector::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
  Vector v(dim);
  v.coords_.emplace(index, Scalar(1));
  return v;
}

Scalar Vector::coord(int index) const {
  auto it = coords_.find(index);
  return it == coords_.end() ? Scalar() : it->second;
}

void Vector::set(int index, Scalar value) {
  if (index < 0 || index >= dim_) throw Error(ErrorKind::IndexOutOfRange, "coordinate index out of range");
  if (value.is_zero()) {
    coords_.erase(index);
  } else {
    coords_[index] = std::move(value);
  }
}

Vector& Vector::add_scaled(const Vector& o, const Scalar& c) {
  if (o.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "vector dimensions differ");
  if (c.is_zero()) return *this;
  for (const auto& [i, v] : o.coords_) {
    auto [it, inserted] = coords_.try_emplace(i, v * c);
    if (!inserted) {
      it->second += v * c;
      if (it->second.is_zero()) coords_.erase(it);
    } else if (it->second.is_zero()) {
      coords_.erase(it);
    }
  }
  return *this;
}

Vector Vector::scaled(const Scalar& c) const {
  Vector out(dim_);
  if (c.is_zero()) return out;
  for (const auto& [i, v] : coords_) out.coords_.emplace(i, v * c);
  return out;
}

bool operator==(const Vector& a, const Vector& b) {
  if (a.dim_ != b.dim_ || a.coords_.size() != b.coords_.size()) return false;
  auto x = a.coords_.begin();
  auto y = b.coords_.begin();
  for (; x != a.coords_.end(); ++x, ++y) {
    if (x->first != y->first || !(x->second == y->second)) return false;
  }
  return true;
}

std::string Vector::to_string(const std::vector<std::string>& basis_names) const {
  std::vector<std::pair<Scalar, std::string>> terms;
  for (const auto& [i, v] : coords_) {
    std::string label = i < static_cast<int>(basis_names.size()) ? basis_names[i] : "e" + std::to_string(i + 1);
    terms.emplace_back(v, label);
  }
  return format_linear_combination(terms);
}

StructureConstants::StructureConstants(std::string name, std::vector<std::string> basis_names)
    : name_(std::move(name)), basis_names_(std::move(basis_names)), zero_(static_cast<int>(basis_names_.size())) {}

void StructureConstants::set_product(int i, int j, Vector value) {
  if (i < 0 || j < 0 || i >= dim() || j >= dim()) {
    throw Error(ErrorKind::IndexOutOfRange, "product index out of range in " + name_);
  }
  if (value.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "product value has wrong dimension");
  if (value.is_zero()) {
    table_.erase({i, j});
  } else {
    table_[{i, j}] = std::move(value);
  }
}

const Vector& StructureConstants::basis_product(int i, int j) const {
  auto it = table_.find({i, j});
  return it == table_.end() ? zero_ : it->second;
}

int StructureConstants::index_of(const std::string& label) const {
  for (int i = 0; i < dim(); ++i) {
    if (basis_names_[i] == label) return i;
  }
  return -1;
}

bool StructureConstants::same_table(const StructureConstants& o) const {
  if (dim() != o.dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      if (!(basis_product(i, j) == o.basis_product(i, j))) return false;
    }
  }
  return true;
}

Vector product(const StructureConstants& a, const Vector& x, const Vector& y) {
  if (x.dim() != a.dim() || y.dim() != a.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "vector dimension does not match algebra " + a.name());
  }
  Vector out(a.dim());
  for (const auto& [i, xi] : x.coords()) {
    for (const auto& [j, yj] : y.coords()) {
      const Vector& e = a.basis_product(i, j);
      if (!e.is_zero()) out.add_scaled(e, xi * yj);
    }
  }
  return out;
}

namespace {

void check_index(const StructureConstants& a, int i) {
  if (i < 0 || i >= a.dim()) throw Error(ErrorKind::DimensionMismatch, "basis index out of range for " + a.name());
}

}  // namespace

Vector associator(const StructureConstants& a, int i, int j, int k) {
  check_index(a, i);
  check_index(a, j);
  check_index(a, k);
  Vector ei = a.basis(i);
  Vector ek = a.basis(k);
  return product(a, a.basis_product(i, j), ek) - product(a, ei, a.basis_product(j, k));
}

Vector pre_lie_residual(const StructureConstants& a, int i, int j, int k) {
  return associator(a, i, j, k) - associator(a, j, i, k);
}

namespace {

template <typename F>
IdentityReport check_triples(const StructureConstants& a, F&& residual) {
  IdentityReport report;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      for (int k = 0; k < a.dim(); ++k) {
        Vector r = residual(a, i, j, k);
        if (!r.is_zero()) report.failures.push_back({{i, j, k}, std::move(r)});
      }
    }
  }
  return report;
}

}  // namespace

IdentityReport check_pre_lie(const StructureConstants& a) { return check_triples(a, pre_lie_residual); }

IdentityReport check_associative(const StructureConstants& a) { return check_triples(a, associator); }

CommutativityReport check_commutative(const StructureConstants& a) {
  CommutativityReport report;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      if (i != j && !(a.basis_product(i, j) == a.basis_product(j, i))) report.witnesses.emplace_back(i, j);
    }
  }
  return report;
}

Vector jacobi_residual(const StructureConstants& bracket, int i, int j, int k) {
  Vector ei = bracket.basis(i);
  Vector ej = bracket.basis(j);
  Vector ek = bracket.basis(k);
  return product(bracket, ei, bracket.basis_product(j, k)) + product(bracket, ej, bracket.basis_product(k, i)) +
         product(bracket, ek, bracket.basis_product(i, j));
}

LieAlgebra::LieAlgebra(StructureConstants bracket, std::string provenance)
    : bracket_(std::move(bracket)), provenance_(std::move(provenance)) {
  const int n = bracket_.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (!(bracket_.basis_product(i, j) == -bracket_.basis_product(j, i))) {
        throw Error(ErrorKind::NotLie, bracket_.name() + ": bracket is not antisymmetric at (" +
                                           std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (!jacobi_residual(bracket_, i, j, k).is_zero()) {
          throw Error(ErrorKind::NotLie, bracket_.name() + ": Jacobi identity fails on (" + std::to_string(i + 1) +
                                             "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
        }
      }
    }
  }
}

LieAlgebra sub_adjacent(const StructureConstants& a, const std::string& name) {
  IdentityReport pre = check_pre_lie(a);
  if (!pre.holds()) {
    const auto& f = pre.failures.front();
    throw Error(ErrorKind::NotPreLie, a.name() + " fails the pre-Lie identity on (" + std::to_string(f.indices[0] + 1) +
                                          "," + std::to_string(f.indices[1] + 1) + "," +
                                          std::to_string(f.indices[2] + 1) + ")");
  }
  StructureConstants bracket(name.empty() ? "g(" + a.name() + ")" : name, a.basis_names());
  for (const auto& p : a.params()) bracket.declare_param(p);
  for (const auto& c : a.constraints()) bracket.add_constraint(c);
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      if (i != j) bracket.set_product(i, j, a.basis_product(i, j) - a.basis_product(j, i));
    }
  }
  return LieAlgebra(std::move(bracket), a.name());
}

}  // namespace nij
