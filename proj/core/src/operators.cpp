#include "nij/operators.hpp"

#include <algorithm>
#include <set>

#include "nij/error.hpp"

namespace nij {

LinearOperator::LinearOperator(int dim) : rows_(dim, Vector(dim)) {}

LinearOperator LinearOperator::identity(int dim) {
  LinearOperator out(dim);
  for (int i = 0; i < dim; ++i) out.rows_[i] = Vector::basis(dim, i);
  return out;
}

LinearOperator LinearOperator::from_rows(std::vector<std::vector<Scalar>> rows) {
  LinearOperator out(static_cast<int>(rows.size()));
  for (int i = 0; i < out.dim(); ++i) {
    if (static_cast<int>(rows[i].size()) != out.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "operator matrix is not square");
    }
    for (int j = 0; j < out.dim(); ++j) out.rows_[i].set(j, std::move(rows[i][j]));
  }
  return out;
}

void LinearOperator::set_row(int i, Vector v) {
  if (v.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "row has wrong dimension");
  rows_.at(i) = std::move(v);
}

void LinearOperator::set_entry(int i, int j, Scalar v) { rows_.at(i).set(j, std::move(v)); }

bool LinearOperator::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const Vector& r) { return r.is_zero(); });
}

Vector LinearOperator::apply(const Vector& x) const {
  if (x.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "operator and vector dimensions differ");
  Vector out(dim());
  for (const auto& [i, xi] : x.coords()) out.add_scaled(rows_[i], xi);
  return out;
}

LinearOperator LinearOperator::scaled(const Scalar& c) const {
  LinearOperator out(dim());
  for (int i = 0; i < dim(); ++i) out.rows_[i] = rows_[i].scaled(c);
  return out;
}

LinearOperator LinearOperator::operator+(const LinearOperator& o) const {
  if (o.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "operator dimensions differ");
  LinearOperator out = *this;
  for (int i = 0; i < dim(); ++i) out.rows_[i] += o.rows_[i];
  return out;
}

bool operator==(const LinearOperator& a, const LinearOperator& b) { return a.rows_ == b.rows_; }

std::string LinearOperator::to_string(const std::vector<std::string>& basis_names) const {
  std::string out;
  for (int i = 0; i < dim(); ++i) {
    if (i > 0) out += "; ";
    std::string label = i < static_cast<int>(basis_names.size()) ? basis_names[i] : "e" + std::to_string(i + 1);
    out += "N " + label + " = " + rows_[i].to_string(basis_names);
  }
  return out;
}

LinearOperator compose(const LinearOperator& outer, const LinearOperator& inner) {
  if (outer.dim() != inner.dim()) throw Error(ErrorKind::DimensionMismatch, "operator dimensions differ");
  LinearOperator out(inner.dim());
  for (int i = 0; i < inner.dim(); ++i) out.set_row(i, outer.apply(inner.row(i)));
  return out;
}

LinearOperator operator_square(const LinearOperator& n) { return compose(n, n); }

namespace {

void check_dims(const StructureConstants& a, const LinearOperator& n, int i, int j) {
  if (n.dim() != a.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "operator of dimension " + std::to_string(n.dim()) +
                                                  " on algebra " + a.name() + " of dimension " +
                                                  std::to_string(a.dim()));
  }
  if (i < 0 || j < 0 || i >= a.dim() || j >= a.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "basis index out of range");
  }
}

}  // namespace

Vector nijenhuis_residual(const StructureConstants& a, const LinearOperator& n, int i, int j) {
  check_dims(a, n, i, j);
  const Vector& ni = n.row(i);
  const Vector& nj = n.row(j);
  Vector ei = a.basis(i);
  Vector ej = a.basis(j);
  Vector inner = product(a, ni, ej) + product(a, ei, nj) - n.apply(a.basis_product(i, j));
  return product(a, ni, nj) - n.apply(inner);
}

Vector nijenhuis_residual_constants(const StructureConstants& a, const LinearOperator& n, int i, int j) {
  check_dims(a, n, i, j);
  const int d = a.dim();
  auto C = [&](int x, int y, int z) { return a.constant(x, y, z); };
  auto N = [&](int x, int y) { return n.entry(x, y); };
  Vector out(d);
  for (int m = 0; m < d; ++m) {
    Scalar acc;
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) {
        // C_kl^m n_ik n_jl
        Scalar c1 = C(k, l, m);
        if (!c1.is_zero()) acc += c1 * N(i, k) * N(j, l);
        // - C_kj^l n_ik n_lm
        Scalar c2 = C(k, j, l);
        if (!c2.is_zero()) acc -= c2 * N(i, k) * N(l, m);
        // - C_il^k n_jl n_km
        Scalar c3 = C(i, l, k);
        if (!c3.is_zero()) acc -= c3 * N(j, l) * N(k, m);
      }
    }
    for (int t = 0; t < d; ++t) {
      Scalar c4 = C(i, j, t);
      if (c4.is_zero()) continue;
      for (int l = 0; l < d; ++l) acc += c4 * N(t, l) * N(l, m);
    }
    out.set(m, acc);
  }
  return out;
}

Vector rota_baxter_residual(const StructureConstants& m, const LinearOperator& r, const Scalar& weight, int i,
                            int j) {
  check_dims(m, r, i, j);
  const Vector& ri = r.row(i);
  const Vector& rj = r.row(j);
  Vector ei = m.basis(i);
  Vector ej = m.basis(j);
  Vector inner = product(m, ri, ej) + product(m, ei, rj);
  inner.add_scaled(m.basis_product(i, j), weight);
  return product(m, ri, rj) - r.apply(inner);
}

Vector rota_baxter_residual(const LieAlgebra& m, const LinearOperator& r, const Scalar& weight, int i, int j) {
  return rota_baxter_residual(m.table(), r, weight, i, j);
}

std::optional<PairResidual> first_nijenhuis_failure(const StructureConstants& a, const LinearOperator& n) {
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      Vector r = nijenhuis_residual(a, n, i, j);
      if (!r.is_zero()) return PairResidual{i, j, std::move(r)};
    }
  }
  return std::nullopt;
}

std::optional<PairResidual> first_rota_baxter_failure(const StructureConstants& m, const LinearOperator& r,
                                                      const Scalar& weight) {
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      Vector res = rota_baxter_residual(m, r, weight, i, j);
      if (!res.is_zero()) return PairResidual{i, j, std::move(res)};
    }
  }
  return std::nullopt;
}

namespace {

bool is_constrained_unit(const Polynomial& coeff, const ParametricFamily& f) {
  if (coeff.terms().size() != 1) return false;
  std::set<std::string> units;
  for (const auto& c : f.constraints) {
    const Polynomial& p = c.numerator();
    if (p.terms().size() == 1 && p.leading_monomial().factors().size() == 1) {
      units.insert(p.leading_monomial().factors().front().first);
    }
  }
  for (const auto& [var, e] : coeff.leading_monomial().factors()) {
    if (!units.count(var)) return false;
  }
  return true;
}

// Solves side condition `cond = 0` for one variable occurring linearly.
std::pair<std::string, Scalar> solve_side_condition(const Scalar& cond, const ParametricFamily& f) {
  const Polynomial& p = cond.numerator();
  std::optional<std::pair<std::string, int>> best;
  for (const auto& v : p.variables()) {
    if (is_adjoined_symbol(v) || p.degree_in(v) != 1) continue;
    Polynomial c = p.coefficient_of(v, 1);
    if (c.variables().count(v)) continue;
    int rank = c.is_constant() ? 0 : (is_constrained_unit(c, f) ? 1 : 2);
    if (!best || rank < best->second) best = {v, rank};
  }
  if (!best) {
    throw Error(ErrorKind::UnsupportedSideCondition,
                "side condition " + cond.to_string() + " = 0 is not linear in any parameter");
  }
  const std::string& v = best->first;
  Polynomial c = p.coefficient_of(v, 1);
  Polynomial rest = p.coefficient_of(v, 0);
  Scalar value = -Scalar::fraction(rest, c, cond.relation_ptr());
  return {v, value};
}

}  // namespace

LinearOperator reduced_matrix(const ParametricFamily& f) {
  LinearOperator m = f.matrix;
  std::vector<Scalar> pending = f.side_conditions;
  while (!pending.empty()) {
    Scalar cond = pending.front();
    pending.erase(pending.begin());
    if (cond.is_zero()) continue;
    auto [var, value] = solve_side_condition(cond, f);
    std::map<std::string, Scalar> sub{{var, value}};
    LinearOperator next(m.dim());
    for (int i = 0; i < m.dim(); ++i) {
      for (const auto& [j, v] : m.row(i).coords()) next.set_entry(i, j, v.substitute_partial(sub));
    }
    m = std::move(next);
    for (auto& other : pending) other = other.substitute_partial(sub);
  }
  return m;
}

FamilyReport validate_family(const StructureConstants& a, const ParametricFamily& f, const FamilyKind& kind) {
  if (f.matrix.dim() != a.dim()) {
    throw Error(ErrorKind::DimensionMismatch, f.id + " has dimension " + std::to_string(f.matrix.dim()) +
                                                  " but " + a.name() + " has dimension " + std::to_string(a.dim()));
  }
  std::set<std::string> declared(f.params.begin(), f.params.end());
  declared.insert(a.params().begin(), a.params().end());
  auto check = [&](const Scalar& s) {
    for (const auto& v : s.variables()) {
      if (!is_adjoined_symbol(v) && !declared.count(v)) {
        throw Error(ErrorKind::UndeclaredParameter, f.id + " uses undeclared parameter '" + v + "'");
      }
    }
  };
  for (const auto& row : f.matrix.rows()) {
    for (const auto& [j, v] : row.coords()) check(v);
  }
  for (const auto& c : f.constraints) check(c);
  for (const auto& c : f.side_conditions) check(c);

  LinearOperator m = reduced_matrix(f);
  FamilyReport report{f.id, true, std::nullopt};
  report.witness = kind.type == FamilyKind::Type::Nijenhuis ? first_nijenhuis_failure(a, m)
                                                            : first_rota_baxter_failure(a, m, kind.weight);
  report.pass = !report.witness.has_value();
  return report;
}

LinearOperator specialize_family(const ParametricFamily& f, const Assignment& assignment) {
  for (const auto& c : f.constraints) {
    if (c.substitute(assignment).is_zero()) {
      throw Error(ErrorKind::ConstraintViolated, f.id + " requires " + c.to_string() + " != 0");
    }
  }
  for (const auto& c : f.side_conditions) {
    if (!c.substitute(assignment).is_zero()) {
      throw Error(ErrorKind::ConstraintViolated, f.id + " requires " + c.to_string() + " = 0");
    }
  }
  LinearOperator out(f.matrix.dim());
  for (int i = 0; i < f.matrix.dim(); ++i) {
    for (const auto& [j, v] : f.matrix.row(i).coords()) out.set_entry(i, j, Scalar(v.substitute(assignment)));
  }
  return out;
}

}  // namespace nij
