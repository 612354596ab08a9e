#include "nij/yangbaxter.hpp"

#include "nij/error.hpp"
#include "nij/format.hpp"

namespace nij {

template <std::size_t Order>
std::string Tensor<Order>::to_string(const std::vector<std::string>& basis_names) const {
  std::vector<std::pair<Scalar, std::string>> terms;
  for (const auto& [idx, v] : entries_) {
    std::string label;
    for (std::size_t k = 0; k < Order; ++k) {
      if (k > 0) label += " (x) ";
      int i = idx[k];
      label += i < static_cast<int>(basis_names.size()) ? basis_names[i] : "e" + std::to_string(i + 1);
    }
    terms.emplace_back(v, std::move(label));
  }
  return format_linear_combination(terms);
}

template class Tensor<2>;
template class Tensor<3>;

std::vector<LinearOperator> coadjoint(const LieAlgebra& l) {
  const int n = l.dim();
  std::vector<LinearOperator> out;
  out.reserve(n);
  for (int a = 0; a < n; ++a) {
    LinearOperator m(n);
    for (int c = 0; c < n; ++c) {
      for (const auto& [b, coeff] : l.table().basis_product(a, c).coords()) m.set_entry(b, c, -coeff);
    }
    out.push_back(std::move(m));
  }
  return out;
}

CoadjointCheck check_coadjoint(const LieAlgebra& l) {
  const int n = l.dim();
  auto ads = coadjoint(l);
  CoadjointCheck out;
  // ad*_x acts on row vectors of dual coordinates; as maps, rho(x) rho(y) is compose(rho(x), rho(y)).
  auto rho = [&](const Vector& x) {
    LinearOperator m(n);
    for (const auto& [a, c] : x.coords()) m = m + ads[a].scaled(c);
    return m;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      LinearOperator lhs = rho(l.table().basis_product(a, b));
      LinearOperator rhs = compose(ads[a], ads[b]) + compose(ads[b], ads[a]).scaled(Scalar(-1));
      if (!(lhs == rhs)) out.representation = false;
    }
  }
  // <ad*_{e_a} e_b*, e_c> + <e_b*, [e_a, e_c]> = 0
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        Scalar s = ads[a].entry(b, c) + l.table().basis_product(a, c).coord(b);
        if (!s.is_zero()) out.pairing = false;
      }
    }
  }
  return out;
}

namespace {

LieAlgebra build_double(const LieAlgebra& base) {
  const int n = base.dim();
  std::vector<std::string> names = base.basis_names();
  for (int i = 0; i < n; ++i) names.push_back(base.basis_names()[i] + "*");
  StructureConstants t("double(" + base.name() + ")", names);
  for (const auto& p : base.table().params()) t.declare_param(p);
  for (const auto& c : base.table().constraints()) t.add_constraint(c);
  auto lift = [&](const Vector& v, int offset) {
    Vector out(2 * n);
    for (const auto& [i, c] : v.coords()) out.set(i + offset, c);
    return out;
  };
  for (const auto& [ij, v] : base.table().table()) t.set_product(ij.first, ij.second, lift(v, 0));
  auto ads = coadjoint(base);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Vector v = lift(ads[a].row(b), n);
      if (v.is_zero()) continue;
      t.set_product(a, n + b, v);
      t.set_product(n + b, a, -v);
    }
  }
  return LieAlgebra(std::move(t), base.name());
}

}  // namespace

SemidirectDouble::SemidirectDouble(const LieAlgebra& base) : base_(base), total_(build_double(base)) {}

Tensor2 operator_to_tensor(const LinearOperator& r, int base_dim) {
  if (r.dim() != base_dim) throw Error(ErrorKind::DimensionMismatch, "operator dimension differs from the base");
  Tensor2 out(2 * base_dim);
  for (int i = 0; i < base_dim; ++i) {
    for (const auto& [j, c] : r.row(i).coords()) out.add({j, base_dim + i}, c);
  }
  return out;
}

Tensor2 flip(const Tensor2& t) {
  Tensor2 out(t.dim());
  for (const auto& [idx, v] : t.entries()) out.add({idx[1], idx[0]}, v);
  return out;
}

Tensor2 skewize(const Tensor2& t) { return t - flip(t); }

Tensor3 cybe_residual(const LieAlgebra& l, const Tensor2& r) {
  if (r.dim() != l.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "tensor of dimension " + std::to_string(r.dim()) + " over " + l.name() +
                                                  " of dimension " + std::to_string(l.dim()));
  }
  const StructureConstants& t = l.table();
  Tensor3 out(l.dim());
  for (const auto& [ab, x] : r.entries()) {
    const int a = ab[0];
    const int b = ab[1];
    for (const auto& [cd, y] : r.entries()) {
      const int c = cd[0];
      const int d = cd[1];
      Scalar xy = x * y;
      for (const auto& [u, k] : t.basis_product(a, c).coords()) out.add({u, b, d}, xy * k);
      for (const auto& [u, k] : t.basis_product(b, c).coords()) out.add({a, u, d}, xy * k);
      for (const auto& [u, k] : t.basis_product(b, d).coords()) out.add({a, c, u}, xy * k);
    }
  }
  return out;
}

}  // namespace nij
