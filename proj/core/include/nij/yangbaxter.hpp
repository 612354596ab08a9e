#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "nij/algebra.hpp"
#include "nij/operators.hpp"

namespace nij {

// Sparse tensor of fixed order over a based space of dimension dim(). Keys are
// 0-based basis-index tuples, zeros never stored.
template <std::size_t Order>
class Tensor {
 public:
  using Index = std::array<int, Order>;

  explicit Tensor(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }
  bool is_zero() const { return entries_.empty(); }
  const std::map<Index, Scalar>& entries() const { return entries_; }
  Scalar at(const Index& idx) const {
    auto it = entries_.find(idx);
    return it == entries_.end() ? Scalar() : it->second;
  }

  void add(const Index& idx, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace(idx, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  Tensor& operator+=(const Tensor& o) {
    for (const auto& [k, v] : o.entries_) add(k, v);
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    for (const auto& [k, v] : o.entries_) add(k, -v);
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  Tensor scaled(const Scalar& c) const {
    Tensor out(dim_);
    if (c.is_zero()) return out;
    for (const auto& [k, v] : entries_) out.entries_.emplace(k, v * c);
    return out;
  }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    if (a.dim_ != b.dim_ || a.entries_.size() != b.entries_.size()) return false;
    auto x = a.entries_.begin();
    for (auto y = b.entries_.begin(); x != a.entries_.end(); ++x, ++y) {
      if (x->first != y->first || !(x->second == y->second)) return false;
    }
    return true;
  }

  // "n21 e1 (x) e2* - e2* (x) n21 e1" style output in index order.
  std::string to_string(const std::vector<std::string>& basis_names) const;

 private:
  int dim_;
  std::map<Index, Scalar> entries_;
};

using Tensor2 = Tensor<2>;
using Tensor3 = Tensor<3>;

extern template class Tensor<2>;
extern template class Tensor<3>;

// ad*_{e_a} as a matrix on the dual basis, row b = ad*_{e_a}(e_b*):
//   <ad*_{e_a} e_b*, e_c> = -<e_b*, [e_a, e_c]> = -C_ac^b.
std::vector<LinearOperator> coadjoint(const LieAlgebra& l);

// Representation property and pairing identity on every basis pair.
struct CoadjointCheck {
  bool representation = true;
  bool pairing = true;
  bool holds() const { return representation && pairing; }
};
CoadjointCheck check_coadjoint(const LieAlgebra& l);

// g semidirect g* with the coadjoint action; dual vector e_i* has index n+i.
class SemidirectDouble {
 public:
  explicit SemidirectDouble(const LieAlgebra& base);

  const LieAlgebra& base() const { return base_; }
  const LieAlgebra& total() const { return total_; }
  int base_dim() const { return base_.dim(); }
  int dual_index(int i) const { return base_.dim() + i; }

 private:
  LieAlgebra base_;
  LieAlgebra total_;
};

// R -> sum_i R(e_i) (x) e_i*, over the basis of the double.
Tensor2 operator_to_tensor(const LinearOperator& r, int base_dim);

// T - T^21
Tensor2 skewize(const Tensor2& t);
Tensor2 flip(const Tensor2& t);

// sum r^ab r^cd ([e_a,e_c] (x) e_b (x) e_d + e_a (x) [e_b,e_c] (x) e_d + e_a (x) e_c (x) [e_b,e_d])
Tensor3 cybe_residual(const LieAlgebra& l, const Tensor2& r);
inline Tensor3 cybe_residual(const SemidirectDouble& d, const Tensor2& r) { return cybe_residual(d.total(), r); }

}  // namespace nij
