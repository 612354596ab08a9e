#include "nij/oracle.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <thread>

#include "nij/error.hpp"

namespace nij {

FFAlgebra FFAlgebra::reduce(const StructureConstants& a, const ModContext& ctx, const ModAssignment& params) {
  FFAlgebra out;
  out.name = a.name();
  out.dim = a.dim();
  out.p = ctx.p;
  if (ctx.p >= (std::uint64_t{1} << 16)) {
    throw Error(ErrorKind::SearchSpaceTooLarge, "finite-field enumeration supports p < 65536");
  }
  const std::size_t n = a.dim();
  out.c.assign(n * n * n, 0);
  for (const auto& [ij, v] : a.table()) {
    for (const auto& [t, s] : v.coords()) {
      out.c[(ij.first * n + ij.second) * n + t] = static_cast<std::uint32_t>(substitute_mod(s, ctx, params).value());
    }
  }
  return out;
}

std::string to_string(const FFMatrix& m, int dim) {
  std::string out = "[";
  for (int i = 0; i < dim; ++i) {
    out += i ? ",[" : "[";
    for (int j = 0; j < dim; ++j) {
      if (j) out += ",";
      out += std::to_string(m[i * dim + j]);
    }
    out += "]";
  }
  return out + "]";
}

namespace {

constexpr int kMaxDim = 8;
using Row = std::array<std::uint32_t, kMaxDim>;

struct Kernel {
  const FFAlgebra& a;
  std::uint32_t p;
  int n;

  // x . y for coordinate rows
  Row product(const Row& x, const Row& y) const {
    Row out{};
    for (int s = 0; s < n; ++s) {
      if (!x[s]) continue;
      for (int t = 0; t < n; ++t) {
        if (!y[t]) continue;
        std::uint32_t xy = x[s] * y[t] % p;
        const std::uint32_t* c = &a.c[(static_cast<std::size_t>(s) * n + t) * n];
        for (int u = 0; u < n; ++u) out[u] = (out[u] + xy * c[u]) % p;
      }
    }
    return out;
  }
  Row basis_product(int i, const Row& y) const {
    Row x{};
    x[i] = 1;
    return product(x, y);
  }
  Row basis_product(const Row& x, int j) const {
    Row y{};
    y[j] = 1;
    return product(x, y);
  }
  Row table(int i, int j) const {
    Row out{};
    for (int u = 0; u < n; ++u) out[u] = a.at(i, j, u);
    return out;
  }
  Row row(std::span<const std::uint32_t> m, int i) const {
    Row out{};
    for (int u = 0; u < n; ++u) out[u] = m[i * n + u];
    return out;
  }
  Row apply(std::span<const std::uint32_t> m, const Row& x) const {
    Row out{};
    for (int s = 0; s < n; ++s) {
      if (!x[s]) continue;
      for (int u = 0; u < n; ++u) out[u] = (out[u] + x[s] * m[s * n + u]) % p;
    }
    return out;
  }
  Row combine(const Row& x, const Row& y, std::uint32_t cy) const {
    Row out{};
    for (int u = 0; u < n; ++u) out[u] = (x[u] + cy * y[u]) % p;
    return out;
  }
  bool equal(const Row& x, const Row& y) const {
    for (int u = 0; u < n; ++u) {
      if (x[u] != y[u]) return false;
    }
    return true;
  }
};

void check_dim(int n) {
  if (n > kMaxDim) throw Error(ErrorKind::SearchSpaceTooLarge, "finite-field kernels support dimension <= 8");
}

// Splits [0, p^entries) into contiguous ranges; each worker walks its range
// with an odometer and keeps the accepted candidates in order.
template <typename Pred>
std::vector<FFMatrix> enumerate(std::uint64_t p, int entries, unsigned threads, const Pred& accept) {
  const std::uint64_t total = search_space_size(p, entries);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, total / 4096)));
  std::vector<std::vector<FFMatrix>> parts(threads);
  auto work = [&](unsigned w) {
    std::uint64_t begin = total * w / threads;
    std::uint64_t end = total * (w + 1) / threads;
    FFMatrix cand(entries);
    std::uint64_t k = begin;
    for (int e = entries - 1; e >= 0; --e) {
      cand[e] = static_cast<std::uint32_t>(k % p);
      k /= p;
    }
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      if (accept(std::span<const std::uint32_t>(cand))) parts[w].push_back(cand);
      for (int e = entries - 1; e >= 0; --e) {
        if (++cand[e] < p) break;
        cand[e] = 0;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::vector<FFMatrix> out;
  for (auto& part : parts) {
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace

std::uint64_t search_space_size(std::uint64_t p, int entries) {
  constexpr std::uint64_t kLimit = 100'000'000;
  std::uint64_t total = 1;
  for (int e = 0; e < entries; ++e) {
    if (total > kLimit / p) {
      throw Error(ErrorKind::SearchSpaceTooLarge, std::to_string(p) + "^" + std::to_string(entries) +
                                                      " candidates exceed the limit of 10^8");
    }
    total *= p;
  }
  return total;
}

bool is_nijenhuis_ff(const FFAlgebra& a, std::span<const std::uint32_t> m) {
  check_dim(a.dim);
  Kernel k{a, static_cast<std::uint32_t>(a.p), a.dim};
  const std::uint32_t p = k.p;
  for (int i = 0; i < a.dim; ++i) {
    Row ni = k.row(m, i);
    for (int j = 0; j < a.dim; ++j) {
      Row nj = k.row(m, j);
      Row lhs = k.product(ni, nj);
      Row inner = k.combine(k.basis_product(ni, j), k.basis_product(i, nj), 1);
      inner = k.combine(inner, k.apply(m, k.table(i, j)), p - 1);
      if (!k.equal(lhs, k.apply(m, inner))) return false;
    }
  }
  return true;
}

bool is_rota_baxter_ff(const FFAlgebra& a, std::span<const std::uint32_t> r, std::uint32_t weight) {
  check_dim(a.dim);
  Kernel k{a, static_cast<std::uint32_t>(a.p), a.dim};
  for (int i = 0; i < a.dim; ++i) {
    Row ri = k.row(r, i);
    for (int j = 0; j < a.dim; ++j) {
      Row rj = k.row(r, j);
      Row lhs = k.product(ri, rj);
      Row inner = k.combine(k.basis_product(ri, j), k.basis_product(i, rj), 1);
      inner = k.combine(inner, k.table(i, j), weight % k.p);
      if (!k.equal(lhs, k.apply(r, inner))) return false;
    }
  }
  return true;
}

std::vector<FFMatrix> enumerate_nijenhuis_ff(const FFAlgebra& a, unsigned threads) {
  check_dim(a.dim);
  return enumerate(a.p, a.dim * a.dim, threads, [&](auto m) { return is_nijenhuis_ff(a, m); });
}

std::vector<FFMatrix> enumerate_rb_ff(const FFAlgebra& l, std::uint32_t weight, unsigned threads) {
  check_dim(l.dim);
  return enumerate(l.p, l.dim * l.dim, threads, [&](auto m) { return is_rota_baxter_ff(l, m, weight); });
}

std::vector<FFMatrix> enumerate_cybe_ff(const FFAlgebra& d, int base_dim, unsigned threads) {
  if (d.dim != 2 * base_dim) throw Error(ErrorKind::DimensionMismatch, "double must have twice the base dimension");
  const int n = base_dim;
  const int m = d.dim;
  const std::uint32_t p = static_cast<std::uint32_t>(d.p);
  auto accept = [&](std::span<const std::uint32_t> rmat) {
    // r = sum_ij r_ij (e_j (x) e_i* - e_i* (x) e_j)
    std::vector<std::array<std::uint32_t, 3>> r;  // (a, b, coeff)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        std::uint32_t c = rmat[i * n + j];
        if (!c) continue;
        r.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(n + i), c});
        r.push_back({static_cast<std::uint32_t>(n + i), static_cast<std::uint32_t>(j), p - c});
      }
    }
    std::vector<std::uint32_t> res(static_cast<std::size_t>(m) * m * m, 0);
    auto at = [&](int x, int y, int z) -> std::uint32_t& { return res[(static_cast<std::size_t>(x) * m + y) * m + z]; };
    for (const auto& [a, b, x] : r) {
      for (const auto& [c, e, y] : r) {
        std::uint32_t xy = x * y % p;
        for (int u = 0; u < m; ++u) {
          if (std::uint32_t k = d.at(a, c, u)) at(u, b, e) = (at(u, b, e) + xy * k) % p;
          if (std::uint32_t k = d.at(b, c, u)) at(a, u, e) = (at(a, u, e) + xy * k) % p;
          if (std::uint32_t k = d.at(b, e, u)) at(a, c, u) = (at(a, c, u) + xy * k) % p;
        }
      }
    }
    return std::all_of(res.begin(), res.end(), [](std::uint32_t v) { return v == 0; });
  };
  return enumerate(d.p, n * n, threads, accept);
}

namespace {

std::set<std::string, VariableLess> adjoined_symbols(const ParametricFamily& f) {
  std::set<std::string, VariableLess> out;
  auto scan = [&](const Scalar& s) {
    for (const auto& [sym, rad] : s.relations().rules()) out.insert(sym);
  };
  for (const auto& row : f.matrix.rows()) {
    for (const auto& [j, v] : row.coords()) scan(v);
  }
  for (const auto& c : f.constraints) scan(c);
  for (const auto& c : f.side_conditions) scan(c);
  return out;
}

const Polynomial* find_radicand(const ParametricFamily& f, const std::string& sym) {
  for (const auto& row : f.matrix.rows()) {
    for (const auto& [j, v] : row.coords()) {
      if (const Polynomial* r = v.relations().radicand(sym)) return r;
    }
  }
  for (const auto* list : {&f.constraints, &f.side_conditions}) {
    for (const auto& c : *list) {
      if (const Polynomial* r = c.relations().radicand(sym)) return r;
    }
  }
  return nullptr;
}

}  // namespace

ModAssignment default_algebra_values(const StructureConstants& a, const std::vector<const ParametricFamily*>& families,
                                     const ModContext& ctx) {
  const auto& params = a.params();
  if (params.empty()) return {};
  const std::uint64_t p = ctx.p;
  std::uint64_t combos = search_space_size(p - 1, static_cast<int>(params.size()));
  std::optional<ModAssignment> fallback;
  for (std::uint64_t idx = 0; idx < combos; ++idx) {
    ModAssignment values;
    std::uint64_t k = idx;
    for (auto it = params.rbegin(); it != params.rend(); ++it) {
      values[*it] = 1 + k % (p - 1);
      k /= (p - 1);
    }
    bool ok = true;
    for (const auto& c : a.constraints()) {
      try {
        if (substitute_mod(c, ctx, values).is_zero()) ok = false;
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) continue;
    if (!fallback) fallback = values;
    bool roots = true;
    for (const auto* f : families) {
      // Constraints on the algebra parameters alone, e.g. l - 1 != 0.
      for (const auto& c : f->constraints) {
        bool only_algebra = true;
        for (const auto& v : c.variables()) {
          if (!values.count(v)) only_algebra = false;
        }
        if (!only_algebra) continue;
        try {
          if (substitute_mod(c, ctx, values).is_zero()) roots = false;
        } catch (const Error&) {
          roots = false;
        }
      }
      for (const auto& sym : adjoined_symbols(*f)) {
        const Polynomial* rad = find_radicand(*f, sym);
        bool only_algebra = true;
        for (const auto& v : rad->variables()) {
          if (!values.count(v)) only_algebra = false;
        }
        if (!only_algebra) continue;
        try {
          auto r = substitute_mod(Scalar(*rad), ctx, values);
          if (r.is_zero() || !sqrt_mod(r.value(), p)) roots = false;
        } catch (const Error&) {
          roots = false;
        }
      }
    }
    if (roots) return values;
  }
  if (fallback) return *fallback;
  throw Error(ErrorKind::ConstraintViolated, "no values of the parameters of " + a.name() + " satisfy its constraints mod " +
                                                 std::to_string(p));
}

CoverageReport family_coverage(const StructureConstants& a, const std::vector<const ParametricFamily*>& families,
                               const ModContext& ctx, const FamilyKind& kind, std::optional<ModAssignment> algebra_values,
                               unsigned threads) {
  CoverageReport report;
  report.algebra = a.name();
  report.p = ctx.p;
  report.dim = a.dim();
  report.algebra_values = algebra_values ? *algebra_values : default_algebra_values(a, families, ctx);
  const ModAssignment& fixed = report.algebra_values;
  FFAlgebra ff = FFAlgebra::reduce(a, ctx, fixed);

  std::vector<FFMatrix> solutions;
  if (kind.type == FamilyKind::Type::Nijenhuis) {
    solutions = enumerate_nijenhuis_ff(ff, threads);
  } else {
    auto w = static_cast<std::uint32_t>(substitute_mod(kind.weight, ctx, fixed).value());
    solutions = enumerate_rb_ff(ff, w, threads);
  }
  report.total = solutions.size();
  std::vector<std::optional<CoverageMatch>> hit(solutions.size());

  const int n = a.dim();
  for (const auto* f : families) {
    if (f->matrix.dim() != n) throw Error(ErrorKind::DimensionMismatch, f->id + " does not match " + a.name());
    std::vector<std::string> free;
    for (const auto& v : f->params) {
      if (!fixed.count(v)) free.push_back(v);
    }
    auto symbols = adjoined_symbols(*f);
    std::vector<std::string> slots = free;
    for (const auto& [v, x] : fixed) slots.push_back(v);
    slots.insert(slots.end(), symbols.begin(), symbols.end());

    std::vector<CompiledScalar> radicands;
    for (const auto& sym : symbols) radicands.emplace_back(Scalar(*find_radicand(*f, sym)), ctx, slots);
    std::vector<std::pair<int, CompiledScalar>> entries;
    for (int i = 0; i < n; ++i) {
      for (const auto& [j, v] : f->matrix.row(i).coords()) entries.emplace_back(i * n + j, CompiledScalar(v, ctx, slots));
    }
    std::vector<CompiledScalar> constraints;
    for (const auto& c : f->constraints) constraints.emplace_back(c, ctx, slots);
    std::vector<CompiledScalar> sides;
    for (const auto& c : f->side_conditions) sides.emplace_back(c, ctx, slots);

    const std::uint64_t combos = search_space_size(ctx.p, static_cast<int>(free.size()));
    std::vector<std::uint64_t> values(slots.size(), 0);
    for (std::size_t k = 0; k < fixed.size(); ++k) values[free.size() + k] = std::next(fixed.begin(), k)->second;
    bool any = false;
    bool unsound_family = false;
    for (std::uint64_t idx = 0; idx < combos; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t v = free.size(); v-- > 0;) {
        values[v] = rest % ctx.p;
        rest /= ctx.p;
      }
      bool valid = true;
      std::size_t base = free.size() + fixed.size();
      for (std::size_t s = 0; s < radicands.size() && valid; ++s) {
        auto r = radicands[s].evaluate(values);
        auto root = r ? sqrt_mod(*r, ctx.p) : std::nullopt;
        if (!root) valid = false;
        else values[base + s] = *root;
      }
      for (const auto& c : constraints) {
        if (!valid) break;
        auto v = c.evaluate(values);
        if (!v || *v == 0) valid = false;
      }
      for (const auto& c : sides) {
        if (!valid) break;
        auto v = c.evaluate(values);
        if (!v || *v != 0) valid = false;
      }
      FFMatrix m(static_cast<std::size_t>(n) * n, 0);
      for (const auto& [pos, e] : entries) {
        if (!valid) break;
        auto v = e.evaluate(values);
        if (!v) valid = false;
        else m[pos] = static_cast<std::uint32_t>(*v);
      }
      if (!valid) continue;
      any = true;
      ModAssignment assignment;
      for (std::size_t v = 0; v < free.size(); ++v) assignment[free[v]] = values[v];
      auto it = std::lower_bound(solutions.begin(), solutions.end(), m);
      if (it == solutions.end() || *it != m) {
        ++report.unsound_total;
        unsound_family = true;
        if (report.unsound.size() < 64) report.unsound.push_back({m, f->id, std::move(assignment)});
        continue;
      }
      auto& slot = hit[it - solutions.begin()];
      if (!slot) slot = CoverageMatch{m, f->id, std::move(assignment)};
    }
    if (!any) report.empty_families.push_back(f->id);
    if (unsound_family) report.unsound_families.push_back(f->id);
  }
  for (std::size_t s = 0; s < solutions.size(); ++s) {
    if (hit[s]) {
      report.matched.push_back(std::move(*hit[s]));
    } else {
      report.unmatched.push_back(solutions[s]);
    }
  }
  return report;
}

}  // namespace nij
