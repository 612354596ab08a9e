#include "nij/verify.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "nij/error.hpp"

namespace nij {

bool completeness_asserted(const std::string& algebra) {
  static const std::set<std::string> field_independent{"A2", "A3", "A4", "A5", "B1", "B2", "B4"};
  return field_independent.count(algebra) > 0;
}

LinearOperator random_operator(int dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 8);
  std::uniform_int_distribution<int> small(-3, 3);
  LinearOperator m(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      int kind = pick(rng);
      if (kind < 3) continue;
      long re = small(rng);
      long im = kind == 8 ? small(rng) : 0;
      m.set_entry(i, j, Scalar(GaussianRational(mpq_class(re), mpq_class(im))));
    }
  }
  return m;
}

namespace {

FFMatrix ff_square(const FFMatrix& m, int n, std::uint64_t p) {
  FFMatrix out(m.size(), 0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      std::uint64_t s = 0;
      for (int j = 0; j < n; ++j) s += static_cast<std::uint64_t>(m[i * n + j]) * m[j * n + k];
      out[i * n + k] = static_cast<std::uint32_t>(s % p);
    }
  }
  return out;
}

bool ff_is_zero(const FFMatrix& m) {
  return std::all_of(m.begin(), m.end(), [](std::uint32_t x) { return x == 0; });
}

}  // namespace

std::vector<FFMatrix> square_zero_ff(int dim, std::uint64_t p) {
  const int entries = dim * dim;
  const std::uint64_t total = search_space_size(p, entries);
  std::vector<FFMatrix> out;
  FFMatrix m(entries, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (ff_is_zero(ff_square(m, dim, p))) out.push_back(m);
    for (int k = entries - 1; k >= 0; --k) {
      if (++m[k] < p) break;
      m[k] = 0;
    }
  }
  return out;
}

namespace {

std::string join(const std::vector<std::string>& xs, const std::string& sep = " ") {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

bool same_scalars(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a[k] == b[k])) return false;
  }
  return true;
}

std::optional<std::string> compare_algebra(const AlgebraDoc& a, const AlgebraDoc& b) {
  if (a.table.name() != b.table.name()) return "name";
  if (a.lie != b.lie) return "lie flag";
  if (a.table.basis_names() != b.table.basis_names()) return "basis";
  if (a.table.params() != b.table.params()) return "params";
  if (!same_scalars(a.table.constraints(), b.table.constraints())) return "constraints";
  if (!a.table.same_table(b.table)) return "products";
  if (a.from != b.from || a.notes != b.notes || a.source != b.source) return "annotations";
  return std::nullopt;
}

std::optional<std::string> compare_family(const ParametricFamily& a, const ParametricFamily& b) {
  if (a.id != b.id || a.algebra != b.algebra) return "header";
  if (a.params != b.params) return "params";
  if (!(a.matrix == b.matrix)) return "matrix";
  if (!same_scalars(a.constraints, b.constraints)) return "constraints";
  if (!same_scalars(a.side_conditions, b.side_conditions)) return "side conditions";
  if (a.derived_from != b.derived_from || a.role != b.role || a.corrects != b.corrects) return "provenance";
  if (a.notes != b.notes || a.source != b.source) return "annotations";
  return std::nullopt;
}

std::optional<std::string> compare_tensor(const TensorDoc& a, const TensorDoc& b) {
  if (a.id != b.id || a.target != b.target) return "header";
  if (a.params != b.params) return "params";
  if (!(a.r == b.r)) return "tensor";
  if (!same_scalars(a.constraints, b.constraints)) return "constraints";
  if (!same_scalars(a.side_conditions, b.side_conditions)) return "side conditions";
  if (a.derived_from != b.derived_from || a.role != b.role || a.variant != b.variant) return "provenance";
  if (a.notes != b.notes || a.source != b.source) return "annotations";
  return std::nullopt;
}

std::optional<std::string> compare_remark(const RemarkDoc& a, const RemarkDoc& b) {
  if (a.id != b.id || a.check != b.check || a.args != b.args || a.text != b.text || a.source != b.source) {
    return "fields";
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> roundtrip_file(const Catalog& catalog, const std::string& relative_path) {
  namespace fs = std::filesystem;
  const auto resolver = catalog.resolver();
  Document doc = parse_file((fs::path(catalog.dir()) / relative_path).string(), resolver);
  auto reparse = [&](const std::string& text) { return parse_document(text, resolver, relative_path + " (printed)"); };
  try {
    for (const auto& a : doc.algebras) {
      std::string text = print_algebra(a);
      Document d = reparse(text);
      if (d.algebras.size() != 1) return a.table.name() + ": printed text does not hold one algebra";
      if (auto diff = compare_algebra(a, d.algebras[0])) return a.table.name() + ": " + *diff + " differ";
      if (print_algebra(d.algebras[0]) != text) return a.table.name() + ": printing is not stable";
    }
    for (const auto& f : doc.families) {
      auto basis = catalog.basis(f.algebra);
      if (!basis) return f.id + ": unknown algebra";
      std::string text = print_family(f, *basis);
      Document d = reparse(text);
      if (d.families.size() != 1) return f.id + ": printed text does not hold one family";
      if (auto diff = compare_family(f, d.families[0])) return f.id + ": " + *diff + " differ";
      if (print_family(d.families[0], *basis) != text) return f.id + ": printing is not stable";
    }
    for (const auto& t : doc.tensors) {
      auto basis = catalog.basis(t.target);
      if (!basis) return t.id + ": unknown target";
      std::string text = print_tensor(t, *basis);
      Document d = reparse(text);
      if (d.tensors.size() != 1) return t.id + ": printed text does not hold one tensor";
      if (auto diff = compare_tensor(t, d.tensors[0])) return t.id + ": " + *diff + " differ";
      if (print_tensor(d.tensors[0], *basis) != text) return t.id + ": printing is not stable";
    }
    for (const auto& r : doc.remarks) {
      std::string text = print_remark(r);
      Document d = reparse(text);
      if (d.remarks.size() != 1) return r.id + ": printed text does not hold one remark";
      if (auto diff = compare_remark(r, d.remarks[0])) return r.id + ": " + *diff + " differ";
    }
  } catch (const Error& e) {
    return std::string("reparse failed: ") + e.what();
  }
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

class Runner {
 public:
  Runner(const Catalog& c, const VerifyOptions& o) : cat_(c), opt_(o), ctx_(ModContext::for_prime(o.prime)) {}

  Report run() {
    Report rep;
    std::ostringstream cmd;
    cmd << "verify-paper";
    if (opt_.section) cmd << " --section " << *opt_.section;
    cmd << " --prime " << opt_.prime;
    rep.command = cmd.str();
    report_ = &rep;
    index_corrections();
    if (want(2)) section2();
    if (want(3)) nijenhuis_section(3, 2);
    if (want(4)) nijenhuis_section(4, 3);
    if (want(5)) section5();
    remarks();
    std::stable_sort(rep.records.begin(), rep.records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.section < b.section; });
    return rep;
  }

 private:
  bool want(int s) const { return !opt_.section || *opt_.section == s; }

  // Times `body`, which fills status, detail and witness. Library errors turn
  // into FAIL records carrying the message.
  void record(int section, const std::string& check, const std::string& id,
              const std::function<void(CheckRecord&)>& body) {
    CheckRecord r;
    r.section = section;
    r.check = check;
    r.id = id;
    auto t0 = Clock::now();
    try {
      body(r);
    } catch (const Error& e) {
      r.status = Status::Fail;
      r.witness = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (r.status == Status::Fail && r.witness.empty()) r.witness = r.detail.empty() ? "(no detail)" : r.detail;
    report_->records.push_back(std::move(r));
  }

  void index_corrections() {
    for (const auto& f : cat_.families()) {
      if (!f.corrects.empty()) corrected_by_[f.corrects].push_back(f.id);
    }
    for (const auto& r : cat_.remarks()) {
      if (r.check == "cybe_variants" || r.check == "label_collision") {
        for (const auto& a : r.args) documented_[a] = r.id;
      }
    }
  }

  static std::string pair_witness(const PairResidual& w, const std::vector<std::string>& basis) {
    return "(" + basis[w.i] + ", " + basis[w.j] + ") -> " + w.residual.to_string(basis);
  }

  // ---- section 2 -------------------------------------------------------

  void section2() {
    record(2, "catalog.integrity", "catalog", [&](CheckRecord& r) {
      auto rep = cat_.integrity();
      std::ostringstream d;
      d << cat_.algebras().size() << " algebras, " << cat_.lie_algebras().size() << " Lie algebras, "
        << cat_.families().size() << " families, " << cat_.rb_operators().size() << " RB operators, "
        << cat_.tensors().size() << " tensors, " << cat_.remarks().size() << " remarks";
      r.detail = d.str();
      if (!rep.pass()) {
        r.status = Status::Fail;
        std::vector<std::string> msgs;
        for (const auto& i : rep.issues) msgs.push_back(i.id + ": " + i.message);
        r.witness = join(msgs, "; ");
      }
    });
    for (const auto& file : cat_.files()) {
      record(2, "catalog.roundtrip", file, [&](CheckRecord& r) {
        if (auto diff = roundtrip_file(cat_, file)) {
          r.status = Status::Fail;
          r.witness = *diff;
        }
      });
    }
    for (const auto& a : cat_.algebras()) {
      const auto& t = a.table;
      const bool associative_series = t.dim() == 3;
      record(2, "algebra.pre_lie", t.name(), [&](CheckRecord& r) {
        auto rep = check_pre_lie(t);
        r.detail = std::to_string(t.dim() * t.dim() * t.dim()) + " basis triples";
        if (!rep.holds()) {
          r.status = Status::Fail;
          const auto& f = rep.failures.front();
          r.witness = "(" + std::to_string(f.indices[0] + 1) + "," + std::to_string(f.indices[1] + 1) + "," +
                      std::to_string(f.indices[2] + 1) + ") -> " + f.residual.to_string(t.basis_names());
        }
      });
      if (associative_series) {
        record(2, "algebra.associative", t.name(), [&](CheckRecord& r) {
          auto rep = check_associative(t);
          if (!rep.holds()) {
            r.status = Status::Fail;
            const auto& f = rep.failures.front();
            r.witness = "(" + std::to_string(f.indices[0] + 1) + "," + std::to_string(f.indices[1] + 1) + "," +
                        std::to_string(f.indices[2] + 1) + ") -> " + f.residual.to_string(t.basis_names());
          }
        });
      }
      // A and C are the commutative series, B and D the non-commutative ones.
      record(2, "algebra.commutative", t.name(), [&](CheckRecord& r) {
        const char series = t.name()[0];
        const bool expect = series == 'A' || series == 'C';
        auto rep = check_commutative(t);
        r.detail = expect ? "commutative" : "non-commutative";
        if (rep.commutative() != expect) {
          r.status = Status::Fail;
          r.witness = expect ? "e" + std::to_string(rep.witnesses.front().first + 1) + " e" +
                                   std::to_string(rep.witnesses.front().second + 1) + " differs from the reverse"
                             : "all products commute";
        }
      });
    }
  }

  // ---- sections 3 and 4 ------------------------------------------------

  void nijenhuis_section(int section, int dim) {
    for (const auto& a : cat_.algebras()) {
      if (a.table.dim() != dim) continue;
      for (const auto* f : cat_.families_on(a.table.name())) family_check(section, a.table, *f);
    }
    for (const auto& a : cat_.algebras()) {
      if (a.table.dim() != dim) continue;
      random_identities(section, a.table);
    }
    if (!opt_.oracle) return;
    for (const auto& a : cat_.algebras()) {
      if (a.table.dim() != dim) continue;
      coverage(section, a.table);
    }
  }

  void family_check(int section, const StructureConstants& a, const ParametricFamily& f) {
    record(section, "nijenhuis", f.id, [&](CheckRecord& r) {
      auto rep = validate_family(a, f, FamilyKind::nijenhuis());
      if (f.role == FamilyRole::Corrected) r.detail = "corrects " + f.corrects;
      if (rep.pass) return;
      r.witness = pair_witness(*rep.witness, a.basis_names());
      auto it = corrected_by_.find(f.id);
      if (it != corrected_by_.end()) {
        bool fixed = false;
        for (const auto& c : it->second) fixed = fixed || validate_family(a, cat_.family(c), FamilyKind::nijenhuis()).pass;
        if (fixed) {
          r.status = Status::Finding;
          r.detail = "listed family is not Nijenhuis; corrected by " + join(it->second, ", ");
          return;
        }
      }
      r.status = Status::Fail;
      r.detail = "nonzero residual";
    });
  }

  void random_identities(int section, const StructureConstants& a) {
    std::mt19937_64 rng(opt_.seed ^ std::hash<std::string>{}(a.name()));
    std::vector<LinearOperator> ops;
    for (int k = 0; k < opt_.random_operators; ++k) ops.push_back(random_operator(a.dim(), rng));
    const int n = a.dim();
    const std::string count = std::to_string(ops.size()) + " random operators";
    record(section, "identity.square", a.name(), [&](CheckRecord& r) {
      r.detail = count;
      for (std::size_t k = 0; k < ops.size() && r.status == Status::Pass; ++k) {
        LinearOperator sq = operator_square(ops[k]);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            Vector lhs = nijenhuis_residual(a, ops[k], i, j);
            Vector rhs = rota_baxter_residual(a, ops[k], Scalar(0), i, j) + sq.apply(a.basis_product(i, j));
            if (!(lhs == rhs)) {
              r.status = Status::Fail;
              r.witness = "operator " + ops[k].to_string(a.basis_names());
            }
          }
        }
      }
    });
    record(section, "identity.constants", a.name(), [&](CheckRecord& r) {
      r.detail = count;
      for (std::size_t k = 0; k < ops.size() && r.status == Status::Pass; ++k) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            if (!(nijenhuis_residual(a, ops[k], i, j) == nijenhuis_residual_constants(a, ops[k], i, j))) {
              r.status = Status::Fail;
              r.witness = "operator " + ops[k].to_string(a.basis_names());
            }
          }
        }
      }
    });
    record(section, "identity.descent", a.name(), [&](CheckRecord& r) {
      r.detail = count;
      LieAlgebra g = sub_adjacent(a);
      for (std::size_t k = 0; k < ops.size() && r.status == Status::Pass; ++k) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            Vector lhs = rota_baxter_residual(g, ops[k], Scalar(0), i, j);
            Vector rhs = rota_baxter_residual(a, ops[k], Scalar(0), i, j) -
                         rota_baxter_residual(a, ops[k], Scalar(0), j, i);
            if (!(lhs == rhs)) {
              r.status = Status::Fail;
              r.witness = "operator " + ops[k].to_string(a.basis_names());
            }
          }
        }
      }
    });
  }

  void coverage(int section, const StructureConstants& a) {
    auto families = cat_.families_on(a.name());
    CoverageReport cov;
    bool have = false;
    const std::string at = " mod " + std::to_string(opt_.prime);
    record(section, "oracle.soundness", a.name(), [&](CheckRecord& r) {
      cov = family_coverage(a, families, ctx_, FamilyKind::nijenhuis(), std::nullopt, opt_.threads);
      have = true;
      std::ostringstream d;
      d << cov.total << " solutions" << at;
      if (!cov.algebra_values.empty()) {
        d << " at";
        for (const auto& [k, v] : cov.algebra_values) d << " " << k << "=" << v;
      }
      if (!cov.empty_families.empty()) d << "; no specialization: " << join(cov.empty_families, ", ");
      r.detail = d.str();
      if (cov.sound()) return;
      r.witness = cov.unsound.front().family + " gives " + to_string(cov.unsound.front().matrix, a.dim());
      // A listed family with a verified correction is an erratum, not a failure.
      bool all_documented = true;
      for (const auto& f : cov.unsound_families) {
        auto it = corrected_by_.find(f);
        if (it == corrected_by_.end() || cat_.family(f).role != FamilyRole::Stated) all_documented = false;
      }
      r.status = all_documented ? Status::Finding : Status::Fail;
      r.detail += "; " + std::to_string(cov.unsound_total) + " specializations outside the solution set from " +
                  join(cov.unsound_families, ", ");
    });
    if (!have) return;
    record(section, "oracle.completeness", a.name(), [&](CheckRecord& r) {
      std::ostringstream d;
      d << cov.matched.size() << " of " << cov.total << " solutions reached";
      const bool asserted = completeness_asserted(a.name());
      if (!asserted) d << " (reported only)";
      r.detail = d.str();
      if (cov.complete()) return;
      std::vector<std::string> shown;
      for (std::size_t k = 0; k < cov.unmatched.size() && k < 8; ++k) shown.push_back(to_string(cov.unmatched[k], a.dim()));
      r.witness = std::to_string(cov.unmatched.size()) + " unmatched: " + join(shown, " ") +
                  (cov.unmatched.size() > 8 ? " ..." : "");
      r.status = asserted ? Status::Fail : Status::Finding;
    });
  }

  // ---- section 5 -------------------------------------------------------

  void section5() {
    std::map<std::string, std::string> alias;  // algebra -> Lie id
    for (const auto& l : cat_.lie_algebras()) {
      for (const auto& src : l.from) alias[src] = l.table.name();
    }
    for (const auto& a : cat_.algebras()) {
      record(5, "lie.sub_adjacent", a.table.name(), [&](CheckRecord& r) {
        LieAlgebra g = sub_adjacent(a.table);
        auto it = alias.find(a.table.name());
        if (it == alias.end()) {
          r.detail = "abelian";
          if (!g.is_abelian()) {
            r.status = Status::Fail;
            r.witness = "nonzero bracket and no catalog Lie algebra lists " + a.table.name();
          }
          return;
        }
        r.detail = "equals " + it->second;
        if (!g.table().same_table(cat_.algebra(it->second).table)) {
          r.status = Status::Fail;
          r.witness = "computed bracket differs from " + it->second;
        }
      });
    }
    for (const auto& l : cat_.lie_algebras()) {
      const std::string id = l.table.name();
      record(5, "lie.double", id, [&](CheckRecord& r) {
        LieAlgebra g = cat_.lie(id);
        auto co = check_coadjoint(g);
        SemidirectDouble d(g);  // Jacobi on every basis triple of the double
        const int n = g.dim();
        bool restrict_ok = true;
        bool dual_abelian = true;
        for (int i = 0; i < 2 * n; ++i) {
          for (int j = 0; j < 2 * n; ++j) {
            const Vector& v = d.total().table().basis_product(i, j);
            if (i < n && j < n) {
              Vector base(2 * n);
              for (const auto& [t, c] : g.table().basis_product(i, j).coords()) base.set(t, c);
              if (!(v == base)) restrict_ok = false;
            }
            if (i >= n && j >= n && !v.is_zero()) dual_abelian = false;
          }
        }
        r.detail = "coadjoint representation, pairing, Jacobi on the double";
        if (!co.holds() || !restrict_ok || !dual_abelian) {
          r.status = Status::Fail;
          r.witness = std::string(co.representation ? "" : "representation property fails; ") +
                      (co.pairing ? "" : "pairing identity fails; ") +
                      (restrict_ok ? "" : "bracket on g differs from the base; ") +
                      (dual_abelian ? "" : "dual part is not abelian");
        }
      });
    }
    for (const auto& f : cat_.rb_operators()) {
      const auto& l = cat_.algebra(f.algebra).table;
      record(5, "rb", f.id, [&](CheckRecord& r) {
        auto rep = validate_family(l, f, FamilyKind::rota_baxter(Scalar(0)));
        r.detail = "weight 0 on " + f.algebra;
        if (!rep.pass) {
          r.status = Status::Fail;
          r.witness = pair_witness(*rep.witness, l.basis_names());
        }
      });
      record(5, "rb.derived", f.id, [&](CheckRecord& r) {
        // Each source algebra must see the operator as a square-zero Nijenhuis map.
        LinearOperator m = reduced_matrix(f);
        std::vector<std::string> bad;
        std::set<std::string> algebras;
        for (const auto& src : f.derived_from) algebras.insert(cat_.family(src).algebra);
        for (const auto& alg : algebras) {
          if (!validate_family(cat_.algebra(alg).table, f, FamilyKind::nijenhuis()).pass) bad.push_back(alg);
        }
        r.detail = "square-zero Nijenhuis on " + join(std::vector<std::string>(algebras.begin(), algebras.end()), ", ");
        if (!operator_square(m).is_zero()) bad.push_back("square is nonzero");
        if (!bad.empty()) {
          r.status = Status::Fail;
          r.witness = join(bad, ", ");
        }
      });
      record(5, "cybe.lemma", f.id, [&](CheckRecord& r) {
        SemidirectDouble d = cat_.double_of(f.algebra);
        Tensor2 t = skewize(operator_to_tensor(reduced_matrix(f), d.base_dim()));
        Tensor3 res = cybe_residual(d, t);
        r.detail = "R - R^21 on double(" + f.algebra + ")";
        if (!res.is_zero()) {
          r.status = Status::Fail;
          r.witness = res.to_string(d.total().basis_names());
        }
      });
    }
    for (const auto& t : cat_.tensors()) {
      SemidirectDouble d = cat_.double_of(t.lie());
      const auto& names = d.total().basis_names();
      record(5, "cybe", t.id, [&](CheckRecord& r) {
        Tensor3 res = cybe_residual(d, t.r);
        r.detail = "residual in the tensor cube of " + t.target;
        if (!(t.r + flip(t.r)).is_zero()) {
          r.status = Status::Fail;
          r.witness = "not skew-symmetric";
          return;
        }
        if (res.is_zero()) return;
        r.witness = res.to_string(names);
        auto doc = documented_.find(t.id);
        r.status = doc == documented_.end() ? Status::Fail : Status::Finding;
        if (doc != documented_.end()) r.detail = "nonzero residual; see remark " + doc->second;
      });
      record(5, "cybe.match", t.id, [&](CheckRecord& r) {
        std::vector<std::string> matches;
        std::vector<std::string> misses;
        for (const auto& src : t.derived_from) {
          const auto& f = cat_.rb_operator(src);
          Tensor2 expect = skewize(operator_to_tensor(reduced_matrix(f), d.base_dim()));
          (expect == t.r ? matches : misses).push_back(src);
        }
        if (misses.empty()) {
          r.detail = "equals R - R^21 for " + join(matches, ", ");
          return;
        }
        r.detail = "differs from R - R^21 for " + join(misses, ", ");
        r.witness = t.r.to_string(names);
        r.status = documented_.count(t.id) ? Status::Finding : Status::Fail;
      });
    }
    if (!opt_.oracle) return;
    for (const auto& l : cat_.lie_algebras()) {
      const std::string id = l.table.name();
      if (l.table.dim() != 2) continue;
      record(5, "oracle.lemma", id, [&](CheckRecord& r) {
        FFAlgebra g = FFAlgebra::reduce(l.table, ctx_);
        FFAlgebra d = FFAlgebra::reduce(cat_.double_of(id).total().table(), ctx_);
        auto rb = enumerate_rb_ff(g, 0, opt_.threads);
        auto cy = enumerate_cybe_ff(d, 2, opt_.threads);
        const std::uint64_t all = search_space_size(opt_.prime, 4);
        r.detail = std::to_string(rb.size()) + " Rota-Baxter maps of " + std::to_string(all) + "; " +
                   std::to_string(cy.size()) + " CYBE solutions R - R^21";
        if (rb != cy) {
          r.status = Status::Fail;
          std::vector<FFMatrix> diff;
          std::set_symmetric_difference(rb.begin(), rb.end(), cy.begin(), cy.end(), std::back_inserter(diff));
          r.witness = to_string(diff.front(), 2);
        }
      });
      record(5, "oracle.nilpotent", id, [&](CheckRecord& r) {
        FFAlgebra g = FFAlgebra::reduce(l.table, ctx_);
        auto nil = square_zero_ff(2, opt_.prime);
        r.detail = std::to_string(nil.size()) + " square-zero maps are Rota-Baxter";
        for (const auto& m : nil) {
          if (!is_rota_baxter_ff(g, m, 0)) {
            r.status = Status::Fail;
            r.witness = to_string(m, 2);
            return;
          }
        }
      });
    }
    for (const auto& l : cat_.lie_algebras()) {
      const std::string id = l.table.name();
      auto ops = cat_.rb_on(id);
      if (ops.empty()) continue;
      record(5, "oracle.rb_soundness", id, [&](CheckRecord& r) {
        auto cov = family_coverage(l.table, ops, ctx_, FamilyKind::rota_baxter(Scalar(0)), std::nullopt, opt_.threads);
        r.detail = "table reaches " + std::to_string(cov.matched.size()) + " of " + std::to_string(cov.total) +
                   " weight-0 operators mod " + std::to_string(opt_.prime);
        if (!cov.sound()) {
          r.status = Status::Fail;
          r.witness = cov.unsound.front().family + " gives " + to_string(cov.unsound.front().matrix, l.table.dim());
        }
      });
    }
  }

  // ---- remarks ---------------------------------------------------------

  const ParametricFamily* operator_by_id(const std::string& id) const {
    if (cat_.contains(EntryKind::NijenhuisFamily, id)) return &cat_.family(id);
    if (cat_.contains(EntryKind::RbOperator, id)) return &cat_.rb_operator(id);
    return nullptr;
  }

  int remark_section(const RemarkDoc& rm) const {
    if (rm.check == "same_operator" || rm.check == "label_collision") {
      if (cat_.contains(EntryKind::NijenhuisFamily, rm.args.front())) {
        return cat_.algebra(cat_.family(rm.args.front()).algebra).table.dim() == 2 ? 3 : 4;
      }
    }
    return 5;
  }

  void remarks() {
    for (const auto& rm : cat_.remarks()) {
      if (rm.args.empty()) continue;
      const int section = remark_section(rm);
      if (!want(section)) continue;
      const bool needs_oracle = rm.check == "square_zero_nijenhuis_trivial" || rm.check == "square_zero_is_rb";
      if (needs_oracle && !opt_.oracle) continue;
      record(section, "remark." + rm.check, rm.id, [&](CheckRecord& r) { remark(rm, r); });
    }
  }

  void remark(const RemarkDoc& rm, CheckRecord& r) {
    const auto& args = rm.args;
    if (rm.check == "abelian_sub_adjacent") {
      std::vector<std::string> bad;
      for (const auto& a : args) {
        if (!sub_adjacent(cat_.algebra(a).table).is_abelian()) bad.push_back(a);
      }
      r.detail = std::to_string(args.size()) + " algebras with abelian commutator";
      if (!bad.empty()) {
        r.status = Status::Fail;
        r.witness = "non-abelian: " + join(bad, ", ");
      }
    } else if (rm.check == "square_zero_nijenhuis_trivial") {
      const auto& a = cat_.algebra(args.at(0)).table;
      FFAlgebra ff = FFAlgebra::reduce(a, ctx_, default_algebra_values(a, cat_.families_on(a.name()), ctx_));
      auto sols = enumerate_nijenhuis_ff(ff, opt_.threads);
      std::size_t nil = 0;
      for (const auto& m : sols) {
        if (!ff_is_zero(ff_square(m, a.dim(), opt_.prime))) continue;
        ++nil;
        if (!ff_is_zero(m)) {
          r.status = Status::Fail;
          r.witness = to_string(m, a.dim());
        }
      }
      r.detail = std::to_string(nil) + " square-zero among " + std::to_string(sols.size()) + " Nijenhuis maps mod " +
                 std::to_string(opt_.prime);
    } else if (rm.check == "square_zero_is_rb") {
      const auto& l = cat_.algebra(args.at(1)).table;
      FFAlgebra ff = FFAlgebra::reduce(l, ctx_);
      auto nil = square_zero_ff(l.dim(), opt_.prime);
      r.detail = std::to_string(nil.size()) + " square-zero maps mod " + std::to_string(opt_.prime) +
                 " are weight-0 Rota-Baxter on " + l.name();
      for (const auto& m : nil) {
        if (!is_rota_baxter_ff(ff, m, 0)) {
          r.status = Status::Fail;
          r.witness = to_string(m, l.dim());
          return;
        }
      }
      // The premise: every map on the algebra is Nijenhuis.
      if (!validate_family(cat_.algebra(args.at(0)).table, *cat_.families_on(args.at(0)).front(),
                           FamilyKind::nijenhuis())
               .pass) {
        r.status = Status::Fail;
        r.witness = "the generic family on " + args.at(0) + " is not Nijenhuis";
      }
    } else if (rm.check == "same_operator") {
      const ParametricFamily* first = operator_by_id(args.at(0));
      LinearOperator m0 = reduced_matrix(*first);
      std::vector<std::string> differ;
      for (std::size_t k = 1; k < args.size(); ++k) {
        if (!(reduced_matrix(*operator_by_id(args[k])) == m0)) differ.push_back(args[k]);
      }
      r.detail = join(args, " = ");
      if (!differ.empty()) {
        r.status = Status::Fail;
        r.witness = "differs from " + args[0] + ": " + join(differ, ", ");
      }
    } else if (rm.check == "label_collision") {
      const ParametricFamily* a = operator_by_id(args.at(0));
      const ParametricFamily* b = operator_by_id(args.at(1));
      if (reduced_matrix(*a) == reduced_matrix(*b)) {
        r.status = Status::Fail;
        r.witness = "the two entries are the same operator";
        return;
      }
      r.status = Status::Finding;
      r.detail = "two different operators share one printed label; stored as " + args[0] + " and " + args[1];
    } else if (rm.check == "cybe_variants") {
      std::vector<std::string> good;
      std::vector<std::string> bad;
      for (const auto& id : args) {
        const auto& t = cat_.tensor(id);
        (cybe_residual(cat_.double_of(t.lie()), t.r).is_zero() ? good : bad).push_back(id);
      }
      if (good.empty()) {
        r.status = Status::Fail;
        r.witness = "no variant verifies";
        return;
      }
      std::vector<std::string> derived;
      for (const auto& id : args) {
        const auto& t = cat_.tensor(id);
        bool match = !t.derived_from.empty();
        for (const auto& src : t.derived_from) {
          const auto& f = cat_.rb_operator(src);
          match = match && skewize(operator_to_tensor(reduced_matrix(f), f.matrix.dim())) == t.r;
        }
        if (match) derived.push_back(id);
      }
      r.status = Status::Finding;
      r.detail = "zero residual: " + join(good, ", ") + (bad.empty() ? "" : "; nonzero residual: " + join(bad, ", ")) +
                 "; equal to R - R^21 of its source operator: " + (derived.empty() ? "none" : join(derived, ", "));
    } else {
      r.status = Status::Fail;
      r.witness = "unknown check " + rm.check;
    }
  }

  const Catalog& cat_;
  VerifyOptions opt_;
  ModContext ctx_;
  Report* report_ = nullptr;
  std::map<std::string, std::vector<std::string>> corrected_by_;
  std::map<std::string, std::string> documented_;  // id -> remark documenting a discrepancy
};

}  // namespace

Report run_verify_paper(const Catalog& catalog, const VerifyOptions& options) {
  if (options.section && (*options.section < 2 || *options.section > 5)) {
    throw Error(ErrorKind::UnknownId, "no section " + std::to_string(*options.section) + " (sections are 2 to 5)");
  }
  ModContext ctx = ModContext::for_prime(options.prime);
  if (options.oracle && !ctx.i_root) {
    throw Error(ErrorKind::NoSquareRootInField, "-1 has no square root mod " + std::to_string(options.prime) +
                                                    "; the catalog needs i (use a prime p = 1 mod 4)");
  }
  return Runner(catalog, options).run();
}

}  // namespace nij
