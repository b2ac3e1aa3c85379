#pragma once

// b⊗b, the relation space K, {b,b} = (b⊗b)/K with its bracket, HF(b),
// the uniform property and the quotients ⟨b,b⟩ = {b,b}/K_sub.
//
// Tensor index of e_p ⊗ e_q is p*dim(b) + q. Operators on b are flattened
// row-major by column: entry k of d(e_u) sits at u*dim(b) + k.

#include <string>
#include <utility>
#include <vector>

#include "rootgrade/bee.hpp"
#include "rootgrade/lie_table.hpp"

namespace rootgrade {

struct RelationGenerator {
  std::string family;
  SparseVec tensor;
};

struct UniformResult {
  bool uniform = true;
  std::optional<SparseVec> witness;  // basis vector of K_sub with nonzero Σβ*
  SparseVec image;                   // its Σβ* in a
};

class BBSpace {
 public:
  BBSpace(BAlgebra b, Index ell) : b_(std::move(b)), ell_(ell), db_(b_.dim()) {
    if (ell == 0) throw Error(ErrorKind::InvalidArgument, "ell must be positive");
    build_generators();
    K_ = Subspace(db_ * db_);
    for (const auto& g : gens_) K_.insert(g.tensor);
    classes_ = K_.free_columns();
    derivs_.resize(db_ * db_);
    parallel_for(db_ * db_, [&](std::size_t m) {
      derivs_[m] = b_.derivation(SparseVec::unit(m / db_), SparseVec::unit(m % db_), ell_);
    });
    build_table();
  }

  const BAlgebra& b() const noexcept { return b_; }
  Index ell() const noexcept { return ell_; }
  Index b_dim() const noexcept { return db_; }
  Index tensor_dim() const noexcept { return db_ * db_; }
  const Subspace& relations() const noexcept { return K_; }
  const std::vector<RelationGenerator>& generators() const noexcept { return gens_; }
  Index dim() const noexcept { return classes_.size(); }
  /// Elementary tensor index representing class i.
  Index class_tensor(Index i) const { return classes_.at(i); }
  std::pair<Index, Index> class_pair(Index i) const { return {classes_.at(i) / db_, classes_.at(i) % db_}; }
  const LieTable& table() const noexcept { return table_; }

  SparseVec tensor(const SparseVec& x, const SparseVec& y) const {
    std::vector<SparseVec::Entry> e;
    for (const auto& [p, a] : x)
      for (const auto& [q, c] : y) e.emplace_back(p * db_ + q, a * c);
    return SparseVec(std::move(e));
  }

  /// Class coordinates of a tensor.
  SparseVec class_of_tensor(const SparseVec& t) const { return K_.quotient_coords(t); }
  SparseVec class_of(const SparseVec& x, const SparseVec& y) const { return class_of_tensor(tensor(x, y)); }

  /// Σ t_m d_m for a tensor t.
  LinearMap derivation_of_tensor(const SparseVec& t) const {
    std::vector<SparseVec> cols(db_);
    for (const auto& [m, c] : t)
      for (Index u = 0; u < db_; ++u) cols[u].axpy(c, derivs_[m].column(u));
    return LinearMap(db_, std::move(cols));
  }
  const LinearMap& derivation_of_pair(Index p, Index q) const { return derivs_.at(p * db_ + q); }

  /// [s, t] on tensors, extended bilinearly: Σ s_m (d_m(x)⊗y + x⊗d_m(y)) over t = Σ x⊗y.
  SparseVec bracket_tensors(const SparseVec& s, const SparseVec& t) const {
    LinearMap d = derivation_of_tensor(s);
    SparseVec out;
    for (const auto& [m, c] : t) {
      SparseVec x = SparseVec::unit(m / db_), y = SparseVec::unit(m % db_);
      out.axpy(c, tensor(d.apply(x), y) + tensor(x, d.apply(y)));
    }
    return out;
  }

  SparseVec bracket(const SparseVec& s, const SparseVec& t) const { return table_.bracket(s, t); }

  /// Flattened d for each class basis element.
  std::vector<SparseVec> flattened_derivations() const {
    std::vector<SparseVec> rows(dim());
    for (Index i = 0; i < dim(); ++i) rows[i] = flatten(derivs_[classes_[i]]);
    return rows;
  }

  Subspace compute_hf() const { return kernel(flattened_derivations(), db_ * db_); }

  /// Σβ* of class i (evaluated on its elementary representative).
  SparseVec beta_star_of_class(Index i) const {
    auto [p, q] = class_pair(i);
    return b_.beta_star(SparseVec::unit(p), SparseVec::unit(q)).bstar;
  }

  SparseVec beta_star_of(const SparseVec& class_vec) const {
    SparseVec r;
    for (const auto& [i, c] : class_vec) r.axpy(c, beta_star_of_class(i));
    return r;
  }

  UniformResult check_uniform(const Subspace& k_sub) const {
    if (k_sub.ambient_dim() != dim()) throw Error(ErrorKind::ShapeMismatch, "K_sub must live in {b,b}");
    Subspace hf = compute_hf();
    for (const auto& v : k_sub.basis())
      if (!hf.contains(v)) throw Error(ErrorKind::NotInHF, "K_sub element " + v.str() + " is not in HF(b)");
    UniformResult r;
    for (const auto& v : k_sub.basis()) {
      SparseVec s = beta_star_of(v);
      if (!s.empty()) {
        r.uniform = false;
        r.witness = v;
        r.image = std::move(s);
        return r;
      }
    }
    return r;
  }

  // ---- verification of the construction itself ----

  /// [K, t] ⊆ K and [t, K] ⊆ K for every generator and every class basis tensor.
  CheckResult check_relations_invariant() const {
    CheckResult r{"relations_invariant"};
    for (Index gi = 0; gi < gens_.size(); ++gi) {
      for (Index i = 0; i < dim(); ++i) {
        SparseVec t = SparseVec::unit(classes_[i]);
        SparseVec left = K_.reduce(bracket_tensors(gens_[gi].tensor, t));
        SparseVec right = K_.reduce(bracket_tensors(t, gens_[gi].tensor));
        for (const SparseVec* s : {&left, &right}) {
          if (!s->empty()) {
            if (!r.witness) r.witness = Witness{{gi, i}, *s};
            ++r.failures;
          }
        }
      }
    }
    r.passed = r.failures == 0;
    return r;
  }

  /// Every generator of K maps to the zero derivation.
  CheckResult check_relations_in_kernel() const {
    CheckResult r{"relations_in_kernel_of_d"};
    for (Index gi = 0; gi < gens_.size(); ++gi) {
      SparseVec f = flatten(derivation_of_tensor(gens_[gi].tensor));
      if (!f.empty()) {
        if (!r.witness) r.witness = Witness{{gi}, f};
        ++r.failures;
      }
    }
    r.passed = r.failures == 0;
    return r;
  }

  CheckResult check_hf_central() const {
    CheckResult r{"hf_central"};
    Subspace hf = compute_hf();
    for (Index h = 0; h < hf.rank(); ++h)
      for (Index j = 0; j < dim(); ++j) {
        SparseVec s = table_.bracket(hf.basis()[h], SparseVec::unit(j));
        if (!s.empty()) {
          if (!r.witness) r.witness = Witness{{h, j}, s};
          ++r.failures;
        }
      }
    r.passed = r.failures == 0;
    return r;
  }

 private:
  SparseVec flatten(const LinearMap& d) const {
    std::vector<SparseVec::Entry> e;
    for (Index u = 0; u < db_; ++u)
      for (const auto& [k, c] : d.column(u)) e.emplace_back(u * db_ + k, c);
    return SparseVec(std::move(e));
  }

  void build_generators() {
    const auto& q = b_.quadruple();
    const Index da = b_.a_dim(), dc = b_.c_dim();
    auto ea = [](Index i) { return SparseVec::unit(i); };
    auto ec = [&](Index k) { return SparseVec::unit(da + k); };
    auto add = [&](const char* fam, SparseVec t) {
      if (!t.empty()) gens_.push_back({fam, std::move(t)});
    };
    for (Index i = 0; i < da; ++i)
      for (Index k = 0; k < dc; ++k) {
        add("a_c", tensor(ea(i), ec(k)));
        add("c_a", tensor(ec(k), ea(i)));
      }
    for (const auto& x : b_.split().A.basis())
      for (const auto& y : b_.split().B.basis()) add("A_B", tensor(x, y));
    for (Index i = 0; i < da; ++i)
      for (Index j = 0; j < da; ++j) add("a_sym", tensor(ea(i), ea(j)) + tensor(ea(j), ea(i)));
    for (Index k = 0; k < dc; ++k)
      for (Index l = 0; l < dc; ++l) add("c_skew", tensor(ec(k), ec(l)) - tensor(ec(l), ec(k)));
    for (Index i = 0; i < da; ++i)
      for (Index j = 0; j < da; ++j)
        for (Index l = 0; l < da; ++l)
          add("a_cyclic", tensor(b_.amul(ea(i), ea(j)), ea(l)) + tensor(b_.amul(ea(l), ea(i)), ea(j)) +
                              tensor(b_.amul(ea(j), ea(l)), ea(i)));
    for (Index k = 0; k < dc; ++k)
      for (Index l = 0; l < dc; ++l)
        for (Index i = 0; i < da; ++i) {
          SparseVec c = SparseVec::unit(k), c2 = SparseVec::unit(l), al = ea(i);
          SparseVec t = tensor(q.form(c, c2), al);
          t += tensor(b_.from_c(q.act(b_.astar(al), c2)), b_.from_c(c));
          t -= tensor(b_.from_c(q.act(al, c)), b_.from_c(c2));
          add("form", std::move(t));
        }
  }

  void build_table() {
    const Index n = dim();
    table_ = LieTable(n);
    std::vector<std::vector<SparseVec>> rows(n, std::vector<SparseVec>(n));
    parallel_for(n, [&](std::size_t i) {
      const LinearMap& d = derivs_[classes_[i]];
      for (Index j = 0; j < n; ++j) {
        SparseVec x = SparseVec::unit(classes_[j] / db_), y = SparseVec::unit(classes_[j] % db_);
        rows[i][j] = class_of_tensor(tensor(d.apply(x), y) + tensor(x, d.apply(y)));
      }
    });
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) table_.set(i, j, std::move(rows[i][j]));
  }

  BAlgebra b_;
  Index ell_;
  Index db_;
  std::vector<RelationGenerator> gens_;
  Subspace K_;
  std::vector<Index> classes_;
  std::vector<LinearMap> derivs_;
  LieTable table_;
};

/// ⟨b,b⟩ = {b,b}/K_sub with the induced bracket.
struct DDQuotient {
  Subspace k_sub;
  std::vector<Index> classes;  // {b,b} class indices whose images form the quotient basis
  LieTable table;

  Index dim() const { return classes.size(); }
  SparseVec reduce(const SparseVec& class_vec) const { return k_sub.quotient_coords(class_vec); }
};

inline DDQuotient quotient_dd(const BBSpace& bb, const Subspace& k_sub) {
  UniformResult u = bb.check_uniform(k_sub);
  if (!u.uniform) throw Error(ErrorKind::NotUniform, "K_sub element " + u.witness->str() + " has Σβ* = " + u.image.str());
  DDQuotient q{k_sub, k_sub.free_columns(), {}};
  q.table = LieTable(q.dim());
  for (Index i = 0; i < q.dim(); ++i)
    for (Index j = 0; j < q.dim(); ++j)
      q.table.set(i, j, q.reduce(bb.table().at(q.classes[i], q.classes[j])));
  return q;
}

}  // namespace rootgrade
