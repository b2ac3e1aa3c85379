#pragma once

// L(q,K) = (G⊗A) ⊕ (S⊗B) ⊕ (V⊗C) ⊕ ⟨b,b⟩ with its bracket and grading checks.
//
// Basis order: G⊗A (g-major), then S⊗B, then V⊗C (v-major), then ⟨b,b⟩.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "rootgrade/homology.hpp"
#include "rootgrade/lie_table.hpp"
#include "rootgrade/symplectic.hpp"

namespace rootgrade {

/// Everything the verifier needs; also what `export` writes and `--structure` reads back.
struct GradedStructure {
  std::string name;
  Index n = 0;
  Index ell = 0;
  std::array<Index, 4> summands{};  // dims of G⊗A, S⊗B, V⊗C, ⟨b,b⟩
  std::vector<std::string> labels;
  std::vector<Weight> weights;
  std::vector<SparseVec> cartan;  // h_i ⊗ 1 as elements of L
  LieTable table;

  Index dim() const { return table.dim(); }
};

struct GradedElement {
  SparseVec ga, sb, vc, dd;
};

struct GradedReport {
  std::vector<CheckResult> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

class GradedAlgebra {
 public:
  /// K_sub lives in the {b,b} class coordinates; an empty optional means K_sub = {0}.
  GradedAlgebra(const CoordinateQuadruple& q, const IndexData& idx, std::optional<Subspace> k_sub = std::nullopt)
      : idx_(idx), bb_(BAlgebra(check_kind(q)), idx.ell) {
    if (idx.ell < 4) throw Error(ErrorKind::InvalidArgument, "graded assembly needs ell >= 4");
    if (idx.I0.size() != idx.ell) throw Error(ErrorKind::InvalidArgument, "|I0| must equal ell");
    Subspace ks = k_sub ? *k_sub : Subspace(bb_.dim());
    dd_ = quotient_dd(bb_, ks);
    const BAlgebra& b = bb_.b();
    A_ = b.split().A.basis();
    B_ = b.split().B.basis();
    Acoord_ = BasisCoordinates(A_, b.a_dim());
    Bcoord_ = BasisCoordinates(B_, b.a_dim());
    G_ = build_g(idx_);
    S_ = build_s(idx_);
    const Index V2 = idx_.vdim() * idx_.vdim();
    Gc_ = BasisCoordinates(flat_ops(G_), V2);
    Sc_ = BasisCoordinates(flat_ops(S_), V2);
    J0_ = projector_J(idx_, idx_.I0);
    off_[0] = 0;
    off_[1] = G_.size() * A_.size();
    off_[2] = off_[1] + S_.size() * B_.size();
    off_[3] = off_[2] + idx_.vdim() * b.c_dim();
    dim_ = off_[3] + dd_.dim();
    build_labels();
    build_table();
  }

  Index dim() const noexcept { return dim_; }
  const IndexData& index_data() const noexcept { return idx_; }
  const BBSpace& bb() const noexcept { return bb_; }
  const DDQuotient& dd_quotient() const noexcept { return dd_; }
  const LieTable& table() const noexcept { return st_.table; }
  const GradedStructure& structure() const noexcept { return st_; }
  const std::vector<LabeledOp>& g_basis() const noexcept { return G_; }
  const std::vector<LabeledOp>& s_basis() const noexcept { return S_; }
  const std::vector<SparseVec>& a_basis() const noexcept { return A_; }
  const std::vector<SparseVec>& b_basis() const noexcept { return B_; }
  Index offset(int summand) const { return off_.at(summand); }
  std::array<Index, 4> summand_dims() const { return st_.summands; }

  // element constructors
  SparseVec gtens(const SparseOp& x, const SparseVec& a) const {
    if (x.is_zero() || a.empty()) return {};
    SparseVec gc = Gc_.coords(x.flat()), ac = Acoord_.coords(a);
    std::vector<SparseVec::Entry> e;
    for (const auto& [g, u] : gc)
      for (const auto& [k, w] : ac) e.emplace_back(off_[0] + g * A_.size() + k, u * w);
    return SparseVec(std::move(e));
  }
  SparseVec stens(const SparseOp& x, const SparseVec& bvec) const {
    if (x.is_zero() || bvec.empty()) return {};
    SparseVec sc = Sc_.coords(x.flat()), bc = Bcoord_.coords(bvec);
    std::vector<SparseVec::Entry> e;
    for (const auto& [s, u] : sc)
      for (const auto& [k, w] : bc) e.emplace_back(off_[1] + s * B_.size() + k, u * w);
    return SparseVec(std::move(e));
  }
  SparseVec vtens(const SparseVec& u, const SparseVec& c) const {
    const Index dc = bb_.b().c_dim();
    std::vector<SparseVec::Entry> e;
    for (const auto& [j, x] : u)
      for (const auto& [k, y] : c) e.emplace_back(off_[2] + j * dc + k, x * y);
    return SparseVec(std::move(e));
  }
  /// ⟨x, y⟩ for x, y in b.
  SparseVec dd(const SparseVec& x, const SparseVec& y) const {
    if (x.empty() || y.empty()) return {};
    return dd_.reduce(bb_.class_of(x, y)).shifted(off_[3]);
  }

  SparseVec to_flat(const GradedElement& e) const {
    return e.ga + e.sb.shifted(off_[1]) + e.vc.shifted(off_[2]) + e.dd.shifted(off_[3]);
  }
  GradedElement from_flat(const SparseVec& v) const {
    return {v.slice(off_[0], off_[1]), v.slice(off_[1], off_[2]), v.slice(off_[2], off_[3]), v.slice(off_[3], dim_)};
  }

  SparseVec bracket(const SparseVec& x, const SparseVec& y) const { return st_.table.bracket(x, y); }
  GradedElement bracket(const GradedElement& x, const GradedElement& y) const {
    return from_flat(bracket(to_flat(x), to_flat(y)));
  }

 private:
  static const CoordinateQuadruple& check_kind(const CoordinateQuadruple& q) {
    if (q.kind == Kind::A || q.kind == Kind::B)
      throw Error(ErrorKind::WrongKind, "graded assembly takes kinds BC, C and D");
    return q;
  }

  enum class Part { G, S, V, D };
  struct Elt {
    Part part;
    SparseOp op;
    SparseVec u;     // V-vector for Part::V
    SparseVec coef;  // A-, B- or C-vector
    SparseVec x, y;  // representative pair in b for Part::D
  };

  Elt element(Index i) const {
    const Index V = idx_.vdim();
    if (i < off_[1]) return {Part::G, G_[i / A_.size()].op, {}, A_[i % A_.size()], {}, {}};
    if (i < off_[2]) {
      Index k = i - off_[1];
      return {Part::S, S_[k / B_.size()].op, {}, B_[k % B_.size()], {}, {}};
    }
    if (i < off_[3]) {
      Index k = i - off_[2], dc = bb_.b().c_dim();
      return {Part::V, SparseOp(V), SparseVec::unit(k / dc), SparseVec::unit(k % dc), {}, {}};
    }
    auto [p, q] = bb_.class_pair(dd_.classes[i - off_[3]]);
    return {Part::D, SparseOp(V), {}, {}, SparseVec::unit(p), SparseVec::unit(q)};
  }

  /// [X, Y] for part(X) <= part(Y).
  SparseVec brel(const Elt& X, const Elt& Y) const {
    const BAlgebra& b = bb_.b();
    const auto& q = b.quadruple();
    const Index ell = idx_.ell;
    const Rational half(1, 2);
    const Rational l(static_cast<long>(ell));
    auto circ = [&](const SparseOp& e, const SparseOp& f) { return circ_trace_unchecked(e, f, J0_, ell); };
    const Part tx = X.part, ty = Y.part;
    if ((tx == Part::G && ty == Part::G) || (tx == Part::S && ty == Part::S)) {
      const SparseVec &a = X.coef, &a2 = Y.coef;
      SparseVec r = gtens(X.op.comm(Y.op), half * b.acirc(a, a2));
      r += stens(circ(X.op, Y.op), half * b.acomm(a, a2));
      r.axpy(X.op.trace_product(Y.op), dd(a, a2));
      return r;
    }
    if (tx == Part::G && ty == Part::S) {
      const SparseVec &a = X.coef, &a2 = Y.coef;
      SparseVec r = gtens(circ(X.op, Y.op), half * b.acomm(a, a2));
      r += stens(X.op.comm(Y.op), half * b.acirc(a, a2));
      return r;
    }
    if ((tx == Part::G || tx == Part::S) && ty == Part::V) return vtens(X.op.apply(Y.u), q.act(X.coef, Y.coef));
    if (tx == Part::V && ty == Part::V) {
      VOps v = v_ops(X.u, Y.u, idx_);
      SparseVec r = gtens(v.sym, b.diamond(X.coef, Y.coef));
      r += stens(v.skew, b.heart(X.coef, Y.coef));
      r.axpy(form_eval(idx_, X.u, Y.u), dd(b.from_c(X.coef), b.from_c(Y.coef)));
      return r;
    }
    // ty == D
    const BetaStar bs = b.beta_star(Y.x, Y.y);
    if (tx == Part::G) {
      SparseVec r = gtens(circ(X.op, J0_), b.acomm(X.coef, bs.bstar));
      r += stens(X.op.comm(J0_), b.acirc(X.coef, bs.bstar));
      return (1 / (4 * l)) * r;
    }
    if (tx == Part::S) {
      SparseVec r = gtens(X.op.comm(J0_), b.acirc(X.coef, bs.bstar));
      r += stens(circ(X.op, J0_), b.acomm(X.coef, bs.bstar));
      r.axpy(2 * X.op.trace_product(J0_), dd(X.coef, bs.bstar));
      return (1 / (4 * l)) * r;
    }
    if (tx == Part::V) {
      const SparseVec& c = X.coef;
      SparseVec r = (-1 / (2 * l)) * vtens(J0_.apply(X.u), q.act(bs.bstar, c));
      SparseVec corr = q.act(q.form(c, bs.y_c), bs.x_c) + q.act(q.form(c, bs.x_c), bs.y_c);
      r.axpy(half, vtens(X.u, corr));
      return r;
    }
    LinearMap d = b.derivation(X.x, X.y, ell);
    return dd(d.apply(Y.x), Y.y) + dd(Y.x, d.apply(Y.y));
  }

  void build_labels() {
    st_.name = bb_.b().quadruple().name;
    st_.n = idx_.n;
    st_.ell = idx_.ell;
    st_.summands = {off_[1] - off_[0], off_[2] - off_[1], off_[3] - off_[2], dim_ - off_[3]};
    const Index zero_n = idx_.n;
    for (Index g = 0; g < G_.size(); ++g)
      for (Index k = 0; k < A_.size(); ++k) {
        st_.labels.push_back(G_[g].label + "*A" + std::to_string(k));
        st_.weights.push_back(G_[g].weight);
      }
    for (Index s = 0; s < S_.size(); ++s)
      for (Index k = 0; k < B_.size(); ++k) {
        st_.labels.push_back(S_[s].label + "*B" + std::to_string(k));
        st_.weights.push_back(S_[s].weight);
      }
    for (Index j = 0; j < idx_.vdim(); ++j)
      for (Index k = 0; k < bb_.b().c_dim(); ++k) {
        st_.labels.push_back("v[" + std::to_string(j) + "]*C" + std::to_string(k));
        st_.weights.push_back(idx_.vweight(j));
      }
    for (Index i = 0; i < dd_.dim(); ++i) {
      auto [p, q] = bb_.class_pair(dd_.classes[i]);
      st_.labels.push_back("<" + std::to_string(p) + "," + std::to_string(q) + ">");
      st_.weights.push_back(Weight(zero_n, 0));
    }
    SparseVec one = bb_.b().quadruple().a.unit;
    for (const auto& h : cartan(idx_)) st_.cartan.push_back(gtens(h, one));
  }

  void build_table() {
    st_.table = LieTable(dim_);
    std::vector<Elt> elts;
    elts.reserve(dim_);
    for (Index i = 0; i < dim_; ++i) elts.push_back(element(i));
    std::vector<std::vector<SparseVec>> rows(dim_);
    parallel_for(dim_, [&](std::size_t i) {
      rows[i].resize(dim_);
      for (Index j = i + 1; j < dim_; ++j) rows[i][j] = brel(elts[i], elts[j]);
    });
    for (Index i = 0; i < dim_; ++i)
      for (Index j = i + 1; j < dim_; ++j) st_.table.set_pair(i, j, rows[i][j]);
  }

  IndexData idx_;
  BBSpace bb_;
  DDQuotient dd_;
  std::vector<SparseVec> A_, B_;
  BasisCoordinates Acoord_, Bcoord_;
  std::vector<LabeledOp> G_, S_;
  BasisCoordinates Gc_, Sc_;
  SparseOp J0_;
  std::array<Index, 4> off_{};
  Index dim_ = 0;
  GradedStructure st_;
};

inline GradedAlgebra assemble(const CoordinateQuadruple& q, const IndexData& idx,
                              std::optional<Subspace> k_sub = std::nullopt) {
  return GradedAlgebra(q, idx, std::move(k_sub));
}

/// Groups basis indices by their recorded weight.
inline std::map<Weight, std::vector<Index>> weight_buckets(const GradedStructure& s) {
  std::map<Weight, std::vector<Index>> m;
  for (Index i = 0; i < s.dim(); ++i) m[s.weights[i]].push_back(i);
  return m;
}

/// Eigendecomposition of L under ad(h_i ⊗ 1); must agree with the recorded weights.
inline std::vector<WeightSpace> grade(const GradedStructure& s) {
  std::vector<LinearMap> h;
  for (const auto& x : s.cartan) h.push_back(s.table.ad(x));
  std::vector<SparseVec> basis;
  for (Index i = 0; i < s.dim(); ++i) basis.push_back(SparseVec::unit(i));
  auto spaces = weight_decompose(basis, s.dim(), h);
  auto buckets = weight_buckets(s);
  if (spaces.size() != buckets.size()) throw Error(ErrorKind::NotClosed, "weight spaces disagree with the grading");
  for (const auto& ws : spaces) {
    auto it = buckets.find(ws.weight);
    if (it == buckets.end() || it->second.size() != ws.space.rank())
      throw Error(ErrorKind::NotClosed, "unexpected weight " + weight_str(ws.weight));
    for (Index i : it->second)
      if (!ws.space.contains(SparseVec::unit(i)))
        throw Error(ErrorKind::NotClosed, "basis element " + std::to_string(i) + " is not of weight " + weight_str(ws.weight));
  }
  return spaces;
}
inline std::vector<WeightSpace> grade(const GradedAlgebra& alg) { return grade(alg.structure()); }

/// [h_i⊗1, e_m] = w_m[i] e_m for all m, i.
inline CheckResult check_weights(const GradedStructure& s) {
  CheckResult r{"weights"};
  for (Index i = 0; i < s.cartan.size(); ++i)
    for (Index m = 0; m < s.dim(); ++m) {
      SparseVec d = s.table.bracket(s.cartan[i], SparseVec::unit(m)) - SparseVec::unit(m, Rational(s.weights[m][i]));
      if (!d.empty()) {
        if (!r.witness) r.witness = Witness{{i, m}, d};
        ++r.failures;
      }
    }
  r.passed = r.failures == 0;
  return r;
}

/// [L_α, L_β] ⊆ L_{α+β}.
inline CheckResult check_grading(const GradedStructure& s) {
  CheckResult r{"grading"};
  for (Index i = 0; i < s.dim(); ++i)
    for (Index j = i + 1; j < s.dim(); ++j) {
      Weight w = weight_add(s.weights[i], s.weights[j]);
      SparseVec bad;
      for (const auto& [m, c] : s.table.at(i, j))
        if (s.weights[m] != w) bad.axpy(c, SparseVec::unit(m));
      if (!bad.empty()) {
        if (!r.witness) r.witness = Witness{{i, j}, bad};
        ++r.failures;
      }
    }
  r.passed = r.failures == 0;
  return r;
}

/// L_0 = Σ_{α≠0} [L_α, L_{−α}].
inline CheckResult check_zero_weight_generated(const GradedStructure& s) {
  CheckResult r{"zero_weight_generated"};
  std::vector<Index> zero;
  for (Index i = 0; i < s.dim(); ++i)
    if (weight_is_zero(s.weights[i])) zero.push_back(i);
  Subspace gen(s.dim());
  for (Index i = 0; i < s.dim() && gen.rank() < zero.size(); ++i) {
    if (weight_is_zero(s.weights[i])) continue;
    for (Index j = i + 1; j < s.dim(); ++j)
      if (weight_is_zero(weight_add(s.weights[i], s.weights[j]))) gen.insert(s.table.at(i, j));
  }
  for (Index z : zero)
    if (!gen.contains(SparseVec::unit(z))) {
      if (!r.witness) r.witness = Witness{{z}, SparseVec::unit(z)};
      ++r.failures;
    }
  r.detail = "dim L_0 = " + std::to_string(zero.size()) + ", generated " + std::to_string(gen.rank());
  r.passed = r.failures == 0;
  return r;
}

inline GradedReport check_graded(const GradedStructure& s) {
  GradedReport rep;
  rep.checks.push_back(check_antisymmetry(s.table));
  rep.checks.push_back(check_weights(s));
  rep.checks.push_back(check_grading(s));
  rep.checks.push_back(check_zero_weight_generated(s));
  rep.checks.push_back(check_jacobi(s.table));
  rep.checks.push_back(check_perfect(s.table));
  return rep;
}
inline GradedReport check_graded(const GradedAlgebra& alg) { return check_graded(alg.structure()); }

/// Map L(rank n) → L(rank m) on the shared basis: operators re-indexed, coefficients kept.
inline LinearMap rank_embedding(const GradedAlgebra& small, const GradedAlgebra& big) {
  const Index n = small.index_data().n, m = big.index_data().n;
  if (m < n) throw Error(ErrorKind::InvalidArgument, "target rank must not be smaller");
  if (small.dd_quotient().dim() != big.dd_quotient().dim() || small.a_basis() != big.a_basis() ||
      small.b_basis() != big.b_basis() || small.index_data().I0 != big.index_data().I0)
    throw Error(ErrorKind::InvalidArgument, "algebras do not share coordinates");
  std::vector<SparseVec> cols(small.dim());
  const Index nA = small.a_basis().size(), nB = small.b_basis().size();
  const Index dc = small.bb().b().c_dim();
  for (Index i = 0; i < small.dim(); ++i) {
    if (i < small.offset(1)) {
      cols[i] = big.gtens(embed_op(small.g_basis()[i / nA].op, n, m), small.a_basis()[i % nA]);
    } else if (i < small.offset(2)) {
      Index k = i - small.offset(1);
      cols[i] = big.stens(embed_op(small.s_basis()[k / nB].op, n, m), small.b_basis()[k % nB]);
    } else if (i < small.offset(3)) {
      Index k = i - small.offset(2);
      Index j = k / dc;
      Index jj = j < n ? j : j - n + m;
      cols[i] = big.vtens(SparseVec::unit(jj), SparseVec::unit(k % dc));
    } else {
      cols[i] = SparseVec::unit(big.offset(3) + (i - small.offset(3)));
    }
  }
  return LinearMap(big.dim(), std::move(cols));
}

}  // namespace rootgrade
