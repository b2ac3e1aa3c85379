#pragma once

// The 2n-dimensional space V with basis v_j (j in I = {0..n-1}) and v_{j̄}
// (stored at j+n), its symplectic form, G = sp(I), the trace-zero
// form-symmetric operators S, the projectors 𝔍_λ and weight machinery.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "rootgrade/error.hpp"
#include "rootgrade/linalg.hpp"

namespace rootgrade {

using Weight = std::vector<long>;

inline std::string weight_str(const Weight& w) {
  std::string s = "(";
  for (Index i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

struct IndexData {
  Index n = 0;
  Index ell = 0;
  std::vector<Index> I0;
  std::vector<std::vector<Index>> chain;  // optional nested subsets between I0 and I

  IndexData() = default;
  IndexData(Index rank, Index ell_) : n(rank), ell(ell_) {
    if (rank == 0) throw Error(ErrorKind::InvalidArgument, "rank must be positive");
    if (ell_ == 0 || ell_ > rank) throw Error(ErrorKind::InvalidArgument, "need 1 <= ell <= n");
    for (Index i = 0; i < ell_; ++i) I0.push_back(i);
  }

  Index vdim() const { return 2 * n; }
  Index bar(Index j) const { return j < n ? j + n : j - n; }
  /// ε-weight of v_j.
  Weight vweight(Index j) const {
    Weight w(n, 0);
    if (j < n) w[j] = 1;
    else w[j - n] = -1;
    return w;
  }
};

inline Weight weight_add(Weight a, const Weight& b) {
  for (Index i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline Weight weight_neg(Weight a) {
  for (auto& x : a) x = -x;
  return a;
}
inline bool weight_is_zero(const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](long x) { return x == 0; });
}

/// Operator on V by matrix units: entry (j,k) at index j*2n + k.
class SparseOp {
 public:
  SparseOp() = default;
  explicit SparseOp(Index vdim) : vdim_(vdim) {}
  SparseOp(Index vdim, SparseVec flat) : vdim_(vdim), m_(std::move(flat)) {
    if (!m_.empty() && m_.max_index() >= vdim * vdim) throw Error(ErrorKind::IndexOutOfRange, "operator entry");
  }

  static SparseOp unit(Index vdim, Index j, Index k, const Rational& c = 1) {
    return SparseOp(vdim, SparseVec::unit(j * vdim + k, c));
  }
  static SparseOp identity(Index vdim) {
    std::vector<SparseVec::Entry> e;
    for (Index j = 0; j < vdim; ++j) e.emplace_back(j * vdim + j, 1);
    return SparseOp(vdim, SparseVec(std::move(e)));
  }

  Index vdim() const noexcept { return vdim_; }
  const SparseVec& flat() const noexcept { return m_; }
  bool is_zero() const noexcept { return m_.empty(); }
  Rational entry(Index j, Index k) const { return m_.get(j * vdim_ + k); }

  SparseOp operator*(const SparseOp& y) const {
    same(y);
    Accumulator acc(vdim_ * vdim_);
    const auto& ye = y.m_.entries();
    for (const auto& [ij, u] : m_) {
      const Index i = ij / vdim_, j = ij % vdim_;
      auto lo = std::lower_bound(ye.begin(), ye.end(), j * vdim_,
                                 [](const SparseVec::Entry& e, Index k) { return e.first < k; });
      for (auto it = lo; it != ye.end() && it->first < (j + 1) * vdim_; ++it)
        acc.add(i * vdim_ + it->first % vdim_, u * it->second);
    }
    return SparseOp(vdim_, acc.take());
  }
  SparseOp operator+(const SparseOp& y) const {
    same(y);
    return SparseOp(vdim_, m_ + y.m_);
  }
  SparseOp operator-(const SparseOp& y) const {
    same(y);
    return SparseOp(vdim_, m_ - y.m_);
  }
  friend SparseOp operator*(const Rational& c, const SparseOp& x) { return SparseOp(x.vdim_, c * x.m_); }
  friend bool operator==(const SparseOp& a, const SparseOp& b) { return a.vdim_ == b.vdim_ && a.m_ == b.m_; }

  SparseOp comm(const SparseOp& y) const { return (*this) * y - y * (*this); }
  SparseOp anti(const SparseOp& y) const { return (*this) * y + y * (*this); }

  Rational trace() const {
    Rational t = 0;
    for (const auto& [ij, c] : m_)
      if (ij / vdim_ == ij % vdim_) t += c;
    return t;
  }

  /// Trace of the product without forming it.
  Rational trace_product(const SparseOp& y) const {
    Rational t = 0;
    for (const auto& [ij, c] : m_) t += c * y.entry(ij % vdim_, ij / vdim_);
    return t;
  }

  SparseVec apply(const SparseVec& u) const {
    Accumulator acc(vdim_);
    for (const auto& [ij, c] : m_) {
      Rational x = u.get(ij % vdim_);
      if (x != 0) acc.add(ij / vdim_, c * x);
    }
    return acc.take();
  }

  std::string str() const {
    if (m_.empty()) return "0";
    std::string s;
    for (const auto& [ij, c] : m_) {
      if (!s.empty()) s += " + ";
      s += c.get_str() + "*e" + std::to_string(ij / vdim_) + "," + std::to_string(ij % vdim_);
    }
    return s;
  }

 private:
  void same(const SparseOp& y) const {
    if (y.vdim_ != vdim_) throw Error(ErrorKind::ShapeMismatch, "operators on different spaces");
  }
  Index vdim_ = 0;
  SparseVec m_;
};

/// (v_j, v_{k̄}) = 2δ_jk = −(v_{k̄}, v_j), zero otherwise.
inline Rational form_eval(const IndexData& idx, const SparseVec& u, const SparseVec& w) {
  Rational r = 0;
  for (const auto& [j, a] : u) {
    Rational b = w.get(idx.bar(j));
    if (b == 0) continue;
    r += (j < idx.n ? 2 : -2) * a * b;
  }
  return r;
}

struct LabeledOp {
  std::string label;
  SparseOp op;
  Weight weight;
};

inline std::vector<LabeledOp> build_g(const IndexData& idx) {
  const Index n = idx.n, V = idx.vdim();
  std::vector<LabeledOp> out;
  auto E = [&](Index j, Index k) { return SparseOp::unit(V, j, k); };
  auto w = [&](Index j, Index k) { return weight_add(idx.vweight(j), weight_neg(idx.vweight(k))); };
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j)
        out.push_back({"g[" + std::to_string(i) + "," + std::to_string(j) + "]", E(i, j) - E(j + n, i + n), w(i, j)});
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      std::string ij = std::to_string(i) + "," + std::to_string(j);
      out.push_back({"g+[" + ij + "]", i == j ? E(i, i + n) : E(i, j + n) + E(j, i + n), w(i, j + n)});
      out.push_back({"g-[" + ij + "]", i == j ? E(i + n, i) : E(i + n, j) + E(j + n, i), w(i + n, j)});
    }
  for (Index i = 0; i < n; ++i) out.push_back({"h[" + std::to_string(i) + "]", E(i, i) - E(i + n, i + n), Weight(n, 0)});
  return out;
}

inline std::vector<LabeledOp> build_s(const IndexData& idx) {
  const Index n = idx.n, V = idx.vdim();
  if (n < 2) throw Error(ErrorKind::RankTooSmall, "S needs rank at least 2");
  std::vector<LabeledOp> out;
  auto E = [&](Index j, Index k) { return SparseOp::unit(V, j, k); };
  auto w = [&](Index j, Index k) { return weight_add(idx.vweight(j), weight_neg(idx.vweight(k))); };
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j)
        out.push_back({"s[" + std::to_string(i) + "," + std::to_string(j) + "]", E(i, j) + E(j + n, i + n), w(i, j)});
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      std::string ij = std::to_string(i) + "," + std::to_string(j);
      out.push_back({"s+[" + ij + "]", E(i, j + n) - E(j, i + n), w(i, j + n)});
      out.push_back({"s-[" + ij + "]", E(i + n, j) - E(j + n, i), w(i + n, j)});
    }
  // e_rr + e_r̄r̄ − (1/|Λ|) Σ_{i∈Λ} (e_ii + e_īī)
  auto w0 = [&](Index r, const std::vector<Index>& lam) {
    SparseOp x = E(r, r) + E(r + n, r + n);
    Rational c(1, static_cast<long>(lam.size()));
    for (Index i : lam) x = x - c * (E(i, i) + E(i + n, i + n));
    return x;
  };
  std::vector<Index> I0 = idx.I0;
  for (Index t = 0; t + 1 < I0.size(); ++t) out.push_back({"s0[" + std::to_string(I0[t]) + "]", w0(I0[t], I0), Weight(n, 0)});
  for (Index r = 0; r < n; ++r) {
    if (std::find(I0.begin(), I0.end(), r) != I0.end()) continue;
    std::vector<Index> lam = I0;
    lam.push_back(r);
    out.push_back({"s0[" + std::to_string(r) + "]", w0(r, lam), Weight(n, 0)});
  }
  return out;
}

inline std::vector<SparseVec> flat_ops(const std::vector<LabeledOp>& ops) {
  std::vector<SparseVec> v;
  v.reserve(ops.size());
  for (const auto& o : ops) v.push_back(o.op.flat());
  return v;
}

/// Diagonal projector onto span{v_r, v_{r̄} : r ∈ lam}.
inline SparseOp projector_J(const IndexData& idx, const std::vector<Index>& lam) {
  std::vector<SparseVec::Entry> e;
  const Index V = idx.vdim();
  for (Index r : lam) {
    if (r >= idx.n) throw Error(ErrorKind::IndexOutOfRange, "projector index outside I");
    e.emplace_back(r * V + r, 1);
    e.emplace_back((r + idx.n) * V + r + idx.n, 1);
  }
  return SparseOp(V, SparseVec(std::move(e)));
}

/// ef + fe − (tr(ef)/ℓ)·J0 without membership checks.
inline SparseOp circ_trace_unchecked(const SparseOp& e, const SparseOp& f, const SparseOp& j0, Index ell) {
  Rational t = e.trace_product(f) / Rational(static_cast<long>(ell));
  return e.anti(f) - t * j0;
}

/// Membership oracle for G and S.
class GSMembership {
 public:
  explicit GSMembership(const IndexData& idx)
      : g_(Subspace::span(flat_ops(build_g(idx)), idx.vdim() * idx.vdim())),
        s_(Subspace::span(flat_ops(build_s(idx)), idx.vdim() * idx.vdim())) {}
  bool in_g(const SparseOp& x) const { return g_.contains(x.flat()); }
  bool in_s(const SparseOp& x) const { return s_.contains(x.flat()); }
  const Subspace& g() const { return g_; }
  const Subspace& s() const { return s_; }

 private:
  Subspace g_, s_;
};

inline SparseOp circ_trace(const SparseOp& e, const SparseOp& f, const IndexData& idx) {
  GSMembership m(idx);
  for (const SparseOp* x : {&e, &f})
    if (!m.in_g(*x) && !m.in_s(*x)) throw Error(ErrorKind::NotInGS, "operator is in neither G nor S: " + x->str());
  return circ_trace_unchecked(e, f, projector_J(idx, idx.I0), idx.ell);
}

// Scalars fixed by requiring the Jacobi identity of the assembled algebra.
inline const Rational kVSymScale(-1, 2);
inline const Rational kVSkewScale(1, 2);

struct VOps {
  SparseOp sym;   // in G
  SparseOp skew;  // in S
};

/// sym = −½((·,u)w + (·,w)u); skew = ½(r − (tr r/2ℓ)𝔍_0) with r = (·,u)w − (·,w)u.
inline VOps v_ops(const SparseVec& u, const SparseVec& w, const IndexData& idx) {
  const Index V = idx.vdim();
  std::vector<SparseVec::Entry> sym, skew;
  for (Index x = 0; x < V; ++x) {
    SparseVec ex = SparseVec::unit(x);
    Rational xu = form_eval(idx, ex, u), xw = form_eval(idx, ex, w);
    if (xu == 0 && xw == 0) continue;
    for (const auto& [j, c] : w) {
      sym.emplace_back(j * V + x, xu * c);
      skew.emplace_back(j * V + x, xu * c);
    }
    for (const auto& [j, c] : u) {
      sym.emplace_back(j * V + x, xw * c);
      skew.emplace_back(j * V + x, -xw * c);
    }
  }
  SparseOp s(V, SparseVec(std::move(sym)));
  SparseOp k(V, SparseVec(std::move(skew)));
  Rational t = k.trace() / Rational(static_cast<long>(2 * idx.ell));
  k = k - t * projector_J(idx, idx.I0);
  return {kVSymScale * s, kVSkewScale * k};
}

/// ad(x) on flattened operators.
inline LinearMap ad_operator(const SparseOp& x) {
  const Index V = x.vdim();
  std::vector<SparseVec> cols(V * V);
  for (Index j = 0; j < V; ++j)
    for (Index k = 0; k < V; ++k) cols[j * V + k] = x.comm(SparseOp::unit(V, j, k)).flat();
  return LinearMap(V * V, std::move(cols));
}

/// x acting on V.
inline LinearMap natural_operator(const SparseOp& x) {
  const Index V = x.vdim();
  std::vector<SparseVec> cols(V);
  for (Index k = 0; k < V; ++k) cols[k] = x.apply(SparseVec::unit(k));
  return LinearMap(V, std::move(cols));
}

/// h_i = e_ii − e_īī for i in I.
inline std::vector<SparseOp> cartan(const IndexData& idx) {
  std::vector<SparseOp> h;
  for (Index i = 0; i < idx.n; ++i)
    h.push_back(SparseOp::unit(idx.vdim(), i, i) - SparseOp::unit(idx.vdim(), i + idx.n, i + idx.n));
  return h;
}

struct WeightSpace {
  Weight weight;
  Subspace space;
};

/// Simultaneous integer eigenspace decomposition of span(vectors) under commuting operators.
inline std::vector<WeightSpace> weight_decompose(const std::vector<SparseVec>& vectors, Index ambient,
                                                 const std::vector<LinearMap>& h) {
  Subspace whole = Subspace::span(vectors, ambient);
  const Index d = whole.rank();
  BasisCoordinates wc(whole.basis(), ambient);
  // matrices in coordinates: columns of h restricted to the span
  std::vector<std::vector<SparseVec>> mats;
  for (const auto& op : h) {
    if (op.dim_in() != ambient || op.dim_out() != ambient) throw Error(ErrorKind::ShapeMismatch, "action shape");
    std::vector<SparseVec> cols(d);
    for (Index k = 0; k < d; ++k) {
      auto c = wc.try_coords(op.apply(whole.basis()[k]));
      if (!c) throw Error(ErrorKind::NotClosed, "action leaves the span at basis vector " + std::to_string(k));
      cols[k] = std::move(*c);
    }
    mats.push_back(std::move(cols));
  }
  struct Piece {
    Weight w;
    Subspace s;
  };
  std::vector<Piece> pieces{{Weight{}, Subspace::full(d)}};
  for (const auto& m : mats) {
    long bound = 0;
    for (const auto& col : m) {
      Rational s = 0;
      for (const auto& [i, c] : col) s += abs(c);
      mpz_class ceil_s = s.get_num() / s.get_den() + (s.get_num() % s.get_den() != 0 ? 1 : 0);
      bound = std::max(bound, ceil_s.get_si());
    }
    std::vector<std::pair<long, Subspace>> eigen;
    for (long lam = -bound; lam <= bound; ++lam) {
      std::vector<SparseVec> shifted(d);
      for (Index k = 0; k < d; ++k) shifted[k] = m[k] - SparseVec::unit(k, Rational(lam));
      Subspace e = kernel(shifted, d);
      if (!e.is_zero()) eigen.emplace_back(lam, std::move(e));
    }
    std::vector<Piece> next;
    for (const auto& p : pieces) {
      Index found = 0;
      for (const auto& [lam, ker] : eigen) {
        Subspace e = intersect(ker, p.s);
        if (e.is_zero()) continue;
        found += e.rank();
        Weight w = p.w;
        w.push_back(lam);
        next.push_back({std::move(w), std::move(e)});
      }
      if (found != p.s.rank()) throw Error(ErrorKind::NotClosed, "action is not diagonalizable with integer weights");
    }
    pieces = std::move(next);
  }
  std::vector<WeightSpace> out;
  for (auto& p : pieces) {
    std::vector<SparseVec> amb;
    for (const auto& v : p.s.basis()) amb.push_back(wc.combine(v));
    out.push_back({p.w, Subspace::span(amb, ambient)});
  }
  std::sort(out.begin(), out.end(), [](const WeightSpace& a, const WeightSpace& b) { return a.weight < b.weight; });
  return out;
}

/// Weight spaces of G or S under ad(h_i).
inline std::vector<WeightSpace> weight_decompose_ops(const std::vector<LabeledOp>& ops, const IndexData& idx) {
  std::vector<LinearMap> h;
  for (const auto& x : cartan(idx)) h.push_back(ad_operator(x));
  return weight_decompose(flat_ops(ops), idx.vdim() * idx.vdim(), h);
}

/// Weight spaces of V under h_i.
inline std::vector<WeightSpace> weight_decompose_v(const IndexData& idx) {
  std::vector<LinearMap> h;
  for (const auto& x : cartan(idx)) h.push_back(natural_operator(x));
  std::vector<SparseVec> basis;
  for (Index j = 0; j < idx.vdim(); ++j) basis.push_back(SparseVec::unit(j));
  return weight_decompose(basis, idx.vdim(), h);
}

/// Smallest action-stable subspace containing seed.
inline Subspace generated_submodule(const Subspace& seed, const std::vector<LinearMap>& action, const Subspace& ambient) {
  if (!ambient.contains(seed)) throw Error(ErrorKind::InvalidArgument, "seed is not inside the ambient subspace");
  Subspace out(seed.ambient_dim());
  std::vector<SparseVec> frontier;
  for (const auto& v : seed.basis())
    if (out.insert(v)) frontier.push_back(v);
  while (!frontier.empty()) {
    std::vector<SparseVec> next;
    for (const auto& v : frontier)
      for (const auto& a : action) {
        SparseVec w = a.apply(v);
        if (out.insert(w)) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  return out;
}

/// Operator on the rank-n space re-indexed into rank m ≥ n (v_j ↦ v_j, v_{j̄} ↦ v_{j̄}).
inline SparseOp embed_op(const SparseOp& x, Index n, Index m) {
  const Index V = 2 * n, W = 2 * m;
  auto re = [&](Index j) { return j < n ? j : j - n + m; };
  return SparseOp(W, x.flat().remap([&](Index ij) { return re(ij / V) * W + re(ij % V); }));
}

/// G^λ = G ∩ span{e_rs : r, s ∈ λ ∪ λ̄}.
inline std::vector<LabeledOp> build_g_sub(const IndexData& idx, const std::vector<Index>& lam) {
  std::vector<bool> in(idx.vdim(), false);
  for (Index r : lam) in[r] = in[r + idx.n] = true;
  std::vector<LabeledOp> out;
  for (auto& g : build_g(idx)) {
    bool inside = true;
    for (const auto& [ij, c] : g.op.flat())
      if (!in[ij / idx.vdim()] || !in[ij % idx.vdim()]) inside = false;
    if (inside) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace rootgrade
