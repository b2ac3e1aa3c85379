#pragma once

// 2-cocycles, central extensions L ⊕ E, their grading, the universal central
// extension π : L(q,{0}) → L(q,K) and maps factoring through it.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "rootgrade/graded.hpp"

namespace rootgrade {

/// Alternating bilinear τ : L × L → E with tau[i*dim + j] = τ(e_i, e_j).
struct Cocycle {
  Index base_dim = 0;
  Index e_dim = 0;
  std::vector<SparseVec> tau;

  Cocycle() = default;
  Cocycle(Index base, Index e) : base_dim(base), e_dim(e), tau(base * base) {}

  const SparseVec& at(Index i, Index j) const { return tau[i * base_dim + j]; }
  void set_pair(Index i, Index j, const SparseVec& v) {
    tau[i * base_dim + j] = v;
    tau[j * base_dim + i] = -v;
  }
  SparseVec eval(const SparseVec& x, const SparseVec& y) const {
    Accumulator acc(e_dim);
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) acc.axpy(a * b, at(i, j));
    return acc.take();
  }
};

inline std::vector<Violation> validate_cocycle(const Cocycle& tau, const LieTable& base, std::size_t limit = 64) {
  if (tau.base_dim != base.dim() || tau.tau.size() != base.dim() * base.dim())
    throw Error(ErrorKind::ShapeMismatch, "cocycle does not match the algebra");
  std::vector<Violation> out;
  const Index n = base.dim();
  for (const auto& v : tau.tau)
    if (!v.empty() && v.max_index() >= tau.e_dim) throw Error(ErrorKind::IndexOutOfRange, "cocycle value outside E");
  for (Index i = 0; i < n && out.size() < limit; ++i)
    for (Index j = i; j < n && out.size() < limit; ++j)
      if (!(tau.at(i, j) + tau.at(j, i)).empty()) out.push_back({"alternating", {i, j}});
  std::vector<std::vector<Index>> first(n);
  parallel_for(n, [&](std::size_t i) {
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k) {
        SparseVec s = tau.eval(base.at(i, j), SparseVec::unit(k)) + tau.eval(base.at(j, k), SparseVec::unit(i)) +
                      tau.eval(base.at(k, i), SparseVec::unit(j));
        if (!s.empty()) {
          first[i] = {i, j, k};
          return;
        }
      }
  });
  for (Index i = 0; i < n && out.size() < limit; ++i)
    if (!first[i].empty()) out.push_back({"cocycle", first[i]});
  return out;
}

struct CentralExtension {
  LieTable base;
  Cocycle tau;
  LieTable total;       // basis: base basis, then E
  LinearMap projection;  // total → base

  Index base_dim() const { return base.dim(); }
  Index e_dim() const { return tau.e_dim; }
};

inline CentralExtension central_extend(const LieTable& base, const Cocycle& tau) {
  auto v = validate_cocycle(tau, base, 1);
  if (!v.empty()) throw Error(ErrorKind::InvalidCocycle, "cocycle fails " + v.front().str());
  const Index n = base.dim(), e = tau.e_dim;
  CentralExtension ext{base, tau, LieTable(n + e), {}};
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) ext.total.set(i, j, base.at(i, j) + tau.at(i, j).shifted(n));
  std::vector<SparseVec> cols(n + e);
  for (Index i = 0; i < n; ++i) cols[i] = SparseVec::unit(i);
  ext.projection = LinearMap(n, std::move(cols));
  return ext;
}

/// [E, L̃] = 0.
inline CheckResult check_kernel_central(const CentralExtension& ext) {
  CheckResult r{"kernel_central"};
  const Index n = ext.base_dim();
  for (Index k = n; k < ext.total.dim(); ++k)
    for (Index j = 0; j < ext.total.dim(); ++j) {
      const SparseVec& s = ext.total.at(k, j);
      if (!s.empty()) {
        if (!r.witness) r.witness = Witness{{k, j}, s};
        ++r.failures;
      }
    }
  r.passed = r.failures == 0;
  return r;
}

/// h_i ⊗ 1 and the G ⊗ 1 elements of an assembled algebra.
inline std::vector<SparseVec> g_elements(const GradedAlgebra& alg) {
  std::vector<SparseVec> out;
  const SparseVec& one = alg.bb().b().quadruple().a.unit;
  for (const auto& g : alg.g_basis()) out.push_back(alg.gtens(g.op, one));
  return out;
}

struct ExtensionGrading {
  GradedStructure total;
  std::map<Weight, Index> dims;
  CheckResult zero_weight;
  CheckResult weights;
};

/// Weight decomposition of L̃: L̃_α = L_α (α ≠ 0), L̃_0 = L_0 ⊕ E.
inline ExtensionGrading grade_extension(const CentralExtension& ext, const GradedStructure& base,
                                        const std::vector<SparseVec>& g_elems) {
  if (base.dim() != ext.base_dim()) throw Error(ErrorKind::ShapeMismatch, "grading does not match the base");
  if (derived_algebra(ext.total).rank() != ext.total.dim())
    throw Error(ErrorKind::NotPerfect, "extension is not perfect");
  for (Index g = 0; g < g_elems.size(); ++g)
    for (Index j = 0; j < ext.base_dim(); ++j) {
      SparseVec t = ext.tau.eval(g_elems[g], SparseVec::unit(j));
      if (!t.empty())
        throw Error(ErrorKind::TauGNonzero, "tau(G-element " + std::to_string(g) + ", e_" + std::to_string(j) + ") = " + t.str());
    }
  ExtensionGrading out;
  GradedStructure& s = out.total;
  s = base;
  s.name = base.name + "+E";
  s.table = ext.total;
  for (Index k = 0; k < ext.e_dim(); ++k) {
    s.labels.push_back("E" + std::to_string(k));
    s.weights.push_back(Weight(base.n, 0));
  }
  for (const auto& w : s.weights) ++out.dims[w];
  out.weights = check_weights(s);
  out.zero_weight = check_zero_weight_generated(s);
  return out;
}

/// τ(g, d) = 0 for g ∈ G and d ∈ D, after checking [G, D] = 0 in the base.
inline bool check_trivial_submodule(const CentralExtension& ext, const Subspace& d,
                                    const std::vector<SparseVec>& g_elems) {
  for (const auto& g : g_elems)
    for (const auto& x : d.basis())
      if (!ext.base.bracket(g, x).empty()) throw Error(ErrorKind::DNotTrivial, "[G, D] != 0 at " + x.str());
  for (const auto& g : g_elems)
    for (const auto& x : d.basis())
      if (!ext.tau.eval(g, x).empty()) return false;
  return true;
}

/// τ(x,y) = μ([x,y]) for a random integer matrix μ with entries in [−3, 3].
inline Cocycle random_coboundary(const LieTable& base, Index e_dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-3, 3);
  std::vector<SparseVec> mu(base.dim());
  for (auto& col : mu) {
    std::vector<SparseVec::Entry> e;
    for (Index k = 0; k < e_dim; ++k) e.emplace_back(k, dist(rng));
    col = SparseVec(std::move(e));
  }
  LinearMap m(e_dim, std::move(mu));
  Cocycle t(base.dim(), e_dim);
  for (Index i = 0; i < base.dim(); ++i)
    for (Index j = i + 1; j < base.dim(); ++j) t.set_pair(i, j, m.apply(base.at(i, j)));
  return t;
}

/// Linear map between two assemblies of the same q and rank with K_src ⊆ K_tgt:
/// identity on the tensor summands and class ↦ class + K_tgt on ⟨b,b⟩.
inline LinearMap quotient_map(const GradedAlgebra& src, const GradedAlgebra& tgt) {
  if (src.offset(3) != tgt.offset(3) || src.bb().dim() != tgt.bb().dim())
    throw Error(ErrorKind::InvalidArgument, "algebras do not share tensor summands");
  const Index off = src.offset(3);
  std::vector<SparseVec> cols(src.dim());
  for (Index i = 0; i < off; ++i) cols[i] = SparseVec::unit(i);
  for (Index i = 0; i < src.dd_quotient().dim(); ++i) {
    Index cls = src.dd_quotient().classes[i];
    cols[off + i] = tgt.dd_quotient().reduce(SparseVec::unit(cls)).shifted(off);
  }
  return LinearMap(tgt.dim(), std::move(cols));
}

struct HomCertificate {
  LinearMap map;
  std::string domain;
  std::string codomain;
  CheckResult homomorphism;
  bool checked = false;
};

struct UniversalExtension {
  GradedAlgebra univ;    // L(q, {0})
  GradedAlgebra target;  // L(q, K_sub)
  HomCertificate pi;
  CheckResult surjective{"surjective"};
  CheckResult kernel_matches{"kernel_is_K_sub"};
  CheckResult kernel_central{"kernel_central"};
  Index kernel_dim = 0;
  Index center_dim = 0;

  bool passed() const {
    return pi.homomorphism.passed && surjective.passed && kernel_matches.passed && kernel_central.passed;
  }
};

inline UniversalExtension universal_extension(const CoordinateQuadruple& q, const IndexData& idx, const Subspace& k_sub) {
  UniversalExtension u{GradedAlgebra(q, idx), GradedAlgebra(q, idx, k_sub), {}};
  u.pi.map = quotient_map(u.univ, u.target);
  u.pi.domain = "L(q,{0})";
  u.pi.codomain = "L(q,K)";
  u.pi.homomorphism = check_homomorphism(u.pi.map, u.univ.table(), u.target.table());
  u.pi.checked = true;

  Subspace image = u.pi.map.image();
  u.surjective.passed = image.rank() == u.target.dim();
  u.surjective.detail = "rank " + std::to_string(image.rank()) + " of " + std::to_string(u.target.dim());

  Subspace ker = u.pi.map.null_space();
  u.kernel_dim = ker.rank();
  std::vector<SparseVec> emb;
  for (const auto& v : k_sub.basis()) emb.push_back(v.shifted(u.univ.offset(3)));
  u.kernel_matches.passed = ker == Subspace::span(emb, u.univ.dim());
  u.kernel_matches.detail = "dim ker = " + std::to_string(ker.rank()) + ", dim K = " + std::to_string(k_sub.rank());

  for (Index k = 0; k < ker.rank(); ++k)
    for (Index j = 0; j < u.univ.dim(); ++j) {
      SparseVec s = u.univ.table().bracket(ker.basis()[k], SparseVec::unit(j));
      if (!s.empty()) {
        if (!u.kernel_central.witness) u.kernel_central.witness = Witness{{k, j}, s};
        ++u.kernel_central.failures;
      }
    }
  u.kernel_central.passed = u.kernel_central.failures == 0;
  u.center_dim = center(u.univ.table()).rank();
  return u;
}

/// ψ : L(q,{0}) → L(q,K0) for a quotient model with φ : L(q,K0) → L(q,K); certifies φ∘ψ = π.
inline HomCertificate factor_through(const UniversalExtension& u, const GradedAlgebra& mid, const LinearMap& phi) {
  HomCertificate psi;
  psi.map = quotient_map(u.univ, mid);
  psi.domain = "L(q,{0})";
  psi.codomain = "L(q,K0)";
  psi.homomorphism = check_homomorphism(psi.map, u.univ.table(), mid.table());
  psi.checked = true;
  if (!psi.homomorphism.passed)
    throw Error(ErrorKind::CertificateFailure, "psi is not a homomorphism at " + psi.homomorphism.witness->str());
  LinearMap comp = phi.compose(psi.map);
  for (Index i = 0; i < u.univ.dim(); ++i)
    if (!(comp.column(i) == u.pi.map.column(i)))
      throw Error(ErrorKind::CertificateFailure, "phi∘psi != pi on basis element " + std::to_string(i));
  return psi;
}

/// ψ = s∘π + ν into L ⊕ E, where ν : L(q,{0}) → E solves ν([x,y]) = τ(πx, πy).
inline HomCertificate factor_through(const UniversalExtension& u, const CentralExtension& ext) {
  const LieTable& A = u.univ.table();
  const Index n = A.dim(), base = ext.base_dim(), e = ext.e_dim();
  if (base != u.target.dim()) throw Error(ErrorKind::ShapeMismatch, "extension is not over L(q,K)");
  // unknown ν(e_m)_r at m*e + r
  std::vector<SparseVec> rows;
  std::vector<Rational> rhs;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      SparseVec t = ext.tau.eval(u.pi.map.column(i), u.pi.map.column(j));
      for (Index r = 0; r < e; ++r) {
        SparseVec eq;
        for (const auto& [m, c] : A.at(i, j)) eq.axpy(c, SparseVec::unit(m * e + r));
        Rational b = t.get(r);
        if (eq.empty() && b == 0) continue;
        rows.push_back(std::move(eq));
        rhs.push_back(b);
      }
    }
  auto nu = solve_affine(rows, rhs, n * e);
  if (!nu) throw Error(ErrorKind::CertificateFailure, "no lift of pi into the extension exists");
  std::vector<SparseVec> cols(n);
  for (Index m = 0; m < n; ++m) cols[m] = u.pi.map.column(m);
  for (const auto& [k, c] : *nu) cols[k / e].axpy(c, SparseVec::unit(base + k % e));
  HomCertificate psi;
  psi.map = LinearMap(base + e, std::move(cols));
  psi.domain = "L(q,{0})";
  psi.codomain = "L(q,K)+E";
  psi.homomorphism = check_homomorphism(psi.map, A, ext.total);
  psi.checked = true;
  if (!psi.homomorphism.passed)
    throw Error(ErrorKind::CertificateFailure, "psi is not a homomorphism at " + psi.homomorphism.witness->str());
  LinearMap comp = ext.projection.compose(psi.map);
  for (Index i = 0; i < n; ++i)
    if (!(comp.column(i) == u.pi.map.column(i)))
      throw Error(ErrorKind::CertificateFailure, "projection∘psi != pi on basis element " + std::to_string(i));
  return psi;
}

/// Degree-zero cocycle on L(q,K) read off the universal extension:
/// τ(x,y) = μ(κ[s x, s y]) with s the obvious section and κ the K-component.
inline Cocycle cocycle_from_universal(const UniversalExtension& u, const std::vector<SparseVec>& mu_rows) {
  const GradedAlgebra& L = u.target;
  const Subspace& ks = L.dd_quotient().k_sub;
  const Index e = mu_rows.size();
  const Index off = L.offset(3);
  BasisCoordinates kc(ks.basis(), ks.ambient_dim());
  std::vector<SparseVec> section(L.dim());
  for (Index i = 0; i < off; ++i) section[i] = SparseVec::unit(i);
  for (Index i = 0; i < L.dd_quotient().dim(); ++i) section[off + i] = SparseVec::unit(off + L.dd_quotient().classes[i]);
  Cocycle t(L.dim(), e);
  for (Index i = 0; i < L.dim(); ++i)
    for (Index j = i + 1; j < L.dim(); ++j) {
      SparseVec d = u.univ.table().bracket(section[i], section[j]).slice(off, u.univ.dim());
      SparseVec k = kc.coords(d - ks.reduce(d));
      SparseVec v;
      for (Index r = 0; r < e; ++r) {
        Rational c = mu_rows[r].dot(k);
        if (c != 0) v.axpy(c, SparseVec::unit(r));
      }
      t.set_pair(i, j, v);
    }
  return t;
}

}  // namespace rootgrade
