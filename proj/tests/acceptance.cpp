// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "rootgrade/extensions.hpp"

using namespace rootgrade;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

bool names_axiom(const std::vector<Violation>& v, const std::string& axiom) {
  for (const auto& x : v)
    if (x.axiom == axiom) return true;
  return false;
}

Outcome quadruple_axioms() {
  Outcome o;
  for (const auto& name : catalog_names()) o.require(validate_quadruple(catalog(name)).empty(), name + " has violations");
  CoordinateQuadruple bad_star = catalog("bc-exchange");
  (*bad_star.a.star)[0] = SparseVec::unit(1, 2);
  o.require(names_axiom(validate_quadruple(bad_star), "star_involution"), "star mutation not named");
  CoordinateQuadruple bad_form = catalog("bc-symplectic-rank1");
  bad_form.c.f[0] = SparseVec::unit(0);
  o.require(names_axiom(validate_quadruple(bad_form), "f_skew_hermitian"), "form mutation not named");
  CoordinateQuadruple bad_conj = catalog("bc-exchange");
  bad_conj.c.f[1] = SparseVec::unit(1);
  o.require(names_axiom(validate_quadruple(bad_conj), "f_skew_hermitian"), "hermitian-symmetric form not named");
  return o;
}

Outcome derivation_law() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& name : catalog_names()) {
    BAlgebra b(catalog(name));
    const Index n = b.dim();
    for (Index p = 0; p < n; ++p)
      for (Index q = 0; q < n; ++q) {
        LinearMap d = b.derivation(SparseVec::unit(p), SparseVec::unit(q), 4);
        for (Index i = 0; i < n; ++i)
          for (Index j = 0; j < n; ++j) {
            SparseVec u = SparseVec::unit(i), v = SparseVec::unit(j);
            ++checked;
            o.require(d.apply(b.mul(u, v)) == b.mul(d.apply(u), v) + b.mul(u, d.apply(v)),
                      name + " fails at (" + std::to_string(p) + "," + std::to_string(q) + ";" + std::to_string(i) +
                          "," + std::to_string(j) + ")");
          }
      }
  }
  if (o.ok) o.note = std::to_string(checked) + " basis tuples";
  return o;
}

Outcome bb_structure() {
  Outcome o;
  for (const auto& name : catalog_names()) {
    BBSpace bb(BAlgebra(catalog(name)), 4);
    oracle::Homology h = oracle::homology(catalog(name), 4);
    o.require(bb.relations().rank() == h.dim_k, name + " K dim differs from dense oracle");
    o.require(bb.check_relations_invariant().passed, name + " K not invariant");
    o.require(check_antisymmetry(bb.table()).passed, name + " antisymmetry");
    o.require(check_jacobi(bb.table()).passed, name + " Jacobi");
  }
  return o;
}

Outcome hf_central() {
  Outcome o;
  Index total = 0;
  for (const auto& name : catalog_names()) {
    BBSpace bb(BAlgebra(catalog(name)), 4);
    Subspace hf = bb.compute_hf();
    total += hf.rank();
    o.require(hf.rank() == oracle::homology(catalog(name), 4).dim_hf, name + " HF dim differs from dense oracle");
    for (const auto& x : hf.basis())
      for (Index j = 0; j < bb.dim(); ++j) o.require(bb.bracket(x, SparseVec::unit(j)).empty(), name + " HF not central");
  }
  if (o.ok) o.note = "total dim HF over catalog = " + std::to_string(total);
  return o;
}

Outcome uniform_property() {
  Outcome o;
  for (const auto& name : catalog_names()) {
    BBSpace bb(BAlgebra(catalog(name)), 4);
    o.require(bb.check_uniform(Subspace(bb.dim())).uniform, name + ": {0} not uniform");
  }
  // degenerate instances: β* vanishes on every class, so every subspace of HF = {b,b} is uniform
  for (const char* name : {"d-dual-numbers", "bc-square-zero3"}) {
    BBSpace bb(BAlgebra(catalog(name)), 4);
    o.require(bb.compute_hf().rank() == bb.dim(), std::string(name) + ": HF != {b,b}");
    for (Index i = 0; i < bb.dim(); ++i) o.require(bb.beta_star_of_class(i).empty(), std::string(name) + ": beta* != 0");
    for (unsigned mask = 0; mask < (1u << bb.dim()); ++mask) {
      std::vector<SparseVec> v;
      for (Index i = 0; i < bb.dim(); ++i)
        if (mask >> i & 1) v.push_back(SparseVec::unit(i));
      o.require(bb.check_uniform(span(v, bb.dim())).uniform, std::string(name) + ": coordinate subspace not uniform");
    }
    if (bb.dim() >= 2) {
      SparseVec diag{{0, 1}, {1, -3}};
      o.require(bb.check_uniform(span(std::vector<SparseVec>{diag}, bb.dim())).uniform, "diagonal line not uniform");
    }
  }
  // non-uniform: HF of the exterior algebra example
  BBSpace ext(BAlgebra(catalog("bc-exterior2")), 4);
  UniformResult u = ext.check_uniform(ext.compute_hf());
  o.require(!u.uniform && u.witness.has_value() && !u.image.empty(), "bc-exterior2 HF accepted");
  if (o.ok) o.note = "bc-exterior2 witness " + u.witness->str() + ", beta* sum " + u.image.str();
  return o;
}

Outcome symplectic_dims() {
  Outcome o;
  auto ms = [](const std::vector<WeightSpace>& sp) {
    std::map<Weight, Index> m;
    for (const auto& s : sp) m[s.weight] += s.space.rank();
    return m;
  };
  for (Index n = 2; n <= 5; ++n) {
    IndexData idx(n, std::min<Index>(n, 4));
    const std::string at = " at n=" + std::to_string(n);
    auto g = build_g(idx);
    auto s = build_s(idx);
    o.require(g.size() == n * (2 * n + 1) && span(flat_ops(g), 4 * n * n).rank() == oracle::sp_dim(n), "dim G" + at);
    o.require(s.size() == 2 * n * n - n - 1 && span(flat_ops(s), 4 * n * n).rank() == oracle::s_dim(n), "dim S" + at);
    std::map<Weight, Index> eg, es, ev;
    auto w = [n](Index i, long a, Index j, long b) {
      Weight x(n, 0);
      x[i] += a;
      x[j] += b;
      return x;
    };
    for (Index i = 0; i < n; ++i) {
      eg[w(i, 2, i, 0)] = eg[w(i, -2, i, 0)] = 1;
      ev[w(i, 1, i, 0)] = ev[w(i, -1, i, 0)] = 1;
      for (Index j = 0; j < n; ++j)
        if (i != j)
          for (long a : {1, -1})
            for (long b : {1, -1}) eg[w(i, a, j, b)] = es[w(i, a, j, b)] = 1;
    }
    eg[Weight(n, 0)] = n;
    es[Weight(n, 0)] = n - 1;
    o.require(ms(weight_decompose_ops(g, idx)) == eg, "G weights" + at);
    o.require(ms(weight_decompose_ops(s, idx)) == es, "S weights" + at);
    o.require(ms(weight_decompose_v(idx)) == ev && idx.vdim() == 2 * n, "V weights" + at);
  }
  return o;
}

Outcome graded_core() {
  Outcome o;
  std::ostringstream note;
  for (const char* name : {"bc-symplectic-rank1", "bc-exchange"}) {
    GradedAlgebra L(catalog(name), IndexData(4, 4));
    GradedReport r = check_graded(L);
    for (const auto& c : r.checks)
      o.require(c.passed, std::string(name) + " " + c.name + (c.witness ? " at " + c.witness->str() : ""));
    note << name << " dim " << L.dim() << "; ";
  }
  if (o.ok) o.note = note.str() + "v_ops scales " + to_string(kVSymScale) + ", " + to_string(kVSkewScale);
  return o;
}

Outcome rank_monotone() {
  Outcome o;
  for (const char* name : {"bc-symplectic-rank1", "bc-exchange"}) {
    GradedAlgebra small(catalog(name), IndexData(4, 4)), big(catalog(name), IndexData(5, 4));
    LinearMap f = rank_embedding(small, big);
    o.require(f.null_space().rank() == 0, std::string(name) + " embedding not injective");
    CheckResult h = check_homomorphism(f, small.table(), big.table());
    o.require(h.passed, std::string(name) + " embedding breaks brackets" + (h.witness ? " at " + h.witness->str() : ""));
    for (Index i = 0; i < small.dim(); ++i)
      o.require(f.column(i).size() == 1 && f.column(i).begin()->second == 1,
                std::string(name) + " basis vector " + std::to_string(i) + " is not sent to a basis vector");
  }
  return o;
}

std::vector<SparseVec> d_basis(const GradedAlgebra& L) {
  std::vector<SparseVec> v;
  for (Index i = L.offset(3); i < L.dim(); ++i) v.push_back(SparseVec::unit(i));
  return v;
}

Outcome central_extensions() {
  Outcome o;
  CoordinateQuadruple q = catalog("bc-square-zero3");
  IndexData idx(4, 4);
  Subspace hf = BBSpace(BAlgebra(q), 4).compute_hf();
  // base L(q,K) with K two-dimensional, so ⟨b,b⟩ survives in L
  Subspace k = span(std::vector<SparseVec>{hf.basis()[0], hf.basis()[1]}, hf.ambient_dim());
  UniversalExtension u = universal_extension(q, idx, k);
  const GradedAlgebra& L = u.target;
  const Subspace d = span(d_basis(L), L.dim());
  const auto gel = g_elements(L);
  std::map<Weight, Index> base_dims;
  for (const auto& w : L.structure().weights) ++base_dims[w];

  std::mt19937_64 rng(2024);
  for (int t = 0; t < 10; ++t) {
    Cocycle tau = random_coboundary(L.table(), 1 + t % 3, rng);
    CentralExtension e = central_extend(L.table(), tau);
    o.require(check_kernel_central(e).passed, "coboundary " + std::to_string(t) + " kernel not central");
    o.require(check_jacobi(e.total).passed, "coboundary " + std::to_string(t) + " Jacobi");
  }
  const std::vector<std::vector<SparseVec>> mus = {
      {SparseVec::unit(0)},
      {SparseVec::unit(1)},
      {SparseVec{{0, 1}, {1, 1}}},
      {SparseVec::unit(0), SparseVec::unit(1)},
      {SparseVec{{0, 2}, {1, -1}}, SparseVec{{0, 1}, {1, 3}}},
  };
  for (Index t = 0; t < mus.size(); ++t) {
    const std::string tag = "graded cocycle " + std::to_string(t);
    Cocycle tau = cocycle_from_universal(u, mus[t]);
    CentralExtension e = central_extend(L.table(), tau);
    o.require(check_kernel_central(e).passed, tag + " kernel not central");
    o.require(check_jacobi(e.total).passed, tag + " Jacobi");
    ExtensionGrading g = grade_extension(e, L.structure(), gel);
    const Weight zero(idx.n, 0);
    for (const auto& [w, dim] : g.dims) {
      Index expect = base_dims.count(w) ? base_dims.at(w) : 0;
      if (w == zero) expect += e.e_dim();
      o.require(dim == expect, tag + " weight space " + weight_str(w) + " has wrong dimension");
    }
    o.require(g.dims.size() == base_dims.size(), tag + " new weights appeared");
    o.require(g.weights.passed && g.zero_weight.passed, tag + " grading checks");
    o.require(check_trivial_submodule(e, d, gel), tag + " tau(G, <b,b>) != 0");
  }
  if (o.ok) o.note = "base dim " + std::to_string(L.dim()) + ", dim <b,b> " + std::to_string(d.rank());
  return o;
}

Outcome universal_certificates() {
  Outcome o;
  CoordinateQuadruple q = catalog("bc-square-zero3");
  IndexData idx(4, 4);
  BBSpace bb(BAlgebra(q), 4);
  Subspace hf = bb.compute_hf();
  UniversalExtension u = universal_extension(q, idx, hf);
  o.require(u.pi.homomorphism.passed, "pi not a homomorphism");
  o.require(u.surjective.passed, "pi not surjective");
  o.require(u.kernel_matches.passed && u.kernel_dim == hf.rank(), "ker pi != K");
  o.require(u.kernel_central.passed, "ker pi not central");

  const std::vector<Subspace> chain = {Subspace(hf.ambient_dim()),
                                       span(std::vector<SparseVec>{hf.basis()[0]}, hf.ambient_dim()), hf};
  for (Index c = 0; c < chain.size(); ++c) {
    const std::string tag = "K0 #" + std::to_string(c);
    GradedAlgebra mid(q, idx, chain[c]);
    LinearMap phi = quotient_map(mid, u.target);
    o.require(check_homomorphism(phi, mid.table(), u.target.table()).passed, tag + " phi not a homomorphism");
    try {
      HomCertificate psi = factor_through(u, mid, phi);
      o.require(psi.homomorphism.passed, tag + " psi not a homomorphism");
      o.require(phi.compose(psi.map) == u.pi.map, tag + " phi∘psi != pi");
      // transitivity: L(q,{0}) → L(q,K0) → L(q,K) equals the direct π
      o.require(quotient_map(mid, u.target).compose(quotient_map(u.univ, mid)) == u.pi.map, tag + " transitivity");
    } catch (const Error& e) {
      o.require(false, tag + " " + e.what());
    }
  }
  // a perfect central extension given by a cocycle also receives ψ
  CentralExtension ext = central_extend(u.target.table(), cocycle_from_universal(u, {SparseVec::unit(0), SparseVec::unit(2)}));
  try {
    o.require(factor_through(u, ext).homomorphism.passed, "psi into cocycle extension");
  } catch (const Error& e) {
    o.require(false, e.what());
  }
  // π(⟨a,a'⟩) = ⟨a,a'⟩ on all basis pairs of b
  const Index db = bb.b_dim();
  for (Index i = 0; i < db; ++i)
    for (Index j = 0; j < db; ++j) {
      SparseVec x = SparseVec::unit(i), y = SparseVec::unit(j);
      o.require(u.pi.map.apply(u.univ.dd(x, y)) == u.target.dd(x, y),
                "pi<e" + std::to_string(i) + ",e" + std::to_string(j) + "> mismatch");
    }
  if (o.ok)
    o.note = "dim ker " + std::to_string(u.kernel_dim) + ", dim Z " + std::to_string(u.center_dim) + ", dim L(q,{0}) " +
             std::to_string(u.univ.dim());
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "quadruple axioms and mutations", 1, quadruple_axioms},
      {2, "derivation law on b", 10, derivation_law},
      {3, "{b,b} well defined, antisymmetric, Jacobi", 30, bb_structure},
      {4, "HF(b) central in {b,b}", 10, hf_central},
      {5, "uniform property", 60, uniform_property},
      {6, "symplectic dimensions and weights", 5, symplectic_dims},
      {7, "graded algebra checks at n=4", 600, graded_core},
      {8, "rank embedding n=4 into n=5", 900, rank_monotone},
      {9, "central extensions", 300, central_extensions},
      {10, "universal extension certificates", 300, universal_certificates},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.budget_s) {
      o.ok = false;
      o.note = "over time budget";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fs", secs);
    std::cout << "criterion " << c.id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.title << " (" << buf << ")";
    if (!o.note.empty()) std::cout << "  " << o.note;
    std::cout << std::endl;
    failed += !o.ok;
  }
  std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << std::endl;
  return failed ? 1 : 0;
}
