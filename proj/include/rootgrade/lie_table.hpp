#pragma once

// Lie algebras given by structure constants and the generic checks run on them.

#include <optional>
#include <string>
#include <vector>

#include "rootgrade/linalg.hpp"
#include "rootgrade/parallel.hpp"

namespace rootgrade {

struct Witness {
  std::vector<Index> basis;  // offending basis indices
  SparseVec value;           // the nonzero residual
  std::string str() const {
    std::string s = "(";
    for (Index i = 0; i < basis.size(); ++i) s += (i ? "," : "") + std::to_string(basis[i]);
    return s + ") -> " + value.str();
  }
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t failures = 0;
  std::optional<Witness> witness;
  std::string detail;
};

/// Structure constants: table[i*dim + j] = [e_i, e_j].
class LieTable {
 public:
  LieTable() = default;
  explicit LieTable(Index dim) : dim_(dim), table_(dim * dim) {}

  Index dim() const noexcept { return dim_; }
  const SparseVec& at(Index i, Index j) const { return table_[i * dim_ + j]; }
  void set(Index i, Index j, SparseVec v) {
    if (!v.empty() && v.max_index() >= dim_) throw Error(ErrorKind::IndexOutOfRange, "bracket value outside algebra");
    table_[i * dim_ + j] = std::move(v);
  }
  /// Sets [e_i,e_j] = v and [e_j,e_i] = −v.
  void set_pair(Index i, Index j, const SparseVec& v) {
    set(i, j, v);
    set(j, i, -v);
  }

  SparseVec bracket(const SparseVec& x, const SparseVec& y) const {
    Accumulator acc(dim_);
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) acc.axpy(a * b, table_[i * dim_ + j]);
    return acc.take();
  }

  SparseVec bracket_basis(Index i, const SparseVec& y) const {
    Accumulator acc(dim_);
    for (const auto& [j, b] : y) acc.axpy(b, table_[i * dim_ + j]);
    return acc.take();
  }

  LinearMap ad(const SparseVec& x) const {
    std::vector<SparseVec> cols(dim_);
    for (Index j = 0; j < dim_; ++j) cols[j] = bracket(x, SparseVec::unit(j));
    return LinearMap(dim_, std::move(cols));
  }

  friend bool operator==(const LieTable& a, const LieTable& b) { return a.dim_ == b.dim_ && a.table_ == b.table_; }

 private:
  Index dim_ = 0;
  std::vector<SparseVec> table_;
};

inline CheckResult check_antisymmetry(const LieTable& t) {
  CheckResult r{"antisymmetry"};
  for (Index i = 0; i < t.dim(); ++i)
    for (Index j = i; j < t.dim(); ++j) {
      SparseVec s = t.at(i, j) + t.at(j, i);
      if (!s.empty()) {
        if (!r.witness) r.witness = Witness{{i, j}, s};
        ++r.failures;
      }
    }
  r.passed = r.failures == 0;
  return r;
}

/// Σ_cyc [[e_i,e_j],e_k] over i<j<k; witness is the lexicographically first failing triple.
inline CheckResult check_jacobi(const LieTable& t) {
  const Index n = t.dim();
  std::vector<std::size_t> fails(n, 0);
  std::vector<std::optional<Witness>> first(n);
  parallel_for(n, [&](std::size_t i) {
    Accumulator acc(n);
    for (Index j = i + 1; j < n; ++j) {
      const SparseVec& ij = t.at(i, j);
      for (Index k = j + 1; k < n; ++k) {
        for (const auto& [m, c] : ij) acc.axpy(c, t.at(m, k));
        for (const auto& [m, c] : t.at(j, k)) acc.axpy(c, t.at(m, i));
        for (const auto& [m, c] : t.at(k, i)) acc.axpy(c, t.at(m, j));
        SparseVec s = acc.take();
        if (!s.empty()) {
          if (!first[i]) first[i] = Witness{{i, j, k}, s};
          ++fails[i];
        }
      }
    }
  });
  CheckResult r{"jacobi"};
  for (Index i = 0; i < n; ++i) {
    r.failures += fails[i];
    if (!r.witness && first[i]) r.witness = first[i];
  }
  r.passed = r.failures == 0;
  return r;
}

/// Span of all basis brackets.
inline Subspace derived_algebra(const LieTable& t) {
  Subspace s(t.dim());
  for (Index i = 0; i < t.dim(); ++i)
    for (Index j = i + 1; j < t.dim(); ++j) {
      if (s.rank() == t.dim()) return s;
      s.insert(t.at(i, j));
    }
  return s;
}

inline CheckResult check_perfect(const LieTable& t) {
  CheckResult r{"perfect"};
  Subspace d = derived_algebra(t);
  r.passed = d.rank() == t.dim();
  r.detail = "dim [L,L] = " + std::to_string(d.rank()) + " of " + std::to_string(t.dim());
  if (!r.passed) {
    auto free = d.free_columns();
    r.failures = free.size();
    r.witness = Witness{{free.front()}, SparseVec::unit(free.front())};
  }
  return r;
}

/// Z(L) = {x : [x, e_j] = 0 for all j}.
inline Subspace center(const LieTable& t) {
  const Index n = t.dim();
  // x ↦ ([x,e_0], …, [x,e_{n−1}]) flattened
  std::vector<SparseVec> rows(n);
  for (Index i = 0; i < n; ++i) {
    std::vector<SparseVec::Entry> e;
    for (Index j = 0; j < n; ++j)
      for (const auto& [m, c] : t.at(i, j)) e.emplace_back(j * n + m, c);
    rows[i] = SparseVec(std::move(e));
  }
  return kernel(rows, n * n);
}

/// f([e_i,e_j]) = [f e_i, f e_j] on all basis pairs; witness is the first failing pair.
inline CheckResult check_homomorphism(const LinearMap& f, const LieTable& src, const LieTable& tgt) {
  CheckResult r{"homomorphism"};
  if (f.dim_in() != src.dim() || f.dim_out() != tgt.dim())
    throw Error(ErrorKind::ShapeMismatch, "map does not match algebra dimensions");
  const Index n = src.dim();
  std::vector<std::size_t> fails(n, 0);
  std::vector<std::optional<Witness>> first(n);
  parallel_for(n, [&](std::size_t i) {
    for (Index j = i + 1; j < n; ++j) {
      SparseVec s = f.apply(src.at(i, j)) - tgt.bracket(f.column(i), f.column(j));
      if (!s.empty()) {
        if (!first[i]) first[i] = Witness{{i, j}, s};
        ++fails[i];
      }
    }
  });
  for (Index i = 0; i < n; ++i) {
    r.failures += fails[i];
    if (!r.witness && first[i]) r.witness = first[i];
  }
  r.passed = r.failures == 0;
  return r;
}

}  // namespace rootgrade
