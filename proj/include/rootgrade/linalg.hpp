#pragma once

// Exact linear algebra over Q: RREF subspaces, kernels, coset representatives,
// coordinates against arbitrary bases and invariant complements.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rootgrade/error.hpp"
#include "rootgrade/sparse_vec.hpp"

namespace rootgrade {

namespace detail {

inline void check_fits(const SparseVec& v, Index dim) {
  if (!v.empty() && v.max_index() >= dim)
    throw Error(ErrorKind::IndexOutOfRange,
                "index " + std::to_string(v.max_index()) + " outside ambient dimension " + std::to_string(dim));
}

// Incremental RREF that remembers, for every row, which combination of the
// inputs produced it. A zero residual yields a linear dependency among inputs.
class EchelonWithHistory {
 public:
  explicit EchelonWithHistory(Index dim) : pivot_row_(dim, npos) {}

  struct Reduced {
    SparseVec residual;
    SparseVec history;
  };

  Reduced reduce(SparseVec v, SparseVec history) const {
    std::vector<std::pair<Rational, Index>> hits;
    for (const auto& [i, c] : v)
      if (pivot_row_[i] != npos) hits.emplace_back(c, pivot_row_[i]);
    for (const auto& [c, r] : hits) {
      v.axpy(-c, rows_[r]);
      history.axpy(-c, hist_[r]);
    }
    return {std::move(v), std::move(history)};
  }

  /// Coefficients c with v - residual = sum_p c_p * row_p, expressed over the inputs.
  std::pair<SparseVec, SparseVec> express(const SparseVec& v) const {
    SparseVec residual = v;
    SparseVec coords;
    std::vector<std::pair<Rational, Index>> hits;
    for (const auto& [i, c] : v)
      if (pivot_row_[i] != npos) hits.emplace_back(c, pivot_row_[i]);
    for (const auto& [c, r] : hits) {
      residual.axpy(-c, rows_[r]);
      coords.axpy(c, hist_[r]);
    }
    return {std::move(residual), std::move(coords)};
  }

  /// Returns the dependency (over inputs) if v reduces to zero, otherwise inserts it.
  std::optional<SparseVec> add(const SparseVec& v, const SparseVec& history) {
    auto [r, h] = reduce(v, history);
    if (r.empty()) return h;
    const Index p = r.leading();
    Rational inv = 1 / r.get(p);
    r *= inv;
    h *= inv;
    for (Index k = 0; k < rows_.size(); ++k) {
      Rational c = rows_[k].get(p);
      if (c != 0) {
        rows_[k].axpy(-c, r);
        hist_[k].axpy(-c, h);
      }
    }
    pivot_row_[p] = rows_.size();
    rows_.push_back(std::move(r));
    hist_.push_back(std::move(h));
    return std::nullopt;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  static constexpr Index npos = static_cast<Index>(-1);
  std::vector<Index> pivot_row_;
  std::vector<SparseVec> rows_;
  std::vector<SparseVec> hist_;
};

}  // namespace detail

/// A subspace of Q^ambient held as a reduced row-echelon basis.
///
/// Rows are sorted by pivot, every pivot entry is 1 and every pivot column is
/// zero in all other rows. Pivoting is leftmost-nonzero with rows taken in
/// insertion order, so canonical coset representatives are reproducible.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Index ambient_dim) : ambient_(ambient_dim), pivot_row_(ambient_dim, npos) {}

  static Subspace span(std::span<const SparseVec> vectors, Index ambient_dim) {
    Subspace s(ambient_dim);
    for (const auto& v : vectors) s.insert(v);
    return s;
  }
  static Subspace span(const std::vector<SparseVec>& vectors, Index ambient_dim) {
    return span(std::span<const SparseVec>(vectors), ambient_dim);
  }

  static Subspace full(Index ambient_dim) {
    Subspace s(ambient_dim);
    for (Index i = 0; i < ambient_dim; ++i) s.insert(SparseVec::unit(i));
    return s;
  }

  Index ambient_dim() const noexcept { return ambient_; }
  Index rank() const noexcept { return rows_.size(); }
  Index dim() const noexcept { return rows_.size(); }
  bool is_zero() const noexcept { return rows_.empty(); }
  const std::vector<SparseVec>& basis() const noexcept { return rows_; }

  std::vector<Index> pivots() const {
    std::vector<Index> p;
    p.reserve(rows_.size());
    for (const auto& r : rows_) p.push_back(r.leading());
    return p;
  }

  /// Columns that are not pivots; unit vectors there represent a basis of the quotient.
  std::vector<Index> free_columns() const {
    std::vector<Index> f;
    for (Index i = 0; i < ambient_; ++i)
      if (pivot_row_[i] == npos) f.push_back(i);
    return f;
  }

  bool is_pivot(Index i) const { return pivot_row_.at(i) != npos; }

  /// Canonical representative of v + this: v minus its pivot-coordinate projection.
  SparseVec reduce(const SparseVec& v) const {
    detail::check_fits(v, ambient_);
    SparseVec out = v;
    std::vector<std::pair<Rational, Index>> hits;
    for (const auto& [i, c] : v)
      if (pivot_row_[i] != npos) hits.emplace_back(c, pivot_row_[i]);
    for (const auto& [c, r] : hits) out.axpy(-c, rows_[r]);
    return out;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  bool contains(const Subspace& other) const {
    return std::all_of(other.rows_.begin(), other.rows_.end(),
                       [&](const SparseVec& v) { return contains(v); });
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }

  /// Adds v to the span; returns true iff the rank grew.
  bool insert(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    const Index p = r.leading();
    r *= 1 / r.get(p);
    for (auto& row : rows_) {
      Rational c = row.get(p);
      if (c != 0) row.axpy(-c, r);
    }
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), p,
                                [](const SparseVec& row, Index k) { return row.leading() < k; });
    rows_.insert(pos, std::move(r));
    for (Index k = 0; k < rows_.size(); ++k) pivot_row_[rows_[k].leading()] = k;
    return true;
  }

  /// Coordinates of v modulo this subspace, indexed by position in free_columns().
  SparseVec quotient_coords(const SparseVec& v) const {
    SparseVec r = reduce(v);
    std::vector<Index> free_pos(ambient_, npos);
    Index k = 0;
    for (Index i = 0; i < ambient_; ++i)
      if (pivot_row_[i] == npos) free_pos[i] = k++;
    return r.remap([&](Index i) { return free_pos[i]; });
  }

 private:
  static constexpr Index npos = static_cast<Index>(-1);
  Index ambient_ = 0;
  std::vector<SparseVec> rows_;
  std::vector<Index> pivot_row_;
};

inline Subspace span(std::span<const SparseVec> vectors, Index ambient_dim) {
  for (const auto& v : vectors) detail::check_fits(v, ambient_dim);
  return Subspace::span(vectors, ambient_dim);
}
inline Subspace span(const std::vector<SparseVec>& vectors, Index ambient_dim) {
  return span(std::span<const SparseVec>(vectors), ambient_dim);
}

inline SparseVec coset_reduce(const SparseVec& v, const Subspace& k) { return k.reduce(v); }

/// Null space of the map whose i-th row is the image of the i-th domain basis vector.
inline Subspace kernel(std::span<const SparseVec> images, Index codomain_dim) {
  detail::EchelonWithHistory ech(codomain_dim);
  std::vector<SparseVec> deps;
  for (Index i = 0; i < images.size(); ++i) {
    detail::check_fits(images[i], codomain_dim);
    if (auto dep = ech.add(images[i], SparseVec::unit(i))) deps.push_back(std::move(*dep));
  }
  return Subspace::span(deps, images.size());
}
inline Subspace kernel(const std::vector<SparseVec>& images, Index codomain_dim) {
  return kernel(std::span<const SparseVec>(images), codomain_dim);
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorKind::ShapeMismatch, "sum of subspaces");
  Subspace s = a;
  for (const auto& v : b.basis()) s.insert(v);
  return s;
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorKind::ShapeMismatch, "intersection of subspaces");
  detail::EchelonWithHistory ech(a.ambient_dim());
  const Index k = a.rank();
  for (Index i = 0; i < k; ++i) ech.add(a.basis()[i], SparseVec::unit(i));
  std::vector<SparseVec> common;
  for (Index j = 0; j < b.rank(); ++j) {
    if (auto dep = ech.add(b.basis()[j], SparseVec::unit(k + j))) {
      SparseVec x;
      for (const auto& [i, c] : *dep)
        if (i < k) x.axpy(c, a.basis()[i]);
      common.push_back(std::move(x));
    }
  }
  return Subspace::span(common, a.ambient_dim());
}

/// Coordinates with respect to a fixed, linearly independent (not necessarily echelon) basis.
class BasisCoordinates {
 public:
  BasisCoordinates() = default;
  BasisCoordinates(std::vector<SparseVec> basis, Index ambient_dim)
      : basis_(std::move(basis)), ech_(ambient_dim), ambient_(ambient_dim) {
    for (Index i = 0; i < basis_.size(); ++i) {
      detail::check_fits(basis_[i], ambient_dim);
      if (ech_.add(basis_[i], SparseVec::unit(i)))
        throw Error(ErrorKind::ShapeMismatch, "basis vector " + std::to_string(i) + " is dependent");
    }
  }

  Index size() const noexcept { return basis_.size(); }
  Index ambient_dim() const noexcept { return ambient_; }
  const std::vector<SparseVec>& basis() const noexcept { return basis_; }

  std::optional<SparseVec> try_coords(const SparseVec& v) const {
    detail::check_fits(v, ambient_);
    auto [residual, coords] = ech_.express(v);
    if (!residual.empty()) return std::nullopt;
    return coords;
  }

  SparseVec coords(const SparseVec& v) const {
    auto c = try_coords(v);
    if (!c) throw Error(ErrorKind::NotInSpan, "vector not in span of basis: " + v.str());
    return *c;
  }

  SparseVec combine(const SparseVec& coords) const {
    SparseVec v;
    for (const auto& [i, c] : coords) v.axpy(c, basis_.at(i));
    return v;
  }

 private:
  std::vector<SparseVec> basis_;
  detail::EchelonWithHistory ech_{0};
  Index ambient_ = 0;
};

/// Linear map Q^dim_in -> Q^dim_out stored by the images of the domain basis.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(Index dim_in, Index dim_out) : dim_in_(dim_in), dim_out_(dim_out), columns_(dim_in) {}
  LinearMap(Index dim_out, std::vector<SparseVec> columns)
      : dim_in_(columns.size()), dim_out_(dim_out), columns_(std::move(columns)) {
    for (const auto& c : columns_) detail::check_fits(c, dim_out_);
  }

  static LinearMap identity(Index dim) {
    LinearMap m(dim, dim);
    for (Index i = 0; i < dim; ++i) m.columns_[i] = SparseVec::unit(i);
    return m;
  }

  Index dim_in() const noexcept { return dim_in_; }
  Index dim_out() const noexcept { return dim_out_; }
  const SparseVec& column(Index i) const { return columns_.at(i); }
  const std::vector<SparseVec>& columns() const noexcept { return columns_; }
  void set_column(Index i, SparseVec v) {
    detail::check_fits(v, dim_out_);
    columns_.at(i) = std::move(v);
  }

  SparseVec apply(const SparseVec& v) const {
    detail::check_fits(v, dim_in_);
    SparseVec out;
    for (const auto& [i, c] : v) out.axpy(c, columns_[i]);
    return out;
  }

  /// (this ∘ inner)
  LinearMap compose(const LinearMap& inner) const {
    if (inner.dim_out_ != dim_in_) throw Error(ErrorKind::ShapeMismatch, "compose");
    LinearMap m(inner.dim_in_, dim_out_);
    for (Index i = 0; i < inner.dim_in_; ++i) m.columns_[i] = apply(inner.columns_[i]);
    return m;
  }

  Subspace image() const { return Subspace::span(columns_, dim_out_); }
  Subspace null_space() const { return kernel(columns_, dim_out_); }

  friend bool operator==(const LinearMap& a, const LinearMap& b) {
    return a.dim_in_ == b.dim_in_ && a.dim_out_ == b.dim_out_ && a.columns_ == b.columns_;
  }

 private:
  Index dim_in_ = 0;
  Index dim_out_ = 0;
  std::vector<SparseVec> columns_;
};

/// One particular solution of the affine system rows[i] · x = rhs[i], or nullopt if inconsistent.
inline std::optional<SparseVec> solve_affine(const std::vector<SparseVec>& rows, const std::vector<Rational>& rhs,
                                             Index nvars) {
  if (rows.size() != rhs.size()) throw Error(ErrorKind::ShapeMismatch, "solve_affine");
  Subspace aug(nvars + 1);
  for (Index i = 0; i < rows.size(); ++i) {
    detail::check_fits(rows[i], nvars);
    SparseVec r = rows[i];
    r.axpy(rhs[i], SparseVec::unit(nvars));
    aug.insert(r);
  }
  SparseVec x;
  for (const auto& row : aug.basis()) {
    const Index p = row.leading();
    if (p == nvars) return std::nullopt;
    Rational b = row.get(nvars);
    if (b != 0) x.axpy(b, SparseVec::unit(p));
  }
  return x;
}

/// Complement P of U inside W with W = U ⊕ P and every operator preserving P.
///
/// Solves for a projection E: W -> U that is the identity on U and commutes
/// with every operator; P = ker E. Throws NoComplement when no such projection
/// exists (W not completely reducible relative to U for the given operators).
inline Subspace invariant_complement(const Subspace& w, std::span<const LinearMap> action, const Subspace& u) {
  const Index n = w.ambient_dim();
  if (u.ambient_dim() != n) throw Error(ErrorKind::ShapeMismatch, "invariant_complement: ambient mismatch");
  if (!w.contains(u)) throw Error(ErrorKind::InvalidArgument, "invariant_complement: U is not inside W");
  for (const auto& a : action)
    if (a.dim_in() != n || a.dim_out() != n) throw Error(ErrorKind::ShapeMismatch, "operator shape");

  const Index m = w.rank();
  const Index k = u.rank();
  BasisCoordinates wc(w.basis(), n);
  BasisCoordinates uc(u.basis(), n);
  auto var = [k](Index i, Index j) { return i * k + j; };

  std::vector<SparseVec> rows;
  std::vector<Rational> rhs;
  // E(u_j) = u_j
  for (Index j = 0; j < k; ++j) {
    SparseVec cw = wc.coords(u.basis()[j]);
    for (Index jj = 0; jj < k; ++jj) {
      SparseVec eq;
      for (const auto& [i, c] : cw) eq.axpy(c, SparseVec::unit(var(i, jj)));
      rows.push_back(std::move(eq));
      rhs.emplace_back(j == jj ? 1 : 0);
    }
  }
  // E(a w_i) = a E(w_i)
  for (const auto& a : action) {
    std::vector<SparseVec> au(k);
    for (Index j = 0; j < k; ++j) {
      auto c = uc.try_coords(a.apply(u.basis()[j]));
      if (!c) throw Error(ErrorKind::InvalidArgument, "invariant_complement: U is not closed under the action");
      au[j] = std::move(*c);
    }
    for (Index i = 0; i < m; ++i) {
      auto d = wc.try_coords(a.apply(w.basis()[i]));
      if (!d) throw Error(ErrorKind::InvalidArgument, "invariant_complement: W is not closed under the action");
      for (Index jj = 0; jj < k; ++jj) {
        SparseVec eq;
        for (const auto& [l, c] : *d) eq.axpy(c, SparseVec::unit(var(l, jj)));
        for (Index j = 0; j < k; ++j) {
          Rational coef = au[j].get(jj);
          if (coef != 0) eq.axpy(-coef, SparseVec::unit(var(i, j)));
        }
        rows.push_back(std::move(eq));
        rhs.emplace_back(0);
      }
    }
  }
  auto sol = solve_affine(rows, rhs, m * k);
  if (!sol) throw Error(ErrorKind::NoComplement, "no action-commuting projection onto U exists");

  std::vector<SparseVec> e_rows(m);
  for (const auto& [idx, c] : *sol) e_rows[idx / k].axpy(c, SparseVec::unit(idx % k));
  Subspace ker_w = kernel(e_rows, k);
  std::vector<SparseVec> p;
  p.reserve(ker_w.rank());
  for (const auto& x : ker_w.basis()) p.push_back(wc.combine(x));
  return Subspace::span(p, n);
}

inline Subspace invariant_complement(const Subspace& w, const std::vector<LinearMap>& action, const Subspace& u) {
  return invariant_complement(w, std::span<const LinearMap>(action), u);
}

}  // namespace rootgrade
