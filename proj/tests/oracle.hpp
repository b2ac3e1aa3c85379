#pragma once

// Dense reference computations used to cross-check the library. Deliberately
// naive: plain row reduction over mpq_class on std::vector matrices, with no
// use of SparseVec, Subspace or the generator code under test.

#include <vector>

#include <gmpxx.h>

#include "rootgrade/bee.hpp"

namespace oracle {

using Q = mpq_class;
using Row = std::vector<Q>;
using Matrix = std::vector<Row>;

inline std::size_t rank(Matrix m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Q f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

inline std::size_t nullity(const Matrix& rows, std::size_t cols) { return cols - (rows.empty() ? 0 : rank(rows)); }

inline Row dense(const rootgrade::SparseVec& v, std::size_t dim) {
  Row r(dim);
  for (const auto& [i, c] : v) r.at(i) = c;
  return r;
}

/// ω(v_j, v_{j+n}) = 2 = −ω(v_{j+n}, v_j).
inline Matrix form_matrix(std::size_t n) {
  Matrix w(2 * n, Row(2 * n));
  for (std::size_t j = 0; j < n; ++j) {
    w[j][j + n] = 2;
    w[j + n][j] = -2;
  }
  return w;
}

/// Linear conditions on X (flattened j*2n+k) for ω(Xu,w) + sign·ω(u,Xw) = 0, plus tr X = 0 if asked.
inline Matrix form_conditions(std::size_t n, int sign, bool traceless) {
  const std::size_t V = 2 * n;
  Matrix w = form_matrix(n), rows;
  // ω(Xe_a, e_b) = Σ_j X[j][a] w[j][b]
  for (std::size_t a = 0; a < V; ++a)
    for (std::size_t b = 0; b < V; ++b) {
      Row r(V * V);
      for (std::size_t j = 0; j < V; ++j) {
        r[j * V + a] += w[j][b];
        r[j * V + b] += sign * w[a][j];
      }
      rows.push_back(r);
    }
  if (traceless) {
    Row t(V * V);
    for (std::size_t j = 0; j < V; ++j) t[j * V + j] = 1;
    rows.push_back(t);
  }
  return rows;
}

inline std::size_t sp_dim(std::size_t n) { return nullity(form_conditions(n, 1, false), 4 * n * n); }
inline std::size_t s_dim(std::size_t n) { return nullity(form_conditions(n, -1, true), 4 * n * n); }

/// Relation space of b⊗b rebuilt densely from the raw structure tensors.
struct Homology {
  std::size_t db = 0, dim_k = 0, dim_bb = 0, dim_hf = 0;
};

inline Homology homology(const rootgrade::CoordinateQuadruple& q, std::size_t ell) {
  const std::size_t da = q.a.dim, dc = q.c.dim, db = da + dc;
  auto mul = [&](const Row& x, const Row& y) {
    Row z(da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j)
        if (x[i] != 0 && y[j] != 0)
          for (const auto& [k, c] : q.a.mul[i * da + j]) z[k] += x[i] * y[j] * c;
    return z;
  };
  auto star = [&](const Row& x) {
    if (!q.a.star) return x;
    Row z(da);
    for (std::size_t i = 0; i < da; ++i)
      for (const auto& [k, c] : (*q.a.star)[i]) z[k] += x[i] * c;
    return z;
  };
  auto act = [&](std::size_t i, std::size_t k) { return dense(q.c.act[i * dc + k], dc); };
  auto unit = [](std::size_t i, std::size_t d) {
    Row r(d);
    r[i] = 1;
    return r;
  };
  auto embed_a = [&](const Row& x) {
    Row r(db);
    for (std::size_t i = 0; i < da; ++i) r[i] = x[i];
    return r;
  };
  auto embed_c = [&](const Row& c) {
    Row r(db);
    for (std::size_t k = 0; k < dc; ++k) r[da + k] = c[k];
    return r;
  };
  auto tensor = [&](const Row& x, const Row& y) {
    Row t(db * db);
    for (std::size_t p = 0; p < db; ++p)
      if (x[p] != 0)
        for (std::size_t r = 0; r < db; ++r) t[p * db + r] += x[p] * y[r];
    return t;
  };

  Matrix gens;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k < dc; ++k) {
      gens.push_back(tensor(unit(i, db), unit(da + k, db)));
      gens.push_back(tensor(unit(da + k, db), unit(i, db)));
    }
  // fixed and skew points of the involution, as null spaces of (* ∓ 1)
  auto eigen = [&](int sign) {
    Matrix out;
    for (std::size_t i = 0; i < da; ++i) {
      Row e = unit(i, da), s = star(e);
      Row v(da);
      for (std::size_t k = 0; k < da; ++k) v[k] = e[k] + sign * s[k];
      out.push_back(v);
    }
    return out;  // (1 ± *) e_i spans the ±1 eigenspace
  };
  for (const auto& x : eigen(1))
    for (const auto& y : eigen(-1)) gens.push_back(tensor(embed_a(x), embed_a(y)));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      Row t = tensor(unit(i, db), unit(j, db));
      Row s = tensor(unit(j, db), unit(i, db));
      for (std::size_t m = 0; m < t.size(); ++m) t[m] += s[m];
      gens.push_back(t);
      for (std::size_t l = 0; l < da; ++l) {
        Row ei = unit(i, da), ej = unit(j, da), el = unit(l, da);
        Row a = tensor(embed_a(mul(ei, ej)), embed_a(el));
        Row b = tensor(embed_a(mul(el, ei)), embed_a(ej));
        Row c = tensor(embed_a(mul(ej, el)), embed_a(ei));
        for (std::size_t m = 0; m < a.size(); ++m) a[m] += b[m] + c[m];
        gens.push_back(a);
      }
    }
  for (std::size_t k = 0; k < dc; ++k)
    for (std::size_t l = 0; l < dc; ++l) {
      Row t = tensor(unit(da + k, db), unit(da + l, db));
      Row s = tensor(unit(da + l, db), unit(da + k, db));
      for (std::size_t m = 0; m < t.size(); ++m) t[m] -= s[m];
      gens.push_back(t);
      // f(c,c')⊗α + α*c'⊗c − αc⊗c'
      for (std::size_t i = 0; i < da; ++i) {
        Row f = dense(q.c.f[k * dc + l], da);
        Row g = tensor(embed_a(f), unit(i, db));
        Row st = star(unit(i, da));
        Row sc(dc);
        for (std::size_t j = 0; j < da; ++j)
          if (st[j] != 0) {
            Row v = act(j, l);
            for (std::size_t m = 0; m < dc; ++m) sc[m] += st[j] * v[m];
          }
        Row h = tensor(embed_c(sc), unit(da + k, db));
        Row ac = tensor(embed_c(act(i, k)), unit(da + l, db));
        for (std::size_t m = 0; m < g.size(); ++m) g[m] += h[m] - ac[m];
        gens.push_back(g);
      }
    }

  Homology h;
  h.db = db;
  h.dim_k = rank(gens);
  h.dim_bb = db * db - h.dim_k;
  // the derivation map b⊗b → End(b); HF = ker / K
  rootgrade::BAlgebra b(q);
  Matrix rows(db * db, Row(db * db));
  for (std::size_t p = 0; p < db; ++p)
    for (std::size_t r = 0; r < db; ++r) {
      auto d = b.derivation(rootgrade::SparseVec::unit(p), rootgrade::SparseVec::unit(r), ell);
      for (std::size_t col = 0; col < db; ++col)
        for (const auto& [k, c] : d.column(col)) rows[k * db + col][p * db + r] = c;
    }
  h.dim_hf = nullity(rows, db * db) - h.dim_k;
  return h;
}

}  // namespace oracle
