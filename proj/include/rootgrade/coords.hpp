#pragma once

// Coordinate quadruples (a, *, C, f) and the shipped catalog.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rootgrade/error.hpp"
#include "rootgrade/linalg.hpp"

namespace rootgrade {

enum class Kind { A, B, C, D, BC };

inline std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::A: return "A";
    case Kind::B: return "B";
    case Kind::C: return "C";
    case Kind::D: return "D";
    case Kind::BC: return "BC";
  }
  return "?";
}

inline Kind parse_kind(std::string_view s) {
  if (s == "A") return Kind::A;
  if (s == "B") return Kind::B;
  if (s == "C") return Kind::C;
  if (s == "D") return Kind::D;
  if (s == "BC") return Kind::BC;
  throw Error(ErrorKind::ParseError, "unknown kind '" + std::string(s) + "'");
}

/// Unital algebra by structure constants: mul[i*dim + j] = e_i e_j.
struct FiniteAlgebra {
  Index dim = 0;
  SparseVec unit;
  std::vector<SparseVec> mul;
  std::optional<std::vector<SparseVec>> star;  // images of basis vectors; nullopt means identity

  const SparseVec& basis_mul(Index i, Index j) const { return mul[i * dim + j]; }

  SparseVec multiply(const SparseVec& x, const SparseVec& y) const {
    Accumulator acc(dim);
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) acc.axpy(a * b, mul[i * dim + j]);
    return acc.take();
  }

  SparseVec apply_star(const SparseVec& x) const {
    if (!star) return x;
    SparseVec r;
    for (const auto& [i, a] : x) r.axpy(a, (*star)[i]);
    return r;
  }

  bool star_is_identity() const {
    if (!star) return true;
    for (Index i = 0; i < dim; ++i)
      if (!((*star)[i] == SparseVec::unit(i))) return false;
    return true;
  }
};

/// a-module C with act[i*dim + k] = e_i · c_k (in C) and f[k*dim + l] = f(c_k, c_l) (in a).
struct ModuleC {
  Index dim = 0;
  std::vector<SparseVec> act;
  std::vector<SparseVec> f;
};

struct CoordinateQuadruple {
  Kind kind = Kind::BC;
  std::string name;
  FiniteAlgebra a;
  ModuleC c;

  Index a_dim() const noexcept { return a.dim; }
  Index c_dim() const noexcept { return c.dim; }

  SparseVec act(const SparseVec& x, const SparseVec& v) const {
    Accumulator acc(c.dim);
    for (const auto& [i, p] : x)
      for (const auto& [k, q] : v) acc.axpy(p * q, c.act[i * c.dim + k]);
    return acc.take();
  }

  SparseVec form(const SparseVec& u, const SparseVec& v) const {
    Accumulator acc(a.dim);
    for (const auto& [k, p] : u)
      for (const auto& [l, q] : v) acc.axpy(p * q, c.f[k * c.dim + l]);
    return acc.take();
  }
};

struct Violation {
  std::string axiom;
  std::vector<Index> witness;

  std::string str() const {
    std::string s = axiom + "(";
    for (Index i = 0; i < witness.size(); ++i) s += (i ? "," : "") + std::to_string(witness[i]);
    return s + ")";
  }
};

/// Throws ShapeMismatch / IndexOutOfRange on malformed tensors.
inline void check_shape(const CoordinateQuadruple& q) {
  const Index d = q.a.dim;
  const Index m = q.c.dim;
  auto fits = [](const SparseVec& v, Index dim, const std::string& what) {
    if (!v.empty() && v.max_index() >= dim)
      throw Error(ErrorKind::IndexOutOfRange, what + " has index " + std::to_string(v.max_index()));
  };
  if (d == 0) throw Error(ErrorKind::ShapeMismatch, "a must be nonzero");
  if (q.a.mul.size() != d * d) throw Error(ErrorKind::ShapeMismatch, "a.mul must have dim*dim entries");
  fits(q.a.unit, d, "a.unit");
  for (const auto& v : q.a.mul) fits(v, d, "a.mul");
  if (q.a.star) {
    if (q.a.star->size() != d) throw Error(ErrorKind::ShapeMismatch, "a.star must have dim rows");
    for (const auto& v : *q.a.star) fits(v, d, "a.star");
  }
  if (q.c.act.size() != d * m) throw Error(ErrorKind::ShapeMismatch, "C.act must have dim(a)*dim(C) entries");
  if (q.c.f.size() != m * m) throw Error(ErrorKind::ShapeMismatch, "C.f must have dim(C)^2 entries");
  for (const auto& v : q.c.act) fits(v, m, "C.act");
  for (const auto& v : q.c.f) fits(v, d, "C.f");
}

inline std::vector<Violation> validate_quadruple(const CoordinateQuadruple& q) {
  check_shape(q);
  std::vector<Violation> out;
  const auto& A = q.a;
  const Index d = A.dim;
  const Index m = q.c.dim;
  const Kind k = q.kind;
  auto e = [](Index i) { return SparseVec::unit(i); };

  for (Index i = 0; i < d; ++i) {
    if (!(A.multiply(A.unit, e(i)) == e(i))) out.push_back({"unit_left", {i}});
    if (!(A.multiply(e(i), A.unit) == e(i))) out.push_back({"unit_right", {i}});
  }
  if (k != Kind::B) {
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        for (Index l = 0; l < d; ++l)
          if (!(A.multiply(A.basis_mul(i, j), e(l)) == A.multiply(e(i), A.basis_mul(j, l))))
            out.push_back({"associativity", {i, j, l}});
  }
  if (k == Kind::B || k == Kind::D) {
    for (Index i = 0; i < d; ++i)
      for (Index j = i + 1; j < d; ++j)
        if (!(A.basis_mul(i, j) == A.basis_mul(j, i))) out.push_back({"commutativity", {i, j}});
  }
  for (Index i = 0; i < d; ++i)
    if (!(A.apply_star(A.apply_star(e(i))) == e(i))) out.push_back({"star_involution", {i}});
  // kind A carries the identity as a formal star, which is no antiautomorphism of a noncommutative a
  if (k != Kind::A) {
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        if (!(A.apply_star(A.basis_mul(i, j)) == A.multiply(A.apply_star(e(j)), A.apply_star(e(i)))))
          out.push_back({"star_antiautomorphism", {i, j}});
  }
  if ((k == Kind::A || k == Kind::D) && !A.star_is_identity()) {
    for (Index i = 0; i < d; ++i)
      if (!(A.apply_star(e(i)) == e(i))) out.push_back({"star_identity", {i}});
  }
  if (k != Kind::BC) {
    if (m != 0) out.push_back({"c_zero", {m}});
    return out;
  }
  for (Index c = 0; c < m; ++c)
    if (!(q.act(A.unit, e(c)) == e(c))) out.push_back({"module_unit", {c}});
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index c = 0; c < m; ++c)
        if (!(q.act(A.basis_mul(i, j), e(c)) == q.act(e(i), q.act(e(j), e(c)))))
          out.push_back({"module_associativity", {i, j, c}});
  for (Index c = 0; c < m; ++c)
    for (Index l = 0; l < m; ++l)
      if (!(A.apply_star(q.form(e(c), e(l))) == -q.form(e(l), e(c))))
        out.push_back({"f_skew_hermitian", {c, l}});
  for (Index i = 0; i < d; ++i)
    for (Index c = 0; c < m; ++c)
      for (Index l = 0; l < m; ++l) {
        bool left = q.form(q.act(e(i), e(c)), e(l)) == A.multiply(e(i), q.form(e(c), e(l)));
        bool right = q.form(e(c), q.act(e(i), e(l))) == A.multiply(q.form(e(c), e(l)), A.apply_star(e(i)));
        if (!left || !right) out.push_back({"f_sesquilinear", {i, c, l}});
      }
  return out;
}

/// Star eigenspaces: A (fixed) and B (negated), both in RREF.
struct ABSplit {
  Subspace A;
  Subspace B;
  Index a_dim() const { return A.rank(); }
  Index b_dim() const { return B.rank(); }
};

inline ABSplit split_ab(const FiniteAlgebra& alg) {
  for (Index i = 0; i < alg.dim; ++i)
    if (!(alg.apply_star(alg.apply_star(SparseVec::unit(i))) == SparseVec::unit(i)))
      throw Error(ErrorKind::StarNotInvolutive, "star^2 != id on basis vector " + std::to_string(i));
  std::vector<SparseVec> plus, minus;
  for (Index i = 0; i < alg.dim; ++i) {
    SparseVec x = SparseVec::unit(i);
    SparseVec s = alg.apply_star(x);
    plus.push_back(x + s);
    minus.push_back(x - s);
  }
  return {Subspace::span(plus, alg.dim), Subspace::span(minus, alg.dim)};
}

inline ABSplit split_ab(const CoordinateQuadruple& q) { return split_ab(q.a); }

namespace catalog_detail {

inline Rational r(long p, long d = 1) { return make_rational(p, d); }

inline FiniteAlgebra matrix2(bool transpose_star) {
  // basis E11, E12, E21, E22 at 2i+j
  FiniteAlgebra a;
  a.dim = 4;
  a.mul.assign(16, {});
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index l = 0; l < 2; ++l) a.mul[(2 * i + j) * 4 + (2 * j + l)] = SparseVec::unit(2 * i + l);
  a.unit = SparseVec{{0, 1}, {3, 1}};
  if (transpose_star) a.star = std::vector<SparseVec>{SparseVec::unit(0), SparseVec::unit(2), SparseVec::unit(1), SparseVec::unit(3)};
  return a;
}

/// F ⊕ R with e_0 the unit and the given products on the radical R.
inline FiniteAlgebra unit_plus(Index dim) {
  FiniteAlgebra a;
  a.dim = dim;
  a.mul.assign(dim * dim, {});
  for (Index i = 0; i < dim; ++i) {
    a.mul[i] = SparseVec::unit(i);
    a.mul[i * dim] = SparseVec::unit(i);
  }
  a.unit = SparseVec::unit(0);
  return a;
}

inline CoordinateQuadruple bc_symplectic_rank1() {
  CoordinateQuadruple q;
  q.kind = Kind::BC;
  q.name = "bc-symplectic-rank1";
  q.a = unit_plus(1);
  q.c.dim = 2;
  q.c.act = {SparseVec::unit(0), SparseVec::unit(1)};
  q.c.f = {{}, SparseVec::unit(0), SparseVec::unit(0, -1), {}};
  return q;
}

inline CoordinateQuadruple bc_exchange() {
  CoordinateQuadruple q;
  q.kind = Kind::BC;
  q.name = "bc-exchange";
  q.a.dim = 2;
  q.a.mul = {SparseVec::unit(0), {}, {}, SparseVec::unit(1)};
  q.a.unit = SparseVec{{0, 1}, {1, 1}};
  q.a.star = std::vector<SparseVec>{SparseVec::unit(1), SparseVec::unit(0)};
  q.c.dim = 2;
  q.c.act = {SparseVec::unit(0), {}, {}, SparseVec::unit(1)};
  // f(c, c') = c·(1,−1)·c'*
  q.c.f = {{}, SparseVec::unit(0), SparseVec::unit(1, -1), {}};
  return q;
}

inline CoordinateQuadruple d_dual_numbers() {
  CoordinateQuadruple q;
  q.kind = Kind::D;
  q.name = "d-dual-numbers";
  q.a = unit_plus(2);
  return q;
}

inline CoordinateQuadruple a_matrix2() {
  CoordinateQuadruple q;
  q.kind = Kind::A;
  q.name = "a-matrix2";
  q.a = matrix2(false);
  return q;
}

inline CoordinateQuadruple c_transpose2() {
  CoordinateQuadruple q;
  q.kind = Kind::C;
  q.name = "c-transpose2";
  q.a = matrix2(true);
  return q;
}

inline CoordinateQuadruple b_spin1() {
  // 1, b1, b2 with b_i b_j = δ_ij·1; star negates the b_i
  CoordinateQuadruple q;
  q.kind = Kind::B;
  q.name = "b-spin1";
  q.a = unit_plus(3);
  q.a.mul[1 * 3 + 1] = SparseVec::unit(0);
  q.a.mul[2 * 3 + 2] = SparseVec::unit(0);
  q.a.star = std::vector<SparseVec>{SparseVec::unit(0), SparseVec::unit(1, -1), SparseVec::unit(2, -1)};
  return q;
}

inline CoordinateQuadruple bc_exterior2() {
  // exterior algebra on x, y: basis 1, x, y, z = xy
  CoordinateQuadruple q;
  q.kind = Kind::BC;
  q.name = "bc-exterior2";
  q.a = unit_plus(4);
  q.a.mul[1 * 4 + 2] = SparseVec::unit(3);
  q.a.mul[2 * 4 + 1] = SparseVec::unit(3, -1);
  q.a.star = std::vector<SparseVec>{SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(2), SparseVec::unit(3, -1)};
  return q;
}

inline CoordinateQuadruple bc_square_zero3() {
  CoordinateQuadruple q;
  q.kind = Kind::BC;
  q.name = "bc-square-zero3";
  q.a = unit_plus(4);
  return q;
}

}  // namespace catalog_detail

inline std::vector<std::string> catalog_names() {
  return {"a-matrix2",   "b-spin1",          "bc-exchange",        "bc-exterior2",
          "bc-square-zero3", "bc-symplectic-rank1", "c-transpose2", "d-dual-numbers"};
}

inline CoordinateQuadruple catalog(std::string_view name) {
  using namespace catalog_detail;
  CoordinateQuadruple q;
  if (name == "bc-symplectic-rank1") q = bc_symplectic_rank1();
  else if (name == "bc-exchange") q = bc_exchange();
  else if (name == "d-dual-numbers") q = d_dual_numbers();
  else if (name == "a-matrix2") q = a_matrix2();
  else if (name == "c-transpose2") q = c_transpose2();
  else if (name == "b-spin1") q = b_spin1();
  else if (name == "bc-exterior2") q = bc_exterior2();
  else if (name == "bc-square-zero3") q = bc_square_zero3();
  else throw Error(ErrorKind::UnknownName, "no catalog quadruple named '" + std::string(name) + "'");
  auto v = validate_quadruple(q);
  if (!v.empty()) throw Error(ErrorKind::CertificateFailure, "catalog entry fails " + v.front().str());
  return q;
}

}  // namespace rootgrade
