#pragma once

// b = a ⊕ C: product, ∘ and [,], ⋄ and ♡, derivations d_{x,y} and β*.
// Elements of b are SparseVecs with a occupying indices [0, dim a) and C the rest.

#include <utility>

#include "rootgrade/coords.hpp"
#include "rootgrade/linalg.hpp"

namespace rootgrade {

struct BetaStar {
  SparseVec bstar;  // in a
  SparseVec x_c;    // in C
  SparseVec y_c;
};

class BAlgebra {
 public:
  explicit BAlgebra(CoordinateQuadruple q)
      : q_(std::move(q)), split_(split_ab(q_)) {}

  const CoordinateQuadruple& quadruple() const noexcept { return q_; }
  const ABSplit& split() const noexcept { return split_; }
  Index a_dim() const noexcept { return q_.a.dim; }
  Index c_dim() const noexcept { return q_.c.dim; }
  Index dim() const noexcept { return q_.a.dim + q_.c.dim; }

  SparseVec a_part(const SparseVec& x) const { return x.slice(0, a_dim()); }
  SparseVec c_part(const SparseVec& x) const { return x.slice(a_dim(), dim()); }
  SparseVec join(const SparseVec& a, const SparseVec& c) const { return a + c.shifted(a_dim()); }
  SparseVec from_c(const SparseVec& c) const { return c.shifted(a_dim()); }

  SparseVec amul(const SparseVec& x, const SparseVec& y) const { return q_.a.multiply(x, y); }
  SparseVec astar(const SparseVec& x) const { return q_.a.apply_star(x); }
  SparseVec acomm(const SparseVec& x, const SparseVec& y) const { return amul(x, y) - amul(y, x); }
  SparseVec acirc(const SparseVec& x, const SparseVec& y) const { return amul(x, y) + amul(y, x); }

  /// (α1+c1)(α2+c2) = α1α2 + f(c1,c2) + α1·c2 + α2*·c1
  SparseVec mul(const SparseVec& x, const SparseVec& y) const {
    check(x);
    check(y);
    SparseVec a1 = a_part(x), c1 = c_part(x), a2 = a_part(y), c2 = c_part(y);
    SparseVec a = amul(a1, a2) + q_.form(c1, c2);
    SparseVec c = q_.act(a1, c2) + q_.act(astar(a2), c1);
    return join(a, c);
  }

  std::pair<SparseVec, SparseVec> circ_bracket(const SparseVec& x, const SparseVec& y) const {
    SparseVec xy = mul(x, y), yx = mul(y, x);
    return {xy + yx, xy - yx};
  }

  /// (c⋄c', c♡c') for c, c' in C.
  std::pair<SparseVec, SparseVec> diamond_heart(const SparseVec& c, const SparseVec& c2) const {
    if (q_.kind != Kind::BC) throw Error(ErrorKind::WrongKind, "⋄ and ♡ need a quadruple of kind BC");
    return {diamond(c, c2), heart(c, c2)};
  }

  SparseVec diamond(const SparseVec& c, const SparseVec& c2) const {
    return Rational(1, 2) * (q_.form(c, c2) - q_.form(c2, c));
  }
  SparseVec heart(const SparseVec& c, const SparseVec& c2) const {
    return Rational(1, 2) * (q_.form(c, c2) + q_.form(c2, c));
  }

  /// d_{x,y} as an endomorphism of b, for the given ℓ.
  LinearMap derivation(const SparseVec& x, const SparseVec& y, Index ell) const {
    check(x);
    check(y);
    if (ell == 0) throw Error(ErrorKind::InvalidArgument, "ell must be positive");
    const Index n = dim();
    LinearMap d(n, n);
    const SparseVec a1 = a_part(x), a2 = a_part(y);
    const SparseVec c1 = c_part(x), c2 = c_part(y);
    const Rational l(static_cast<long>(ell));
    switch (q_.kind) {
      case Kind::D:
        return d;
      case Kind::A: {
        SparseVec t = acomm(a1, a2);
        for (Index i = 0; i < a_dim(); ++i)
          d.set_column(i, (1 / (l + 1)) * acomm(t, SparseVec::unit(i)));
        return d;
      }
      case Kind::B: {
        for (Index i = 0; i < a_dim(); ++i) {
          SparseVec b = SparseVec::unit(i);
          d.set_column(i, amul(a2, amul(a1, b)) - amul(a1, amul(a2, b)));
        }
        return d;
      }
      case Kind::C:
      case Kind::BC: {
        SparseVec t = acomm(a1, a2) + acomm(astar(a1), astar(a2));
        SparseVec h = heart(c1, c2);
        const Rational s = 1 / (4 * l), sh = 1 / (2 * l);
        for (Index i = 0; i < a_dim(); ++i) {
          SparseVec b = SparseVec::unit(i);
          d.set_column(i, s * acomm(t, b) + sh * acomm(h, b));
        }
        for (Index k = 0; k < c_dim(); ++k) {
          SparseVec b = SparseVec::unit(k);
          SparseVec r = s * q_.act(t, b) + sh * q_.act(h, b);
          r.axpy(Rational(-1, 2), q_.act(q_.form(b, c2), c1) + q_.act(q_.form(b, c1), c2));
          d.set_column(a_dim() + k, from_c(r));
        }
        return d;
      }
    }
    return d;
  }

  /// β* = [a1,a2] + [b1,b2] − c1♡c2 with α_i = a_i + b_i the star split.
  BetaStar beta_star(const SparseVec& x, const SparseVec& y) const {
    check(x);
    check(y);
    auto [xa, xb] = split_parts(a_part(x));
    auto [ya, yb] = split_parts(a_part(y));
    SparseVec c1 = c_part(x), c2 = c_part(y);
    SparseVec r = acomm(xa, ya) + acomm(xb, yb) - heart(c1, c2);
    return {std::move(r), std::move(c1), std::move(c2)};
  }

  /// α ↦ ((α+α*)/2, (α−α*)/2)
  std::pair<SparseVec, SparseVec> split_parts(const SparseVec& alpha) const {
    SparseVec s = astar(alpha);
    return {Rational(1, 2) * (alpha + s), Rational(1, 2) * (alpha - s)};
  }

 private:
  void check(const SparseVec& x) const {
    if (!x.empty() && x.max_index() >= dim())
      throw Error(ErrorKind::ShapeMismatch, "element does not belong to b (dim " + std::to_string(dim()) + ")");
  }

  CoordinateQuadruple q_;
  ABSplit split_;
};

inline SparseVec mul_b(const BAlgebra& b, const SparseVec& x, const SparseVec& y) { return b.mul(x, y); }
inline std::pair<SparseVec, SparseVec> circ_bracket_b(const BAlgebra& b, const SparseVec& x, const SparseVec& y) {
  return b.circ_bracket(x, y);
}
inline LinearMap derivation(const BAlgebra& b, const SparseVec& x, const SparseVec& y, Index ell) {
  return b.derivation(x, y, ell);
}
inline BetaStar beta_star(const BAlgebra& b, const SparseVec& x, const SparseVec& y) { return b.beta_star(x, y); }

}  // namespace rootgrade
