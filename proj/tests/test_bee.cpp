#include <gtest/gtest.h>

#include "rootgrade/bee.hpp"

using namespace rootgrade;

namespace {

// d(uv) − d(u)v − u d(v) over all basis triples; returns the number of failures.
std::size_t derivation_failures(const BAlgebra& b, Index ell) {
  std::size_t bad = 0;
  const Index n = b.dim();
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) {
      LinearMap d = b.derivation(SparseVec::unit(p), SparseVec::unit(q), ell);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          SparseVec u = SparseVec::unit(i), v = SparseVec::unit(j);
          SparseVec lhs = d.apply(b.mul(u, v));
          SparseVec rhs = b.mul(d.apply(u), v) + b.mul(u, d.apply(v));
          if (!(lhs == rhs)) ++bad;
        }
    }
  return bad;
}

}  // namespace

TEST(Bee, DerivationLawAcrossCatalog) {
  for (const auto& name : catalog_names())
    for (Index ell : {1u, 4u}) EXPECT_EQ(derivation_failures(BAlgebra(catalog(name)), ell), 0u) << name << " ell=" << ell;
}

TEST(Bee, ProductOnAandC) {
  BAlgebra b(catalog("bc-exchange"));
  // (1,0)·c0 = c0, (0,1)·c0 = 0
  EXPECT_EQ(b.mul(SparseVec::unit(0), b.from_c(SparseVec::unit(0))), b.from_c(SparseVec::unit(0)));
  EXPECT_TRUE(b.mul(SparseVec::unit(1), b.from_c(SparseVec::unit(0))).empty());
}

TEST(Bee, TypeDDerivationsVanish) {
  BAlgebra b(catalog("d-dual-numbers"));
  for (Index p = 0; p < b.dim(); ++p)
    for (Index q = 0; q < b.dim(); ++q) {
      LinearMap d = b.derivation(SparseVec::unit(p), SparseVec::unit(q), 4);
      for (Index i = 0; i < b.dim(); ++i) EXPECT_TRUE(d.column(i).empty());
    }
}

TEST(Bee, DiamondHeartOnlyForBC) {
  BAlgebra bc(catalog("bc-symplectic-rank1"));
  SparseVec c0 = SparseVec::unit(0), c1 = SparseVec::unit(1);
  auto [dia, heart] = bc.diamond_heart(c0, c1);
  EXPECT_EQ(dia + heart, catalog("bc-symplectic-rank1").form(c0, c1));
  BAlgebra d(catalog("d-dual-numbers"));
  EXPECT_THROW(d.diamond_heart(SparseVec{}, SparseVec{}), Error);
}

TEST(Bee, SplitPartsRecombine) {
  BAlgebra b(catalog("bc-exchange"));
  SparseVec x{{0, 3}, {1, 1}};
  auto [plus, minus] = b.split_parts(x);
  EXPECT_EQ(plus + minus, x);
  EXPECT_EQ(b.astar(plus), plus);
  EXPECT_EQ(b.astar(minus), -minus);
}

TEST(Bee, BetaStarOfPureAlgebraPairs) {
  // a ⊗ a' with a commutative and star = id gives β* = [a, a'] = 0
  BAlgebra b(catalog("bc-square-zero3"));
  for (Index i = 0; i < b.dim(); ++i)
    for (Index j = 0; j < b.dim(); ++j) EXPECT_TRUE(b.beta_star(SparseVec::unit(i), SparseVec::unit(j)).bstar.empty());
}
