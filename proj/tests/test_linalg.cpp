#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rootgrade/symplectic.hpp"

using namespace rootgrade;

namespace {

SparseVec vec(std::initializer_list<long> xs) {
  std::vector<Rational> d;
  for (long x : xs) d.emplace_back(x);
  return SparseVec::from_dense(d);
}

}  // namespace

TEST(SparseVec, ArithmeticAndPrinting) {
  SparseVec v = vec({1, 0, -2});
  EXPECT_EQ(v.str(), "1*0 + -2*2");
  EXPECT_EQ((v - v).str(), "0");
  EXPECT_EQ(v.dot(vec({3, 5, 1})), 1);
  EXPECT_EQ(v.shifted(2).get(4), -2);
  EXPECT_EQ(v.slice(1, 3).get(1), -2);
}

TEST(Subspace, SpanRankAndMembership) {
  Subspace s = span(std::vector<SparseVec>{vec({1, 1, 0}), vec({2, 2, 0}), vec({0, 1, 1})}, 3);
  EXPECT_EQ(s.rank(), 2u);
  EXPECT_TRUE(s.contains(vec({1, 2, 1})));
  EXPECT_FALSE(s.contains(vec({0, 0, 1})));
  EXPECT_EQ(s.free_columns().size(), 1u);
}

TEST(Subspace, KernelOfRankOneMap) {
  // columns e0 -> (1,2), e1 -> (2,4), e2 -> 0
  Subspace k = kernel(std::vector<SparseVec>{vec({1, 2}), vec({2, 4}), SparseVec{}}, 2);
  EXPECT_EQ(k.rank(), 2u);
  EXPECT_TRUE(k.contains(vec({2, -1, 0})));
  EXPECT_TRUE(k.contains(vec({0, 0, 1})));
}

TEST(Subspace, SumAndIntersection) {
  Subspace a = span(std::vector<SparseVec>{vec({1, 0, 0}), vec({0, 1, 0})}, 3);
  Subspace b = span(std::vector<SparseVec>{vec({0, 1, 0}), vec({0, 0, 1})}, 3);
  EXPECT_EQ(sum(a, b).rank(), 3u);
  Subspace i = intersect(a, b);
  EXPECT_EQ(i.rank(), 1u);
  EXPECT_TRUE(i.contains(vec({0, 1, 0})));
}

TEST(Subspace, RandomMatricesAgreeWithDenseOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-2, 2), coin(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 2 + trial % 5, cols = 3 + trial % 4;
    oracle::Matrix m(rows, oracle::Row(cols));
    std::vector<SparseVec> sparse;
    for (auto& r : m) {
      for (auto& x : r) x = coin(rng) ? 0 : entry(rng);
      sparse.push_back(SparseVec::from_dense(r));
    }
    EXPECT_EQ(span(sparse, cols).rank(), oracle::rank(m));
    // treat the rows as columns of a map F^rows -> F^cols
    EXPECT_EQ(kernel(sparse, cols).rank(), rows - oracle::rank(m));
  }
}

TEST(Subspace, QuotientCoordinatesUseFreeColumns) {
  Subspace k = span(std::vector<SparseVec>{vec({1, -1, 0})}, 3);
  SparseVec a = k.quotient_coords(vec({1, 0, 0}));
  SparseVec b = k.quotient_coords(vec({0, 1, 0}));
  EXPECT_EQ(a, b);
  EXPECT_EQ(k.free_columns().size(), 2u);
}

TEST(BasisCoordinates, CoordsAndNotInSpan) {
  BasisCoordinates bc({vec({1, 1, 0}), vec({0, 1, 1})}, 3);
  SparseVec c = bc.coords(vec({1, 3, 2}));
  EXPECT_EQ(c.get(0), 1);
  EXPECT_EQ(c.get(1), 2);
  EXPECT_EQ(bc.combine(c), vec({1, 3, 2}));
  EXPECT_THROW(bc.coords(vec({0, 0, 1})), Error);
}

TEST(LinearMap, ComposeAndSolve) {
  LinearMap m(2, {vec({1, 1}), vec({0, 1})});
  LinearMap sq = m.compose(m);
  EXPECT_EQ(sq.apply(vec({1, 0})), vec({1, 2}));
  auto x = solve_affine({vec({1, 1}), vec({0, 1})}, {Rational(3), Rational(1)}, 2);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, vec({2, 1}));
  EXPECT_FALSE(solve_affine({vec({1, 1}), vec({2, 2})}, {Rational(1), Rational(3)}, 2).has_value());
}

TEST(InvariantComplement, IdentityLineComplementsSpInsideGlPlusScalars) {
  IndexData idx(2, 2);
  const Index V = idx.vdim(), dim = V * V;
  auto g = build_g(idx);
  std::vector<LinearMap> action;
  for (const auto& x : g) {
    std::vector<SparseVec> cols(dim);
    for (Index m = 0; m < dim; ++m) cols[m] = x.op.comm(SparseOp(V, SparseVec::unit(m))).flat();
    action.emplace_back(dim, std::move(cols));
  }
  Subspace u = span(flat_ops(g), dim);
  std::vector<SparseVec> wv = flat_ops(g);
  wv.push_back(SparseOp::identity(V).flat());
  Subspace w = span(wv, dim);
  Subspace p = invariant_complement(w, action, u);
  EXPECT_EQ(p.rank(), 1u);
  EXPECT_TRUE(p.contains(SparseOp::identity(V).flat()));
}

TEST(InvariantComplement, NilpotentActionHasNone) {
  LinearMap nil(2, {SparseVec{}, vec({1, 0})});
  Subspace u = span(std::vector<SparseVec>{vec({1, 0})}, 2);
  try {
    invariant_complement(Subspace::full(2), std::vector<LinearMap>{nil}, u);
    FAIL() << "expected NoComplement";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoComplement);
  }
}
