#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rootgrade/homology.hpp"

using namespace rootgrade;

struct Frozen {
  const char* name;
  Index bxb, k, bb, hf;
};

// dims at ℓ = 4; produced by oracle::homology and frozen here
static const Frozen kFrozen[] = {
    {"a-matrix2", 16, 13, 3, 0},         {"b-spin1", 9, 8, 1, 0},
    {"bc-exchange", 16, 15, 1, 0},       {"bc-exterior2", 16, 15, 1, 1},
    {"bc-square-zero3", 16, 13, 3, 3},   {"bc-symplectic-rank1", 9, 6, 3, 0},
    {"c-transpose2", 16, 15, 1, 0},      {"d-dual-numbers", 4, 4, 0, 0},
};

TEST(Homology, DimensionsMatchOracle) {
  for (const auto& f : kFrozen) {
    CoordinateQuadruple q = catalog(f.name);
    oracle::Homology o = oracle::homology(q, 4);
    EXPECT_EQ(o.dim_k, f.k) << f.name;
    EXPECT_EQ(o.dim_hf, f.hf) << f.name;
    BBSpace bb(BAlgebra(q), 4);
    EXPECT_EQ(bb.tensor_dim(), f.bxb) << f.name;
    EXPECT_EQ(bb.relations().rank(), f.k) << f.name;
    EXPECT_EQ(bb.dim(), f.bb) << f.name;
    EXPECT_EQ(bb.compute_hf().rank(), f.hf) << f.name;
  }
}

TEST(Homology, LieStructureAndCentrality) {
  for (const auto& name : catalog_names()) {
    BBSpace bb(BAlgebra(catalog(name)), 4);
    EXPECT_TRUE(bb.check_relations_invariant().passed) << name;
    EXPECT_TRUE(bb.check_relations_in_kernel().passed) << name;
    EXPECT_TRUE(check_antisymmetry(bb.table()).passed) << name;
    EXPECT_TRUE(check_jacobi(bb.table()).passed) << name;
    EXPECT_TRUE(bb.check_hf_central().passed) << name;
  }
}

TEST(Homology, TypeDHasEmptyBracketSpace) {
  BBSpace bb(BAlgebra(catalog("d-dual-numbers")), 4);
  EXPECT_EQ(bb.dim(), 0u);
  EXPECT_EQ(bb.compute_hf().rank(), bb.dim());
}

TEST(Uniform, ZeroIsAlwaysUniform) {
  for (const auto& name : catalog_names()) {
    BBSpace bb(BAlgebra(catalog(name)), 4);
    EXPECT_TRUE(bb.check_uniform(Subspace(bb.dim())).uniform) << name;
  }
}

TEST(Uniform, ExteriorHFIsRejectedWithWitness) {
  BBSpace bb(BAlgebra(catalog("bc-exterior2")), 4);
  UniformResult u = bb.check_uniform(bb.compute_hf());
  EXPECT_FALSE(u.uniform);
  ASSERT_TRUE(u.witness.has_value());
  EXPECT_FALSE(u.image.empty());
  EXPECT_THROW(quotient_dd(bb, bb.compute_hf()), Error);
}

TEST(Uniform, OutsideHFThrows) {
  BBSpace bb(BAlgebra(catalog("bc-symplectic-rank1")), 4);
  try {
    bb.check_uniform(Subspace::full(bb.dim()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInHF);
  }
}

TEST(Quotient, DimensionDrops) {
  BBSpace bb(BAlgebra(catalog("bc-square-zero3")), 4);
  Subspace hf = bb.compute_hf();
  DDQuotient d = quotient_dd(bb, hf);
  EXPECT_EQ(d.dim(), bb.dim() - hf.rank());
  Subspace one = span(std::vector<SparseVec>{hf.basis()[0]}, bb.dim());
  EXPECT_EQ(quotient_dd(bb, one).dim(), 2u);
}
