#include <gtest/gtest.h>

#include "../support/snf_oracle.hpp"
#include "support.hpp"

using namespace lcah;
using namespace lcah::test;

namespace {

FgAbMorphism fmor(const FgAbGroup &s, const FgAbGroup &t,
                  const std::vector<std::vector<Int>> &rows) {
  return FgAbMorphism(s, t, imat(rows, s.generators()));
}

TEST(SmithTest, FrozenExamples) {
  SmithForm id = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(id.D, IntMatrix::identity(3));
  SmithForm f = smith_normal_form(imat({{2, 4}, {6, 8}}));
  EXPECT_EQ(f.D, imat({{2, 0}, {0, 4}}));
  EXPECT_EQ(f.U * imat({{2, 4}, {6, 8}}) * f.V, f.D);
  EXPECT_EQ(smith_normal_form(imat({{0}})).D, imat({{0}}));
}

TEST(SmithTest, AgreesWithDeterminantalDivisors) {
  IntMatrix m = imat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  SmithForm f = smith_normal_form(m);
  std::vector<Int> expected = oracle_support::invariant_factors(m);
  ASSERT_EQ(expected, (std::vector<Int>{2, 6, 12}));
  for (std::size_t i = 0; i < expected.size(); ++i)
    EXPECT_EQ(abs(f.D(i, i)), expected[i]);
}

TEST(FgKernelTest, FrozenExamples) {
  FgAbGroup z(1), z2(2), z5(0, {Int(5)});
  FgKernel k1 = fg_kernel(fmor(z, z, {{5}}));
  EXPECT_TRUE(k1.group.is_trivial());
  FgKernel k2 = fg_kernel(fmor(z, z5, {{2}}));
  EXPECT_EQ(k2.group, z);
  EXPECT_EQ(k2.embedding.matrix(), imat({{5}}));
  FgKernel k3 = fg_kernel(FgAbMorphism::zero(z2, z));
  EXPECT_EQ(k3.group, z2);
}

TEST(FgCokernelTest, FrozenExamples) {
  FgAbGroup z(1);
  EXPECT_EQ(fg_cokernel(fmor(z, z, {{5}})).group, FgAbGroup(0, {Int(5)}));
  EXPECT_EQ(fg_cokernel(fmor(z, FgAbGroup(2), {{2}, {0}})).group, FgAbGroup(1, {Int(2)}));
  FgCokernel c = fg_cokernel(fmor(FgAbGroup(0, {Int(2)}), FgAbGroup(0, {Int(4)}), {{2}}));
  EXPECT_EQ(c.group, FgAbGroup(0, {Int(2)}));
}

TEST(FgIsomorphismTest, ComparesInvariantFactors) {
  EXPECT_FALSE(fg_is_isomorphic(canonicalize_orders({2, 4}).group, FgAbGroup(0, {Int(8)})));
  EXPECT_TRUE(fg_is_isomorphic(FgAbGroup(0, {Int(6)}), canonicalize_orders({2, 3}).group));
  EXPECT_TRUE(fg_is_isomorphic(FgAbGroup(1), FgAbGroup(1)));
  EXPECT_EQ(canonicalize_orders({4, 6}).group, FgAbGroup(0, {Int(2), Int(12)}));
}

TEST(FgMorphismTest, ValidatesWellDefinedness) {
  FgAbGroup z3(0, {Int(3)}), z4(0, {Int(4)});
  EXPECT_THROW(fmor(z3, z4, {{1}}), Error);
  EXPECT_NO_THROW(fmor(z4, FgAbGroup(0, {Int(2)}), {{1}}));
}

} // namespace
