#include <gtest/gtest.h>

#include "support.hpp"

using namespace lcah;
using namespace lcah::test;

namespace {

class ElcaTest : public ::testing::Test {
protected:
  Symbols s;
};

TEST_F(ElcaTest, GroupDualSwapsDiscreteAndCompactRanks) {
  ElcaGroup g(2, 3, 1, {Int(4)});
  EXPECT_EQ(g.dual(), ElcaGroup(2, 1, 3, {Int(4)}));
  EXPECT_EQ(ElcaGroup::T().dual(), ElcaGroup::Z());
  EXPECT_EQ(g.to_string(), "R^2 + Z^3 + T + Z/4");
}

TEST_F(ElcaTest, ComposeMultipliesBlocks) {
  auto za = mor(ElcaGroup::Z(), ElcaGroup::T(), {{s.a}});
  auto t2 = mor(ElcaGroup::T(), ElcaGroup::T(), {{q(2)}});
  EXPECT_EQ(compose(t2, za), mor(ElcaGroup::Z(), ElcaGroup::T(), {{q(2) * s.a}}));
  auto zr = mor(ElcaGroup::Z(), ElcaGroup::R(), {{q(2, 3)}});
  auto rt = mor(ElcaGroup::R(), ElcaGroup::T(), {{q(1, 2)}});
  EXPECT_EQ(compose(rt, zr), mor(ElcaGroup::Z(), ElcaGroup::T(), {{q(1, 3)}}));
}

TEST_F(ElcaTest, DualOfRotationIsItsTranspose) {
  auto za = mor(ElcaGroup::Z(), ElcaGroup::T(), {{s.a}});
  EXPECT_EQ(pontryagin_dual(za), za);
}

TEST_F(ElcaTest, KernelOfFiniteRotation) {
  auto f = mor(ElcaGroup::Z(), ElcaGroup::T(), {{q(2, 5)}});
  Subobject k = kernel(f);
  EXPECT_EQ(k.group, ElcaGroup::Z());
  EXPECT_EQ(k.embedding, mor(ElcaGroup::Z(), ElcaGroup::Z(), {{q(5)}}));
}

TEST_F(ElcaTest, KernelOfIrrationalRotationIsTrivial) {
  auto f = mor(ElcaGroup::Z(), ElcaGroup::T(), {{s.a}});
  EXPECT_TRUE(kernel(f).group.is_trivial());
}

TEST_F(ElcaTest, KernelOfMixedMapIsRankTwoLattice) {
  ElcaGroup src(1, 1, 0);
  auto f = mor(src, ElcaGroup::T(), {{q(1, 2), q(1, 3)}});
  Subobject k = kernel(f);
  EXPECT_EQ(k.group, ElcaGroup::Z(2));
  EXPECT_TRUE(compose(f, k.embedding).is_zero());
  // The image is the lattice {(x, n) : x/2 + n/3 ∈ Z} with basis (2,0), (-2/3,1);
  // the embedding's columns must be another basis of the same lattice.
  ScalarMatrix img = k.embedding.full();
  ASSERT_EQ(img.rows(), 2u);
  IntMatrix coords(2, 2);
  for (std::size_t j = 0; j < 2; ++j) {
    Rat x = img(0, j).to_rational(), n = img(1, j).to_rational();
    Rat c1 = (x + Rat(2, 3) * n) / 2;
    ASSERT_EQ(c1.get_den(), 1);
    ASSERT_EQ(n.get_den(), 1);
    coords(0, j) = c1.get_num();
    coords(1, j) = n.get_num();
  }
  Int det = determinant(coords);
  EXPECT_TRUE(det == 1 || det == -1) << det.get_str();
}

TEST_F(ElcaTest, ClosureOfImage) {
  auto dense = mor(ElcaGroup::Z(), ElcaGroup::T(), {{s.a}});
  EXPECT_EQ(closure_of_image(dense).group, ElcaGroup::T());
  auto third = mor(ElcaGroup::Z(), ElcaGroup::T(), {{q(1, 3)}});
  EXPECT_EQ(closure_of_image(third).group, ElcaGroup::finite({Int(3)}));
  auto two = mor(ElcaGroup::Z(), ElcaGroup::T(2), {{s.a}, {q(2) * s.a + q(1, 2)}});
  Subobject c = closure_of_image(two);
  EXPECT_EQ(c.group, ElcaGroup(0, 0, 1, {Int(2)}));
}

TEST_F(ElcaTest, CokernelExamples) {
  ElcaGroup RT(1, 0, 1);
  EXPECT_EQ(cokernel(mor(ElcaGroup::Z(), RT, {{q(1)}, {s.a}})).group, ElcaGroup::T(2));
  EXPECT_EQ(cokernel(mor(ElcaGroup::Z(), RT, {{q(0)}, {s.a}})).group, ElcaGroup::R());
  EXPECT_EQ(cokernel(mor(ElcaGroup::Z(), RT, {{q(0)}, {q(1, 5)}})).group, RT);
}

TEST_F(ElcaTest, Classification) {
  auto c1 = classify_morphism(mor(ElcaGroup::Z(), ElcaGroup::T(), {{s.a}}));
  EXPECT_TRUE(c1.monic);
  EXPECT_TRUE(c1.epic);
  EXPECT_FALSE(c1.admissible);
  auto c2 = classify_morphism(mor(ElcaGroup::Z(), ElcaGroup(1, 0, 1), {{q(1)}, {s.a}}));
  EXPECT_TRUE(c2.admissible_monic);
  auto t3 = mor(ElcaGroup::T(), ElcaGroup::T(), {{q(3)}});
  auto c3 = classify_morphism(t3);
  EXPECT_TRUE(c3.admissible_epic);
  EXPECT_FALSE(c3.monic);
  EXPECT_EQ(kernel(t3).group, ElcaGroup::finite({Int(3)}));
}

TEST_F(ElcaTest, PullbackOfMultiplications) {
  auto f = mor(ElcaGroup::Z(), ElcaGroup::Z(), {{q(5)}});
  auto g = mor(ElcaGroup::Z(), ElcaGroup::Z(), {{q(3)}});
  Pullback p = pullback(f, g);
  EXPECT_EQ(p.group, ElcaGroup::Z());
  EXPECT_EQ(compose(f, p.to_a), compose(g, p.to_b));
}

TEST_F(ElcaTest, Bicartesian) {
  auto id = ElcaMorphism::identity(ElcaGroup::Z());
  auto two = mor(ElcaGroup::Z(), ElcaGroup::Z(), {{q(2)}});
  EXPECT_TRUE(is_bicartesian(SquareData(two, two, id, id)));
  EXPECT_THROW(SquareData(two, id, id, id), Error);
}

} // namespace
