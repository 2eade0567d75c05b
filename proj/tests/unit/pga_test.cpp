#include <gtest/gtest.h>

#include "lcah/pga.hpp"
#include "support.hpp"

using namespace lcah;
using namespace lcah::test;

namespace {

class PgaTest : public ::testing::Test {
protected:
  Symbols s;
  PgaGroup rotation() const {
    return PgaGroup(FgAbGroup(1), ElcaGroup::T(), mor(ElcaGroup::Z(), ElcaGroup::T(), {{s.a}}));
  }
  PgaGroup dense_in_line() const {
    return PgaGroup(FgAbGroup(2), ElcaGroup::R(),
                    mor(ElcaGroup::Z(2), ElcaGroup::R(), {{q(1), s.a}}));
  }
  PgaGroup lattice() const {
    return PgaGroup(FgAbGroup(1), ElcaGroup::R(), mor(ElcaGroup::Z(), ElcaGroup::R(), {{q(1)}}));
  }
};

TEST_F(PgaTest, Completions) {
  EXPECT_EQ(completion(rotation()).group, ElcaGroup::T());
  EXPECT_EQ(completion(lattice()).group, ElcaGroup::Z());
  EXPECT_EQ(completion(dense_in_line()).group, ElcaGroup::R());
}

TEST_F(PgaTest, Precompactness) {
  EXPECT_TRUE(classify_pga(rotation()).precompact);
  EXPECT_FALSE(classify_pga(lattice()).precompact);
  EXPECT_FALSE(classify_pga(dense_in_line()).precompact);
  EXPECT_TRUE(classify_pga(dense_in_line()).precompactly_generated);
}

TEST_F(PgaTest, ThetaOfRotation) {
  HeartObject t = theta(rotation());
  EXPECT_EQ(t, HeartObject(mor(ElcaGroup::Z(), ElcaGroup::T(), {{s.a}})));
  EXPECT_TRUE(t.is_dc());
  HeartObject line = theta(dense_in_line());
  EXPECT_TRUE(line.is_dcg());
  EXPECT_FALSE(line.is_dc());
}

TEST_F(PgaTest, ThetaOfFiniteGroupIsAcyclic) {
  FgAbGroup f(0, {Int(4)});
  PgaGroup p(f, ElcaGroup::discrete(f), ElcaMorphism::identity(ElcaGroup::discrete(f)));
  HeartObject t = theta(p);
  EXPECT_TRUE(t.is_ghost());
  EXPECT_TRUE(is_isomorphism(t.differential()));
}

TEST_F(PgaTest, ThetaInverse) {
  HeartObject x(mor(ElcaGroup::Z(), ElcaGroup::T(), {{s.a}}));
  EXPECT_EQ(theta_inverse(x), rotation());
  try {
    theta_inverse(HeartObject(ElcaMorphism::identity(ElcaGroup::T())));
    FAIL() << "expected UpperNotDiscrete";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::UpperNotDiscrete);
  }
  check_certificate(theta_round_trip(x), theta(theta_inverse(x)), x);
}

// [Z/5 -> T] has a group but is not recovered from it: T/(Z/5) survives.
TEST_F(PgaTest, RoundTripNeedsGhost) {
  HeartObject x(mor(ElcaGroup::finite({Int(5)}), ElcaGroup::T(), {{q(1, 5)}}));
  PgaGroup p = theta_inverse(x);
  EXPECT_EQ(p.group(), FgAbGroup(0, {Int(5)}));
  EXPECT_TRUE(completion(p).group == ElcaGroup::finite({Int(5)}));
  try {
    theta_round_trip(x);
    FAIL() << "expected NotGhost";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotGhost);
  }
}

TEST_F(PgaTest, ReductionModOneIsLatticeIsogeny) {
  PgaMorphism f(dense_in_line(), rotation(), FgAbMorphism(FgAbGroup(2), FgAbGroup(1),
                                                           imat({{0, 1}})));
  auto w = is_lattice_isogeny(f);
  ASSERT_TRUE(w.has_value());
  ASSERT_EQ(w->links.size(), 2u);
  EXPECT_EQ(w->links[0].kind, LinkKind::AdmissibleEpic);
  EXPECT_EQ(w->links[0].defect, FgAbGroup(1));
  EXPECT_TRUE(w->links[1].defect.is_trivial());
  check_witness(*w);
}

TEST_F(PgaTest, DenseInclusionIsNotStrict) {
  // The discrete integers mapped onto the rotation orbit: continuous, bijective,
  // but the coimage is discrete while the image is not.
  FgAbGroup z(1);
  PgaGroup discrete(z, ElcaGroup::Z(), ElcaMorphism::identity(ElcaGroup::Z()));
  PgaMorphism f(discrete, rotation(), FgAbMorphism::identity(z));
  EXPECT_FALSE(is_lattice_isogeny(f).has_value());
  StrictnessReport r = analyse_strictness(f);
  EXPECT_TRUE(r.kernel.is_trivial());
  EXPECT_TRUE(r.cokernel.is_trivial());
}

TEST_F(PgaTest, DiscontinuousMapIsRejected) {
  FgAbGroup z(1);
  PgaGroup discrete(z, ElcaGroup::Z(), ElcaMorphism::identity(ElcaGroup::Z()));
  EXPECT_THROW(PgaMorphism(rotation(), discrete, FgAbMorphism::identity(z)), Error);
}

TEST_F(PgaTest, IdentityIsTrivialIsogeny) {
  auto w = is_lattice_isogeny(identity_morphism(rotation()));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->links.size(), 1u);
  EXPECT_TRUE(w->links[0].defect.is_trivial());
}

TEST_F(PgaTest, RoundTrips) {
  check_witness(theta_inverse_round_trip(rotation()));
  check_witness(theta_inverse_round_trip(dense_in_line()));
}

TEST_F(PgaTest, WeakDual) {
  EXPECT_EQ(weak_dual_dc(rotation()), rotation());
  EXPECT_THROW(weak_dual_dc(dense_in_line()), Error);
  PgaGroup two(FgAbGroup(2), ElcaGroup::T(2),
               mor(ElcaGroup::Z(2), ElcaGroup::T(2), {{s.a, s.b}, {s.b, q(0)}}));
  PgaGroup d = weak_dual_dc(two);
  EXPECT_EQ(d.iota(), pontryagin_dual(two.iota()));
  EXPECT_EQ(weak_dual_dc(d), two);
}

TEST_F(PgaTest, CompletionOfLatticeExtension) {
  // Z ↪ (Z + aZ in R) ↠ aZ in T.
  FgAbGroup z1(1), z2(2);
  PgaGroup sub(z1, ElcaGroup::R(), mor(ElcaGroup::Z(), ElcaGroup::R(), {{q(1)}}));
  PgaMorphism inc(sub, dense_in_line(), FgAbMorphism(z1, z2, imat({{1}, {0}})));
  PgaMorphism proj(dense_in_line(), rotation(), FgAbMorphism(z2, z1, imat({{0, 1}})));
  EXPECT_TRUE(completion_is_exact({inc, proj}));
}

} // namespace
