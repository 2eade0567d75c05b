#include <gtest/gtest.h>

#include <cmath>

#include "../support/corpus.hpp"

using namespace lcah;
using namespace lcah::corpus;

namespace {

constexpr std::uint64_t kSeed = 20240611;

class PropertyTest : public ::testing::Test {
protected:
  Symbols s;
  RandomSource rng{kSeed, &s.table};
};

TEST_F(PropertyTest, LinearCombineIsAssociativeAndCanonical) {
  for (int i = 0; i < 300; ++i) {
    Scalar x = rng.symbolic(4, 5), y = rng.symbolic(4, 5), z = rng.symbolic(4, 5);
    Rat p = rng.rational(3, 4), r = rng.rational(3, 4);
    Scalar left = linear_combine({{Rat(1), linear_combine({{p, x}, {r, y}})}, {Rat(1), z}});
    Scalar right = linear_combine({{p, x}, {Rat(1), linear_combine({{r, y}, {Rat(1), z}})}});
    EXPECT_EQ(left, right);
    for (const auto &[m, c] : left.terms())
      EXPECT_NE(c, 0);
  }
}

TEST_F(PropertyTest, ShadowIsLinear) {
  for (int i = 0; i < 300; ++i) {
    Scalar x = rng.symbolic(4, 5), y = rng.symbolic(4, 5);
    Rat p = rng.rational(5, 7);
    double lhs = shadow_eval(linear_combine({{p, x}, {Rat(1), y}}), s.table);
    double rhs = p.get_d() * shadow_eval(x, s.table) + shadow_eval(y, s.table);
    EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_F(PropertyTest, CircleReduceIsIdempotentWithRationalPartInUnitInterval) {
  for (int i = 0; i < 300; ++i) {
    Scalar x = rng.symbolic(4, 5);
    Scalar r = circle_reduce(x).value();
    EXPECT_EQ(circle_reduce(r).value(), r);
    EXPECT_GE(r.rational_part(), 0);
    EXPECT_LT(r.rational_part(), 1);
    EXPECT_TRUE((x - r).is_integer());
  }
}

TEST_F(PropertyTest, SmithFormIsUnimodularDiagonalChain) {
  for (int i = 0; i < 200; ++i) {
    IntMatrix m = rng.int_matrix(rng.uniform(1, 6), rng.uniform(1, 6), 20);
    SmithForm f = smith_normal_form(m);
    EXPECT_EQ(f.U * m * f.V, f.D);
    EXPECT_EQ(abs(determinant(f.U)), 1);
    EXPECT_EQ(abs(determinant(f.V)), 1);
    for (std::size_t k = 0; k + 1 < std::min(m.rows(), m.cols()); ++k)
      if (f.D(k + 1, k + 1) != 0)
        EXPECT_EQ(f.D(k + 1, k + 1) % f.D(k, k), 0);
  }
}

TEST_F(PropertyTest, RankNullityOnFreeGroups) {
  for (int i = 0; i < 200; ++i) {
    std::size_t n = rng.uniform(1, 5), m = rng.uniform(1, 5);
    FgAbMorphism f(FgAbGroup(n), FgAbGroup(m), rng.int_matrix(m, n, 6));
    std::size_t image_rank = smith_normal_form(f.matrix()).rank;
    EXPECT_EQ(fg_kernel(f).group.rank() + image_rank, n);
  }
}

TEST_F(PropertyTest, DualityIsAnInvolutionAndExchangesKernelAndCokernel) {
  RandomBounds b;
  for (int i = 0; i < 150; ++i) {
    ElcaGroup g = rng.group(b), h = rng.group(b);
    ElcaMorphism f = rng.morphism(g, h, b);
    EXPECT_EQ(pontryagin_dual(pontryagin_dual(g)), g);
    EXPECT_EQ(pontryagin_dual(pontryagin_dual(f)), f);
    EXPECT_EQ(cokernel(f).group, pontryagin_dual(kernel(pontryagin_dual(f)).group));
  }
}

TEST_F(PropertyTest, AdmissibleExactlyWhenImageFactorizationValidates) {
  RandomBounds b;
  for (int i = 0; i < 200; ++i) {
    ElcaMorphism f = rng.morphism(rng.group(b), rng.group(b), b);
    Factorization fac = image_factorization(f);
    EXPECT_EQ(classify_morphism(f).admissible, validate_factorization(f, fac));
    EXPECT_EQ(compose(fac.monic, fac.epic), f);
  }
}

// In a bicartesian square the top map is epic iff the bottom one is.
TEST_F(PropertyTest, CertificateSquaresTransferEpimorphisms) {
  int squares = 0;
  for (int i = 0; i < 100; ++i) {
    DcForm n = normalize_dc(ghost_object(rng));
    for (const CertificateStep &st : n.certificate.steps) {
      ASSERT_TRUE(is_bicartesian(st.square));
      EXPECT_EQ(classify_morphism(st.square.top()).epic,
                classify_morphism(st.square.bottom()).epic);
      ++squares;
    }
  }
  EXPECT_GT(squares, 0);
}

TEST_F(PropertyTest, NormalizeProducesValidatedDcFormAndIsIdempotent) {
  for (int i = 0; i < 100; ++i) {
    HeartObject o = ghost_object(rng);
    DcForm n = normalize_dc(o);
    EXPECT_TRUE(n.object.is_dc());
    EXPECT_NO_THROW(check_certificate(n.certificate, o, n.object));
    DcForm again = normalize_dc(n.object);
    EXPECT_EQ(again.object, n.object);
  }
}

// Vertical maps of a forward square have isomorphic kernels and cokernels;
// they are finitely generated discrete once both rows have discrete upper
// groups, and finite once both rows are d-c.
TEST_F(PropertyTest, ForwardSquaresHaveMatchingVerticalDefects) {
  int forward = 0, discrete_rows = 0;
  for (int i = 0; i < 100; ++i) {
    DcForm n = normalize_dc(ghost_object(rng));
    for (const CertificateStep &st : n.certificate.steps) {
      if (st.direction != StepDirection::Forward)
        continue;
      const SquareData &sq = st.square;
      EXPECT_EQ(kernel(sq.left()).group, kernel(sq.right()).group);
      EXPECT_EQ(cokernel(sq.left()).group, cokernel(sq.right()).group);
      ++forward;
      HeartObject top(sq.top()), bottom(sq.bottom());
      if (top.is_dcg() && bottom.is_dcg()) {
        EXPECT_TRUE(vertical_maps_match(sq, top.is_dc() && bottom.is_dc()));
        ++discrete_rows;
      }
    }
  }
  EXPECT_GT(forward, 0);
  EXPECT_GT(discrete_rows, 0);
}

// Outside the closed fragment the engine refuses instead of guessing.
TEST_F(PropertyTest, SymbolicRealEntriesAreRefusedCleanly) {
  int refused = 0;
  for (int i = 0; i < 300; ++i) {
    HeartObject o = decompose(heart_object(rng)).torsion;
    if (laurent_closed(o.differential()))
      continue;
    try {
      DcForm n = normalize_dc(o);
      check_certificate(n.certificate, o, n.object);
    } catch (const Error &e) {
      EXPECT_EQ(e.kind(), ErrorKind::OutsideFragment) << e.what();
      ++refused;
    }
  }
  EXPECT_GT(refused, 0);
}

TEST_F(PropertyTest, DecompositionIsStable) {
  for (int i = 0; i < 100; ++i) {
    HeartObject o = heart_object(rng);
    Decomposition d = decompose(o);
    EXPECT_TRUE(d.torsion.is_ghost());
    EXPECT_EQ(d.cotorsion, cokernel(o.differential()).group);
    Decomposition t = decompose(d.torsion);
    // A ghost is its own torsion part, up to the gluing isomorphism.
    EXPECT_TRUE(is_isomorphism(t.gluing));
    EXPECT_EQ(compose(t.gluing, t.torsion.differential()), d.torsion.differential());
    EXPECT_TRUE(t.cotorsion.is_trivial());
    ElcaGroup g = rng.group(RandomBounds{});
    Decomposition z = decompose(HeartObject::torsion_free(g));
    EXPECT_TRUE(z.torsion.lower().is_trivial());
    EXPECT_EQ(z.cotorsion, g);
  }
}

TEST_F(PropertyTest, HeartDualIsAnInvolutionOnDcGhosts) {
  for (int i = 0; i < 100; ++i) {
    HeartObject o = dc_ghost(rng);
    EXPECT_TRUE(heart_dual(o).is_ghost());
    EXPECT_EQ(heart_dual(heart_dual(o)), o);
  }
}

TEST_F(PropertyTest, WeakDualTwiceReturnsThePrecompactGroup) {
  for (int i = 0; i < 60; ++i) {
    PgaGroup p = precompact_pga(rng);
    PgaGroup w = weak_dual_dc(p);
    EXPECT_TRUE(classify_pga(w).precompact);
    PgaGroup back = weak_dual_dc(w);
    EXPECT_TRUE(fg_is_isomorphic(back.group(), p.group()));
    EXPECT_TRUE(is_lattice_isogeny(PgaMorphism(theta_inverse(theta(back)), back,
                                               FgAbMorphism::identity(back.group())))
                    .has_value());
  }
}

TEST_F(PropertyTest, ThetaOfExactSequenceIsExactLevelwise) {
  for (const PgaExactCase &c : exact_sequences(rng, s, 25)) {
    HeartMorphism i = theta(c.sequence.inclusion), p = theta(c.sequence.projection);
    EXPECT_TRUE(is_short_exact(i.upper, p.upper));
    EXPECT_TRUE(completion_is_exact(c.sequence));
  }
}

TEST_F(PropertyTest, DiscreteGroupsAreTheirOwnCompletion) {
  for (int i = 0; i < 60; ++i) {
    ElcaGroup d = discrete_group(rng, 2);
    PgaGroup p(d.discrete_part(), d, ElcaMorphism::identity(d));
    Completion c = completion(p);
    EXPECT_EQ(c.group, d);
    EXPECT_TRUE(is_isomorphism(c.dense_map));
  }
}

} // namespace
