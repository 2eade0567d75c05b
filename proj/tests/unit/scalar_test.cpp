#include <gtest/gtest.h>

#include "support.hpp"

using namespace lcah;
using namespace lcah::test;

namespace {

class ScalarTest : public ::testing::Test {
protected:
  Symbols s;
};

TEST_F(ScalarTest, LinearCombineCancelsAndMerges) {
  EXPECT_EQ(linear_combine({{Rat(1), s.a}, {Rat(1), s.a}}), q(2) * s.a);
  EXPECT_TRUE(linear_combine({{Rat(2), q(1, 3)}, {Rat(-1), q(2, 3)}}).is_zero());
  Scalar r = linear_combine({{Rat(3), s.a + q(1, 2)}, {Rat(-3), s.a}});
  EXPECT_EQ(r, q(3, 2));
  EXPECT_TRUE(r.is_rational());
}

TEST_F(ScalarTest, CircleReducePicksRepresentativeInUnitInterval) {
  EXPECT_EQ(circle_reduce(q(7, 3)).value(), q(1, 3));
  EXPECT_EQ(circle_reduce(s.a + q(5, 2)).value(), s.a + q(1, 2));
  EXPECT_EQ(circle_reduce(q(-1, 4)).value(), q(3, 4));
  EXPECT_TRUE(circle_reduce(q(3)).is_zero());
}

TEST_F(ScalarTest, ShadowSubstitutesDeclaredValues) {
  EXPECT_DOUBLE_EQ(shadow_eval(q(1, 2), s.table), 0.5);
  EXPECT_NEAR(shadow_eval(s.a, s.table), 1.41421356, 1e-8);
  EXPECT_NEAR(shadow_eval(q(2) * s.a + q(1, 2), s.table), 3.32842712, 1e-8);
}

TEST_F(ScalarTest, LaurentInverseDividesExactly) {
  Scalar inv = Scalar::symbol(s.table, 1, -1);
  EXPECT_EQ(s.a * inv, q(1));
  EXPECT_EQ((q(2) * s.a).divide(s.a), q(2));
  EXPECT_FALSE((s.a + q(1)).try_divide(s.a + s.b).has_value());
}

TEST_F(ScalarTest, RendersMonomialsDeterministically) {
  EXPECT_EQ((q(2) * s.a + q(1, 2)).to_string(s.table), "2*a + 1/2");
  Scalar m = s.a * s.b * s.b;
  EXPECT_EQ(monomial_key(m.terms()[0].first, s.table), "a*b^2");
  EXPECT_EQ(parse_monomial_key("a*b^2", s.table), m.terms()[0].first);
  EXPECT_EQ(monomial_key(Monomial{}, s.table), "0");
}

TEST_F(ScalarTest, MissingShadowIsReported) {
  SymbolTable t;
  t.declare("c");
  try {
    shadow_eval(Scalar::symbol(t, 1), t);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingShadow);
  }
}

} // namespace
