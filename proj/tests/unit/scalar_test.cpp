#include <gtest/gtest.h>

#include "intertwine/error.hpp"
#include "intertwine/scalar.hpp"
#include "oracles.hpp"

using intertwine::Scalar;

TEST(Scalar, ParsesRationals) {
  EXPECT_EQ(Scalar::parse("3/6"), Scalar(1, 2));
  EXPECT_EQ(Scalar::parse("-3/8"), Scalar(-3, 8));
  EXPECT_EQ(Scalar::parse("7"), Scalar(7));
  EXPECT_THROW(Scalar::parse("1/0"), intertwine::DomainError);
  EXPECT_THROW(Scalar::parse("abc"), intertwine::DomainError);
  EXPECT_THROW(Scalar::parse(""), intertwine::DomainError);
}

TEST(Scalar, ParsesSurds) {
  const Scalar x = Scalar::parse("1/8+1/2*sqrt(3)");
  EXPECT_EQ(x.rational_part(), mpq_class(1, 8));
  EXPECT_EQ(x.surd_coefficient(), mpq_class(1, 2));
  EXPECT_EQ(x.radicand(), 3);
  EXPECT_EQ(Scalar::parse("-sqrt(2)"), -Scalar::sqrt(2));
  EXPECT_EQ(Scalar::parse("2-sqrt(2)").str(), "2-sqrt(2)");
  EXPECT_EQ(Scalar::parse(x.str()), x);
}

TEST(Scalar, PerfectSquaresFold) {
  EXPECT_TRUE(Scalar::sqrt(mpq_class(1, 4)).is_rational());
  EXPECT_EQ(Scalar::sqrt(mpq_class(1, 4)), Scalar(1, 2));
  EXPECT_EQ(Scalar::sqrt(12), Scalar(2) * Scalar::sqrt(3));
  EXPECT_EQ(Scalar::sqrt(mpq_class(1, 2)), Scalar(1, 2) * Scalar::sqrt(2));
  EXPECT_EQ(Scalar::sqrt(2) * Scalar::sqrt(2), Scalar(2));
}

TEST(Scalar, DivisionByConjugate) {
  const Scalar x = Scalar(1) + Scalar::sqrt(5);
  EXPECT_EQ(x * (Scalar(1) / x), Scalar(1));
  EXPECT_THROW(x / Scalar(0), intertwine::DomainError);
}

TEST(Scalar, MixedRadicandsThrow) {
  EXPECT_THROW(Scalar::sqrt(2) + Scalar::sqrt(3), intertwine::FieldMismatch);
  EXPECT_NO_THROW(Scalar::sqrt(2) + Scalar(1));
}

TEST(Scalar, OrderingIncludesSurds) {
  EXPECT_LT(Scalar::sqrt(2), Scalar(3, 2));
  EXPECT_GT(Scalar::sqrt(2), Scalar(7, 5));
  EXPECT_LT(Scalar(1) - Scalar::sqrt(2), Scalar(0));
  EXPECT_THROW((void)Scalar::sqrt(-1).sign(), intertwine::DomainError);
}

TEST(Scalar, PositiveMultiples) {
  EXPECT_TRUE(intertwine::in_positive_multiples(6, 6));
  EXPECT_FALSE(intertwine::in_positive_multiples(0, Scalar(3, 2)));
  EXPECT_FALSE(intertwine::in_positive_multiples(Scalar(1, 2), Scalar(3, 2)));
  EXPECT_TRUE(intertwine::in_positive_multiples(Scalar(9, 2), Scalar(3, 2)));
  EXPECT_FALSE(intertwine::in_positive_multiples(Scalar(-3, 2), Scalar(3, 2)));
  EXPECT_TRUE(intertwine::in_positive_multiples(Scalar(-3), Scalar(-3, 2)));
  EXPECT_THROW(intertwine::in_positive_multiples(1, 0), intertwine::DomainError);
  EXPECT_THROW(intertwine::in_positive_multiples(Scalar::sqrt(2), 1), intertwine::DomainError);
}

class FieldAxioms : public ::testing::TestWithParam<long> {};

TEST_P(FieldAxioms, HoldExactlyOnRandomTriples) {
  oracle::ScalarGen gen(1234u + static_cast<unsigned>(GetParam()));
  for (int i = 0; i < 200; ++i) {
    const Scalar a = gen.in_field(GetParam()), b = gen.in_field(GetParam()), c = gen.in_field(GetParam());
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a - a, Scalar(0));
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
  }
}

INSTANTIATE_TEST_SUITE_P(Radicands, FieldAxioms, ::testing::Values(0L, 2L, 5L, -3L, 21L));
