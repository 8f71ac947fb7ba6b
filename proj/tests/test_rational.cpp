#include "eonplan/rational.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

using eonplan::Frac;
using eonplan::ceil_div;
using eonplan::format_frac;
using eonplan::parse_frac;

TEST(Frac, NormalizesOnConstruction) {
  Frac f(6, 8);
  EXPECT_EQ(f.num, 3);
  EXPECT_EQ(f.den, 4);

  Frac neg(3, -4);
  EXPECT_EQ(neg.num, -3);
  EXPECT_EQ(neg.den, 4);

  Frac zero(0, 17);
  EXPECT_EQ(zero.num, 0);
  EXPECT_EQ(zero.den, 1);
  EXPECT_TRUE(zero.is_zero());

  EXPECT_THROW(Frac(1, 0), std::invalid_argument);
}

TEST(Frac, ArithmeticIsExact) {
  EXPECT_EQ(Frac(1, 3) + Frac(1, 6), Frac(1, 2));
  EXPECT_EQ(Frac(3, 4) - Frac(1, 4), Frac(1, 2));
  EXPECT_EQ(Frac(2, 3) * Frac(3, 4), Frac(1, 2));
  EXPECT_EQ(Frac(1, 3) + Frac(2, 3), Frac(1));
  // 0.1 + 0.2 == 0.3 exactly, unlike doubles.
  EXPECT_EQ(parse_frac("0.1") + parse_frac("0.2"), parse_frac("0.3"));
}

TEST(Frac, ComparisonsCrossDenominators) {
  EXPECT_LT(Frac(1, 3), Frac(1, 2));
  EXPECT_LT(Frac(17, 28), Frac(5, 8));  // 0.60714 < 0.625
  EXPECT_GT(Frac(5, 8), Frac(17, 28));
  EXPECT_LE(Frac(1, 2), Frac(2, 4));
  EXPECT_GE(Frac(1, 2), Frac(2, 4));
  EXPECT_LT(Frac(-1, 2), Frac(0));
}

TEST(Frac, WideIntermediatesAvoidOverflow) {
  // num * den products here exceed 64 bits but the reduced result fits.
  Frac big(1'000'000'007, 3);
  Frac other(3, 1'000'000'007);
  EXPECT_EQ(big * other, Frac(1));

  Frac half_max(INT64_MAX / 2, 1);
  EXPECT_EQ(half_max + half_max, Frac(2 * (INT64_MAX / 2), 1));
  EXPECT_THROW(Frac(INT64_MAX, 1) + Frac(INT64_MAX, 1), std::overflow_error);
}

TEST(CeilDiv, ExactBoundaries) {
  EXPECT_EQ(ceil_div(Frac(100000), 50000), 2);   // exact multiple
  EXPECT_EQ(ceil_div(Frac(100001), 50000), 3);   // one over
  EXPECT_EQ(ceil_div(Frac(99999), 50000), 2);    // one under
  EXPECT_EQ(ceil_div(Frac(1, 2), 1), 1);         // fractional rounds up
  EXPECT_EQ(ceil_div(Frac(0), 7), 0);
  // 131.25 / 37.5 = 3.5 -> 4; the fraction forms are exact.
  EXPECT_EQ(ceil_div(Frac(525, 4) * Frac(1000), 37500), 4);
  EXPECT_THROW(ceil_div(Frac(1), 0), std::invalid_argument);
  EXPECT_THROW(ceil_div(Frac(-1), 5), std::invalid_argument);
}

TEST(ParseFrac, AcceptsAllThreeForms) {
  EXPECT_EQ(parse_frac("3"), Frac(3));
  EXPECT_EQ(parse_frac("0.75"), Frac(3, 4));
  EXPECT_EQ(parse_frac("131.25"), Frac(525, 4));
  EXPECT_EQ(parse_frac("17/28"), Frac(17, 28));
  EXPECT_EQ(parse_frac("-0.5"), Frac(-1, 2));
  EXPECT_EQ(parse_frac("1.0"), Frac(1));
  EXPECT_EQ(parse_frac("0.6071428571"), Frac(6071428571, 10000000000));
  // near-17/28 decimal is NOT 17/28; exactness matters for SLA thresholds
  EXPECT_NE(parse_frac("0.6071428571"), Frac(17, 28));
}

TEST(ParseFrac, RejectsMalformedInput) {
  EXPECT_THROW(parse_frac(""), std::invalid_argument);
  EXPECT_THROW(parse_frac("abc"), std::invalid_argument);
  EXPECT_THROW(parse_frac("1.2.3"), std::invalid_argument);
  EXPECT_THROW(parse_frac("1/"), std::invalid_argument);
  EXPECT_THROW(parse_frac("/2"), std::invalid_argument);
  EXPECT_THROW(parse_frac("99999999999999999999"), std::overflow_error);
}

TEST(FormatFrac, ShortestExactForm) {
  EXPECT_EQ(format_frac(Frac(3)), "3");
  EXPECT_EQ(format_frac(Frac(3, 4)), "0.75");
  EXPECT_EQ(format_frac(Frac(1, 2)), "0.5");
  EXPECT_EQ(format_frac(Frac(525, 4)), "131.25");
  EXPECT_EQ(format_frac(Frac(17, 28)), "17/28");  // non-terminating decimal
  EXPECT_EQ(format_frac(Frac(-1, 8)), "-0.125");
  EXPECT_EQ(format_frac(Frac(0)), "0");
}

TEST(FormatFrac, RoundTripsThroughParse) {
  for (const Frac& f : {Frac(17, 28), Frac(3, 4), Frac(525, 4), Frac(7), Frac(-5, 16)}) {
    EXPECT_EQ(parse_frac(format_frac(f)), f) << format_frac(f);
  }
}
