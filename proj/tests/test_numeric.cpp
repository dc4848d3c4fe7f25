#include <gtest/gtest.h>

#include <limits>

#include "posthoc/errors.hpp"
#include "posthoc/numeric.hpp"

using namespace posthoc;

TEST(RationalParse, AcceptsFractionsIntegersAndDecimalsExactly) {
  EXPECT_EQ(NumTraits<Rational>::parse("3/6"), Rational(1, 2));
  EXPECT_EQ(NumTraits<Rational>::parse("-7"), Rational(-7));
  EXPECT_EQ(NumTraits<Rational>::parse("0.1"), Rational(1, 10));
  EXPECT_EQ(NumTraits<Rational>::parse("1.25e-2"), Rational(1, 80));
  EXPECT_EQ(NumTraits<Rational>::parse("2E3"), Rational(2000));
  EXPECT_EQ(NumTraits<Rational>::parse(".5"), Rational(1, 2));
}

TEST(RationalParse, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "abc", "1..2", "1/2/3", "0x10", "1e"}) {
    EXPECT_ANY_THROW(NumTraits<Rational>::parse(bad)) << bad;
  }
}

TEST(DoubleParse, RoutesThroughDecimalText) {
  EXPECT_DOUBLE_EQ(NumTraits<double>::parse("1/3"), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(NumTraits<double>::parse("0.1"), 0.1);
}

TEST(Pretty, TerminatingRationalsPrintAsDecimals) {
  EXPECT_EQ(num::pretty(Rational(11, 10)), "1.1");
  EXPECT_EQ(num::pretty(Rational(19, 20)), "0.95");
  EXPECT_EQ(num::pretty(Rational(-1, 8)), "-0.125");
  EXPECT_EQ(num::pretty(Rational(3)), "3");
  EXPECT_EQ(num::pretty(Rational(1, 3)), "1/3");
  EXPECT_EQ(num::pretty(0.1), "0.1");
}

TEST(DoubleTolerance, ScalesWithMagnitude) {
  EXPECT_TRUE(num::eq(0.1 + 0.2, 0.3));
  EXPECT_TRUE(num::le(1.0 + 1e-13, 1.0));
  EXPECT_FALSE(num::le(1.0 + 1e-9, 1.0));
  EXPECT_TRUE(num::eq(1e6 + 1e-7, 1e6));
}

TEST(ExactRoot, FindsPerfectPowersOnly) {
  EXPECT_EQ(NumTraits<Rational>::exact_root(Rational(9, 4), 2), Rational(3, 2));
  EXPECT_FALSE(NumTraits<Rational>::exact_root(Rational(2), 2).has_value());
  EXPECT_EQ(NumTraits<Rational>::floor(Rational(-1, 2)), -1);
  EXPECT_EQ(NumTraits<Rational>::floor(Rational(7, 2)), 3);
}

TEST(Backend, ParsesNamesAndRejectsOthers) {
  EXPECT_EQ(parse_backend("rational"), Backend::Rational);
  EXPECT_EQ(parse_backend("double"), Backend::Double);
  EXPECT_THROW(parse_backend("quad"), ConfigError);
  EXPECT_EQ(backend_name(Backend::Double), "double");
}

TEST(Extended, InfinityAbsorbsAndZeroTimesInfinityIsZero) {
  using E = Extended<Rational>;
  const E inf = E::infinity();
  EXPECT_TRUE((inf + E(Rational(3))).is_infinite());
  EXPECT_EQ(E(Rational(0)) * inf, E(Rational(0)));
  EXPECT_TRUE((E(Rational(1, 2)) * inf).is_infinite());
  EXPECT_ANY_THROW(E(Rational(-1)) * inf);
  EXPECT_LT(E(Rational(1000000)), inf);
  EXPECT_EQ(inf.format(), "inf");
  EXPECT_ANY_THROW(inf.value());
  EXPECT_TRUE(num::parse_extended<double>("inf").is_infinite());
  EXPECT_TRUE(num::le(E(Rational(5)), inf));
  EXPECT_FALSE(num::le(inf, E(Rational(5))));
}
