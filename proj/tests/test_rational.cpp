#include "pbtm/rational.hpp"

#include <gtest/gtest.h>

#include <random>

#include "pbtm/error.hpp"

namespace pbtm {
namespace {

TEST(Rational, NormalizesOnConstruction) {
  Rational r(6, 8);
  EXPECT_EQ(r.num(), 3);
  EXPECT_EQ(r.den(), 4);

  Rational neg(3, -9);
  EXPECT_EQ(neg.num(), -1);
  EXPECT_EQ(neg.den(), 3);

  EXPECT_EQ(Rational(0, 5), Rational(0));
}

TEST(Rational, ParseDecimalAndFraction) {
  EXPECT_EQ(Rational::parse("0.1"), Rational(1, 10));
  EXPECT_EQ(Rational::parse("-2.5"), Rational(-5, 2));
  EXPECT_EQ(Rational::parse("3"), Rational(3));
  EXPECT_EQ(Rational::parse("10/3"), Rational(10, 3));
  EXPECT_EQ(Rational::parse(".25"), Rational(1, 4));
  EXPECT_EQ(Rational::parse("0.0500"), Rational(1, 20));
  EXPECT_THROW(Rational::parse(""), Error);
  EXPECT_THROW(Rational::parse("abc"), Error);
  EXPECT_THROW(Rational::parse("1/0"), Error);
  EXPECT_THROW(Rational::parse("1.2.3"), Error);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 10) + Rational(2, 10), Rational(3, 10));
  EXPECT_EQ(Rational(1, 3) * Rational(3, 7), Rational(1, 7));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(3, 4) / Rational(3, 2), Rational(1, 2));
  EXPECT_EQ(Rational(2, 10) * Rational(4), Rational(4, 5));
  EXPECT_THROW(Rational(1) / Rational(0), Error);
}

TEST(Rational, OrderingIsExact) {
  EXPECT_LT(Rational(1, 3), Rational(34, 100));
  EXPECT_GT(Rational(1, 3), Rational(33, 100));
  EXPECT_EQ(Rational(2, 6) <=> Rational(1, 3), std::strong_ordering::equal);
  // A comparison doubles get wrong: 0.1 + 0.2 vs 0.3.
  EXPECT_EQ(Rational::parse("0.1") + Rational::parse("0.2"), Rational::parse("0.3"));
}

TEST(Rational, StringRoundTrip) {
  EXPECT_EQ(Rational(4, 5).str(), "0.8");
  EXPECT_EQ(Rational(-3, 8).str(), "-0.375");
  EXPECT_EQ(Rational(5, 2).str(), "2.5");
  EXPECT_EQ(Rational(7).str(), "7");
  EXPECT_EQ(Rational(10, 3).str(), "10/3");
  EXPECT_EQ(Rational(0).str(), "0");
  for (const char* text : {"0.8", "-0.375", "2.5", "7", "10/3"}) {
    EXPECT_EQ(Rational::parse(Rational::parse(text).str()), Rational::parse(text)) << text;
  }
}

TEST(Rational, PreReductionAvoidsSpuriousOverflow) {
  // Each factor is near 2^31; the reduced product fits comfortably.
  Rational big(1'000'000'000, 3);
  Rational other(3, 1'000'000'000);
  EXPECT_EQ(big * other, Rational(1));
  EXPECT_THROW(Rational(INT64_MAX, 1) * Rational(INT64_MAX, 1), Error);
}

TEST(Rational, MatchesDoubleArithmeticApproximately) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    int64_t a = static_cast<int64_t>(rng() % 2000) - 1000;
    int64_t b = static_cast<int64_t>(rng() % 999) + 1;
    int64_t c = static_cast<int64_t>(rng() % 2000) - 1000;
    int64_t d = static_cast<int64_t>(rng() % 999) + 1;
    Rational x(a, b), y(c, d);
    double xd = static_cast<double>(a) / static_cast<double>(b);
    double yd = static_cast<double>(c) / static_cast<double>(d);
    EXPECT_NEAR((x + y).to_double(), xd + yd, 1e-9);
    EXPECT_NEAR((x * y).to_double(), xd * yd, 1e-9);
    if ((x < y) != (xd < yd)) {
      EXPECT_NEAR(xd, yd, 1e-12);  // only near-ties may disagree
    }
  }
}

}  // namespace
}  // namespace pbtm
