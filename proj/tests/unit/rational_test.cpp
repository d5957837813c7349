#include <gtest/gtest.h>

#include "mcover/rational.hpp"

using mcover::Rational;

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(6, 8).str(), "3/4");
  EXPECT_EQ(Rational(-6, -8).str(), "3/4");
  EXPECT_EQ(Rational(4, -2).str(), "-2");
  EXPECT_EQ(Rational(0, 5).str(), "0");
}

TEST(Rational, ParseRoundTrip) {
  for (const char* s : {"0", "7", "-3", "1/8", "-22/17", "80/17"}) {
    EXPECT_EQ(Rational::parse(s).str(), s);
  }
  EXPECT_EQ(Rational::parse("+4/6").str(), "2/3");
}

TEST(Rational, ParseRejectsGarbage) {
  for (const char* s : {"", "/", "1/", "/2", "1/0", "1.5", "a", "1/-2", " 1", "--1"}) {
    EXPECT_THROW(Rational::parse(s), std::invalid_argument) << s;
  }
}

TEST(Rational, Arithmetic) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, b);
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_THROW(a / Rational(0), std::domain_error);
  EXPECT_LT(b, a);
  EXPECT_EQ(-a, Rational(-1, 3));
}

TEST(Rational, FloorCeil) {
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(7, 2).ceil(), 4);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_EQ(Rational(4).floor(), 4);
  EXPECT_EQ(Rational(4).ceil(), 4);
}

TEST(Rational, Log2) {
  EXPECT_EQ(mcover::pow2(-3), Rational(1, 8));
  EXPECT_EQ(mcover::pow2(4), Rational(16));
  EXPECT_EQ(mcover::floor_log2(Rational(11)), 3);
  EXPECT_EQ(mcover::ceil_log2(Rational(11)), 4);
  EXPECT_EQ(mcover::floor_log2(Rational(8)), 3);
  EXPECT_EQ(mcover::ceil_log2(Rational(8)), 3);
  EXPECT_EQ(mcover::floor_log2(Rational(3, 16)), -3);
  EXPECT_EQ(mcover::ceil_log2(Rational(3, 16)), -2);
  EXPECT_THROW(mcover::floor_log2(Rational(0)), std::domain_error);
}
