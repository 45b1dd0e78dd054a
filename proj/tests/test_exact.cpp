#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "typdeg/error.hpp"
#include "typdeg/exact.hpp"

using namespace typdeg;

TEST(Exact, MakeRationalIsCanonical) {
  auto r = make_rational(ExactInteger(6), ExactInteger(-4));
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_EQ(to_fraction_string(make_rational(4, 2)), "2/1");
}

TEST(Exact, ZeroDenominatorRejected) {
  try {
    make_rational(ExactInteger(1), ExactInteger(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
  }
}

TEST(Exact, PowersAgreeWithRepeatedProduct) {
  for (int b = -3; b <= 7; ++b) {
    ExactInteger acc = 1;
    for (unsigned e = 0; e < 40; ++e) {
      EXPECT_EQ(pow(ExactInteger(b), e), acc) << b << "^" << e;
      acc *= b;
    }
  }
  EXPECT_EQ(pow2(100), pow(ExactInteger(2), 100));
}

TEST(Exact, FractionRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    ExactInteger num(static_cast<long>(rng() % 200001) - 100000);
    ExactInteger den(static_cast<long>(rng() % 1000) + 1);
    auto r = make_rational(num, den);
    EXPECT_EQ(parse_fraction(to_fraction_string(r)), r);
  }
  EXPECT_EQ(parse_fraction("12"), ExactRational(12));
}

TEST(Exact, MalformedFractions) {
  for (const char* bad : {"", "1/", "/2", "a/b", "1/0", "1//2"}) {
    EXPECT_THROW(parse_fraction(bad), Error) << bad;
  }
}

TEST(Exact, ToDoubleMatchesLibm) {
  EXPECT_EQ(to_double(make_rational(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(to_double(make_rational(2, 7)), 2.0 / 7.0);
  ExactRational tiny = make_rational(ExactInteger(1), pow2(1100));
  EXPECT_EQ(to_double(tiny), 0.0);
  EXPECT_EQ(to_double(pow2(60)), std::ldexp(1.0, 60));
}

TEST(Exact, BitLengthAndU64) {
  EXPECT_EQ(bit_length(ExactInteger(0)), 0U);
  EXPECT_EQ(bit_length(ExactInteger(1)), 1U);
  EXPECT_EQ(bit_length(ExactInteger(255)), 8U);
  EXPECT_EQ(bit_length(ExactInteger(-256)), 9U);
  EXPECT_EQ(to_u64(pow2(64) - 1), ~std::uint64_t{0});
  EXPECT_THROW(to_u64(pow2(64)), Error);
  EXPECT_THROW(to_u64(ExactInteger(-1)), Error);
}
