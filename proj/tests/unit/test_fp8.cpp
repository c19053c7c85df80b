#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fp8_reference.hpp"
#include "snnfp8/fp8.hpp"
#include "snnfp8/io.hpp"

using namespace snnfp8;

namespace {

Fp8Code F(unsigned s, unsigned e, unsigned m) { return Fp8Code::from_fields(s, e, m); }
double dec(Fp8Code c) { return decode(c).to_double(); }
ExactReal pow2(int k) { return ExactReal::make(false, 1, k); }

}  // namespace

TEST(Fp8Decode, Examples) {
  EXPECT_EQ(dec(F(0, 7, 0)), 1.0);
  EXPECT_EQ(dec(F(0, 0, 1)), std::ldexp(1.0, -9));
  EXPECT_EQ(dec(F(1, 15, 6)), -448.0);
  EXPECT_THROW(decode(kCanonicalNaN), std::domain_error);
  EXPECT_TRUE(std::signbit(dec(F(1, 0, 0))));
}

TEST(Fp8Decode, MatchesReferenceForEveryFiniteCode) {
  for (Fp8Code c : finite_codes()) EXPECT_EQ(dec(c), ref::value(c.bits())) << to_hex(c);
}

TEST(Fp8Classify, Classes) {
  EXPECT_EQ(classify(Fp8Code(0x00)), Fp8Class::Zero);
  EXPECT_EQ(classify(Fp8Code(0x80)), Fp8Class::Zero);
  EXPECT_EQ(classify(Fp8Code(0x03)), Fp8Class::Subnormal);
  EXPECT_EQ(classify(Fp8Code(0x38)), Fp8Class::Normal);
  EXPECT_EQ(classify(Fp8Code(0x7F)), Fp8Class::NaN);
  EXPECT_EQ(classify(Fp8Code(0xFF)), Fp8Class::NaN);
  EXPECT_EQ(classify(Fp8Code(0x7E)), Fp8Class::Normal);
  EXPECT_EQ(finite_codes().size(), 254u);
}

TEST(Fp8Classify, EffectiveExponent) {
  EXPECT_EQ(effective_exponent(F(0, 0, 3)), 1u);
  EXPECT_EQ(effective_exponent(F(0, 7, 0)), 7u);
  EXPECT_EQ(effective_exponent(F(0, 15, 6)), 15u);
}

TEST(Fp8Encode, Examples) {
  EXPECT_EQ(encode_rne(pow2(0)), F(0, 7, 0));
  EXPECT_EQ(encode_rne(pow2(-10)), Fp8Code(0x00));
  EXPECT_EQ(encode_rne(ExactReal::make(false, 1000, 0)), kMaxFinite);
  EXPECT_EQ(encode_rne(ExactReal::make(false, 1000, 0), OverflowPolicy::NaN), kCanonicalNaN);
  EXPECT_EQ(encode_rne(ExactReal::make(true, 1, -11)), Fp8Code(0x80));  // underflow keeps sign
  EXPECT_EQ(encode_rne(ExactReal::make(false, 464, 0)), kMaxFinite);    // tie back to 448
  EXPECT_EQ(encode_rne(ExactReal::make(false, 465, 0), OverflowPolicy::NaN), kCanonicalNaN);
  EXPECT_EQ(encode_rne(ExactReal::make(false, 3, -10)), F(0, 0, 2));  // 1.5 ulp ties to even
}

TEST(Fp8Encode, RoundTripEveryFiniteCode) {
  for (Fp8Code c : finite_codes()) EXPECT_EQ(encode_rne(decode(c)), c) << to_hex(c);
}

TEST(Fp8Encode, MatchesReferenceOnDenseGrid) {
  // Every multiple of 2^-12 up to 512, both signs.
  for (std::uint64_t k = 0; k <= (512u << 12); k += 1) {
    for (bool neg : {false, true}) {
      const double v = std::ldexp(static_cast<double>(k), -12) * (neg ? -1.0 : 1.0);
      ASSERT_EQ(encode_rne(ExactReal::make(neg, k, -12)), ref::round(v)) << v;
    }
    if (k > 4096) k += 7;  // thin out the top of the range
  }
}

TEST(Fp8Oracle, MulExamples) {
  EXPECT_EQ(oracle_mul(F(0, 6, 0), F(0, 6, 0)), F(0, 5, 0));  // 0.5 * 0.5
  EXPECT_EQ(oracle_mul(F(0, 0, 1), F(0, 8, 0)), F(0, 0, 2));  // 2^-9 * 2
  for (Fp8Code x : finite_codes()) EXPECT_EQ(oracle_mul(x, F(0, 7, 0)), x) << to_hex(x);
  EXPECT_EQ(oracle_mul(kCanonicalNaN, F(0, 7, 0)), kCanonicalNaN);
  EXPECT_EQ(oracle_mul(Fp8Code(0x80), F(0, 7, 0)), Fp8Code(0x80));
  EXPECT_EQ(oracle_mul(Fp8Code(0x80), Fp8Code(0x80)), Fp8Code(0x00));
}

TEST(Fp8Oracle, AddExamples) {
  EXPECT_EQ(oracle_add(F(0, 7, 0), F(1, 7, 0)), Fp8Code(0x00));
  EXPECT_EQ(oracle_add(kMaxFinite, kMaxFinite), kMaxFinite);
  EXPECT_EQ(oracle_add(kMaxFinite, kMaxFinite, OverflowPolicy::NaN), kCanonicalNaN);
  EXPECT_EQ(oracle_add(Fp8Code(0x80), Fp8Code(0x80)), Fp8Code(0x80));
  EXPECT_EQ(oracle_add(Fp8Code(0x00), Fp8Code(0x80)), Fp8Code(0x00));
  EXPECT_EQ(oracle_add(F(0, 0, 7), F(0, 1, 0)), ref::add(F(0, 0, 7), F(0, 1, 0)));
  EXPECT_EQ(oracle_add(F(0, 0, 7), F(0, 0, 1)), F(0, 1, 0));
  for (Fp8Code x : finite_codes())
    if (classify(x) != Fp8Class::Zero) {
      EXPECT_EQ(oracle_add(x, Fp8Code(0x00)), x);
    }
}

TEST(Fp8Oracle, CrossCheckAgainstDoubleReference) {
  for (auto policy : {OverflowPolicy::Saturate, OverflowPolicy::NaN}) {
    const bool sat = policy == OverflowPolicy::Saturate;
    for (Fp8Code a : finite_codes())
      for (Fp8Code b : finite_codes()) {
        ASSERT_EQ(oracle_mul(a, b, policy), ref::mul(a, b, sat)) << to_hex(a) << " * " << to_hex(b);
        ASSERT_EQ(oracle_add(a, b, policy), ref::add(a, b, sat)) << to_hex(a) << " + " << to_hex(b);
      }
  }
}

TEST(Fp8Oracle, Commutative) {
  for (Fp8Code a : finite_codes())
    for (Fp8Code b : finite_codes()) {
      ASSERT_EQ(oracle_mul(a, b), oracle_mul(b, a));
      ASSERT_EQ(oracle_add(a, b), oracle_add(b, a));
    }
}

TEST(Fp8Oracle, NanPropagates) {
  for (Fp8Code nan : {Fp8Code(0x7F), Fp8Code(0xFF)})
    for (Fp8Code x : {Fp8Code(0x00), Fp8Code(0x38), Fp8Code(0xFE)}) {
      EXPECT_EQ(oracle_add(nan, x), kCanonicalNaN);
      EXPECT_EQ(oracle_mul(x, nan), kCanonicalNaN);
    }
}

TEST(Fp8Order, DecodeStrictlyIncreasingOnPositiveCodes) {
  for (unsigned c = 1; c < 0x7F; ++c)
    EXPECT_LT(dec(Fp8Code(static_cast<std::uint8_t>(c - 1))), dec(Fp8Code(static_cast<std::uint8_t>(c))));
}

TEST(Fp8Order, UlpDistance) {
  EXPECT_EQ(ulp_distance(Fp8Code(0x00), Fp8Code(0x80)), 0);
  EXPECT_EQ(ulp_distance(Fp8Code(0x01), Fp8Code(0x81)), 2);
  EXPECT_EQ(ulp_distance(Fp8Code(0x38), Fp8Code(0x39)), 1);
  EXPECT_EQ(ordinal(Fp8Code(0x7E)), 126);
  EXPECT_EQ(ordinal(Fp8Code(0xFE)), -126);
}

TEST(Fp8Exact, ArithmeticIsExactAndCanonical) {
  const ExactReal a = ExactReal::make(false, 12, -3);  // 1.5
  EXPECT_EQ(a.significand, 3u);
  EXPECT_EQ(a.scale, -1);
  EXPECT_EQ(exact_mul(a, a).to_double(), 2.25);
  EXPECT_EQ(exact_add(a, ExactReal::make(true, 3, -1)), ExactReal{});
  EXPECT_FALSE(exact_add(a, ExactReal::make(true, 3, -1)).negative);
  EXPECT_EQ(exact_add(ExactReal::make(true, 0, 0), ExactReal::make(true, 0, 0)).negative, true);
}

TEST(Fp8Lines, RoundTrip) {
  for (unsigned c = 0; c < 256; ++c) {
    const Fp8Code x(static_cast<std::uint8_t>(c));
    EXPECT_EQ(from_lines(to_lines(x)), x);
  }
  const auto lines = to_lines(Fp8Code(0xB9));  // 1 0111 001
  EXPECT_EQ(lines, (std::array<std::uint8_t, 8>{1, 0, 1, 1, 1, 0, 0, 1}));
}

TEST(Fp8Text, HexAndTable) {
  EXPECT_EQ(to_hex(Fp8Code(0x3F)), "0x3f");
  EXPECT_EQ(parse_code("0x3f"), Fp8Code(0x3F));
  EXPECT_EQ(parse_code("63"), Fp8Code(0x3F));
  EXPECT_THROW(parse_code("0x1ff"), std::invalid_argument);
  EXPECT_THROW(parse_code("zz"), std::invalid_argument);

  const std::string csv = code_table_csv();
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "code,hex,sign,exponent,mantissa,class,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 256);
}

TEST(Fp8, CodeTableMatchesShippedFixture) {
  EXPECT_EQ(code_table_csv(), read_file(SNNFP8_DATA_DIR "/fp8_code_table.csv"));
}
