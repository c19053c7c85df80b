#include "snnfp8/fp8.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace snnfp8 {

std::string_view to_string(Fp8Class c) {
  switch (c) {
    case Fp8Class::Zero: return "zero";
    case Fp8Class::Subnormal: return "subnormal";
    case Fp8Class::Normal: return "normal";
    case Fp8Class::NaN: return "nan";
  }
  return "?";
}

Fp8Class classify(Fp8Code c) {
  if (c.is_nan()) return Fp8Class::NaN;
  if (c.exponent() == 0) return c.mantissa() == 0 ? Fp8Class::Zero : Fp8Class::Subnormal;
  return Fp8Class::Normal;
}

unsigned effective_exponent(Fp8Code c) { return c.exponent() == 0 ? 1u : c.exponent(); }

ExactReal ExactReal::make(bool negative, std::uint64_t significand, int scale) {
  if (significand == 0) return {negative, 0, 0};
  const int tz = std::countr_zero(significand);
  return {negative, significand >> tz, scale + tz};
}

double ExactReal::to_double() const {
  const double mag = std::ldexp(static_cast<double>(significand), scale);
  return negative ? -mag : mag;
}

ExactReal exact_mul(const ExactReal& a, const ExactReal& b) {
  const bool neg = a.negative != b.negative;
  if (a.is_zero() || b.is_zero()) return {neg, 0, 0};
  if (std::bit_width(a.significand) + std::bit_width(b.significand) > 64)
    throw std::overflow_error("exact_mul: significand overflow");
  return ExactReal::make(neg, a.significand * b.significand, a.scale + b.scale);
}

ExactReal exact_add(const ExactReal& a, const ExactReal& b) {
  if (a.is_zero() && b.is_zero()) return {a.negative && b.negative, 0, 0};
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int base = std::min(a.scale, b.scale);
  const int sa = a.scale - base;
  const int sb = b.scale - base;
  if (std::bit_width(a.significand) + sa > 62 || std::bit_width(b.significand) + sb > 62)
    throw std::overflow_error("exact_add: alignment overflow");
  const std::uint64_t ma = a.significand << sa;
  const std::uint64_t mb = b.significand << sb;
  if (a.negative == b.negative) return ExactReal::make(a.negative, ma + mb, base);
  if (ma == mb) return {false, 0, 0};
  return ma > mb ? ExactReal::make(a.negative, ma - mb, base)
                 : ExactReal::make(b.negative, mb - ma, base);
}

ExactReal decode(Fp8Code c) {
  switch (classify(c)) {
    case Fp8Class::NaN:
      throw std::domain_error("decode: NaN code has no value");
    case Fp8Class::Zero:
      return {c.sign() != 0, 0, 0};
    case Fp8Class::Subnormal:
      return ExactReal::make(c.sign() != 0, c.mantissa(), -9);
    case Fp8Class::Normal:
      return ExactReal::make(c.sign() != 0, 8u + c.mantissa(),
                             static_cast<int>(c.exponent()) - static_cast<int>(kExponentBias) - 3);
  }
  return {};
}

Fp8Code encode_rne(const ExactReal& x, OverflowPolicy policy) {
  const unsigned sign = x.negative ? 1u : 0u;
  if (x.is_zero()) return Fp8Code::from_fields(sign, 0, 0);

  const int msb = static_cast<int>(std::bit_width(x.significand)) - 1;
  const int e = msb + x.scale;
  // Quantum of the target binade; subnormals share the quantum 2^-9.
  int quantum = e < -6 ? -9 : e - 3;

  std::uint64_t n = 0;
  if (x.scale >= quantum) {
    n = x.significand << (x.scale - quantum);
  } else {
    const int d = quantum - x.scale;
    if (d < 64) {
      n = x.significand >> d;
      const std::uint64_t rem = x.significand & ((std::uint64_t{1} << d) - 1);
      const std::uint64_t half = std::uint64_t{1} << (d - 1);
      const RoundFlags flags{(n & 1) != 0, rem >= half, (rem & (half - 1)) != 0};
      if (flags.trigger()) ++n;
    }
  }
  if (n == 16) {
    n = 8;
    ++quantum;
  }

  unsigned exponent = 0;
  unsigned mantissa = 0;
  if (n >= 8) {
    const int biased = quantum + 10;
    mantissa = static_cast<unsigned>(n - 8);
    if (biased > 15 || (biased == 15 && mantissa == 7)) {
      return policy == OverflowPolicy::Saturate ? Fp8Code::from_fields(sign, 15, 6)
                                                : kCanonicalNaN;
    }
    exponent = static_cast<unsigned>(biased);
  } else {
    mantissa = static_cast<unsigned>(n);
  }
  return Fp8Code::from_fields(sign, exponent, mantissa);
}

Fp8Code oracle_mul(Fp8Code a, Fp8Code b, OverflowPolicy policy) {
  if (a.is_nan() || b.is_nan()) return kCanonicalNaN;
  return encode_rne(exact_mul(decode(a), decode(b)), policy);
}

Fp8Code oracle_add(Fp8Code a, Fp8Code b, OverflowPolicy policy) {
  if (a.is_nan() || b.is_nan()) return kCanonicalNaN;
  return encode_rne(exact_add(decode(a), decode(b)), policy);
}

double to_double(Fp8Code c) {
  if (c.is_nan()) return std::numeric_limits<double>::quiet_NaN();
  return decode(c).to_double();
}

const std::vector<Fp8Code>& finite_codes() {
  static const std::vector<Fp8Code> codes = [] {
    std::vector<Fp8Code> v;
    for (unsigned i = 0; i < 256; ++i) {
      const Fp8Code c(static_cast<std::uint8_t>(i));
      if (!c.is_nan()) v.push_back(c);
    }
    return v;
  }();
  return codes;
}

int ordinal(Fp8Code c) {
  const int mag = c.bits() & 0x7F;
  return c.sign() ? -mag : mag;
}

int ulp_distance(Fp8Code a, Fp8Code b) { return std::abs(ordinal(a) - ordinal(b)); }

std::array<std::uint8_t, 8> to_lines(Fp8Code c) {
  std::array<std::uint8_t, 8> lines{};
  for (int i = 0; i < 8; ++i) lines[i] = (c.bits() >> (7 - i)) & 1u;
  return lines;
}

Fp8Code from_lines(std::span<const std::uint8_t> lines) {
  if (lines.size() != 8) throw std::invalid_argument("an FP8 bus has 8 lines");
  unsigned v = 0;
  for (std::uint8_t l : lines) v = (v << 1) | (l ? 1u : 0u);
  return Fp8Code(static_cast<std::uint8_t>(v));
}

std::string code_table_csv() {
  std::ostringstream os;
  os << "code,hex,sign,exponent,mantissa,class,value\n";
  for (unsigned i = 0; i < 256; ++i) {
    const Fp8Code c(static_cast<std::uint8_t>(i));
    char value[32];
    if (c.is_nan())
      std::snprintf(value, sizeof value, "nan");
    else
      std::snprintf(value, sizeof value, "%.12g", to_double(c));
    os << i << ',' << to_hex(c) << ',' << c.sign() << ',' << c.exponent() << ',' << c.mantissa()
       << ',' << to_string(classify(c)) << ',' << value << '\n';
  }
  return os.str();
}

std::string to_hex(Fp8Code c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02x", c.bits());
  return buf;
}

Fp8Code parse_code(std::string_view text) {
  std::string s(text);
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s = s.substr(2);
    base = 16;
  }
  char* end = nullptr;
  const unsigned long v = std::strtoul(s.c_str(), &end, base);
  if (s.empty() || *end != '\0' || v > 255)
    throw std::invalid_argument("not an FP8 code: " + std::string(text));
  return Fp8Code(static_cast<std::uint8_t>(v));
}

}  // namespace snnfp8
