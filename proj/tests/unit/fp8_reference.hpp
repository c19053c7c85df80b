#pragma once

// Independent reference for the FP8 oracle: plain doubles plus a brute-force
// nearest-code search. Shares nothing with the library's integer rounding.

#include <cmath>
#include <cstdint>

#include "snnfp8/fp8.hpp"

namespace ref {

inline double value(std::uint8_t code) {
  const int s = code >> 7, e = (code >> 3) & 15, m = code & 7;
  const double mag = e == 0 ? std::ldexp(m, -9) : std::ldexp(8 + m, e - 10);
  return s ? -mag : mag;
}

// Nearest representable magnitude, ties to even mantissa. 480 stands in for
// the first value past the top of the range (it would carry mantissa 7).
inline snnfp8::Fp8Code round(double v, bool saturate = true) {
  const bool neg = std::signbit(v);
  const double a = std::fabs(v);
  int best = 0;
  double best_err = a;
  for (int c = 1; c <= 0x7F; ++c) {
    const double cand = c == 0x7F ? 480.0 : value(static_cast<std::uint8_t>(c));
    const double err = std::fabs(cand - a);
    if (err < best_err || (err == best_err && (c & 1) == 0)) {
      best = c;
      best_err = err;
    }
  }
  if (best == 0x7F) return saturate ? snnfp8::Fp8Code(neg ? 0xFE : 0x7E) : snnfp8::kCanonicalNaN;
  return snnfp8::Fp8Code(static_cast<std::uint8_t>((neg ? 0x80 : 0) | best));
}

inline snnfp8::Fp8Code mul(snnfp8::Fp8Code a, snnfp8::Fp8Code b, bool saturate = true) {
  if (a.is_nan() || b.is_nan()) return snnfp8::kCanonicalNaN;
  return round(value(a.bits()) * value(b.bits()), saturate);
}

inline snnfp8::Fp8Code add(snnfp8::Fp8Code a, snnfp8::Fp8Code b, bool saturate = true) {
  if (a.is_nan() || b.is_nan()) return snnfp8::kCanonicalNaN;
  return round(value(a.bits()) + value(b.bits()), saturate);
}

}  // namespace ref
