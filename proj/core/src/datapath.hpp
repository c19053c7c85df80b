#pragma once

// Word-level building blocks over gate primitives. Numeric buses are
// LSB-first (index i carries weight 2^i); line buses (mantissa registers) are
// MSB-first, index 0 being the leading line.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "snnfp8/fp8.hpp"
#include "snnfp8/gates.hpp"

namespace snnfp8::detail {

using Bus = std::vector<Wire>;

Bus constant_bus(std::uint64_t value, std::size_t width);
Bus zero_extend(Bus x, std::size_t width);
Bus invert(CircuitBuilder& b, const Bus& x);
Bus mux_bus(CircuitBuilder& b, Wire s, const Bus& a, const Bus& c);

/// Ripple-carry adder over equal-width buses; result has width+1 bits.
Bus ripple_add(CircuitBuilder& b, const Bus& x, const Bus& y, Wire cin = Wire::zero());
/// x - y modulo 2^width (width bits); the borrow is discarded.
Bus subtract(CircuitBuilder& b, const Bus& x, const Bus& y);
/// x + 1 modulo 2^width.
Bus increment(CircuitBuilder& b, const Bus& x);

/// Unsigned x >= y by a log-depth greater/equal tree.
Wire greater_equal(CircuitBuilder& b, const Bus& x, const Bus& y);

struct ShiftOut {
  Bus lines;
  Wire sticky;  // OR of every line shifted past the last position
};

/// Right shift of MSB-first lines by an LSB-first amount, one MUX layer per
/// amount bit (layer k moves by 2^k). Vacated lines read 0.
ShiftOut shift_right_lines(CircuitBuilder& b, const Bus& lines, const Bus& amount);
/// Left shift of MSB-first lines; lines leaving the top are dropped.
Bus shift_left_lines(CircuitBuilder& b, const Bus& lines, const Bus& amount);

struct LeadingOne {
  Bus position;  // LSB-first index of the first set line
  Wire any;      // at least one line set
};

/// Hierarchical leading-one search over MSB-first lines (padded to a power of two).
LeadingOne leading_one(CircuitBuilder& b, const Bus& lines);

/// Packed FP8 output bus, MSB-first [S, E3..E0, M2..M0].
using Fp8Bus = std::array<Wire, 8>;

Fp8Bus add_fp8_inputs(CircuitBuilder& b, const char* prefix);
void add_fp8_outputs(CircuitBuilder& b, const Fp8Bus& y, const char* prefix);

/// E = 15 and M = 7.
Wire detect_nan(CircuitBuilder& b, const Fp8Bus& x);
/// Implicit bit: exponent field nonzero.
Wire implicit_bit(CircuitBuilder& b, const Fp8Bus& x);
/// LSB-first 4-bit effective exponent: MUX(E = 0, 1, E).
Bus effective_exponent_bus(CircuitBuilder& b, const Fp8Bus& x, Wire implicit);

struct RoundInput {
  Wire sign;
  Bus exponent;     // LSB-first, 5 bits; biased exponent of the window frame
  Bus significand;  // MSB-first [h, m2, m1, m0]
  Wire round;
  Wire sticky;
  Wire nan;
};

struct RoundedSignificand {
  Bus significand;  // MSB-first, 4 lines
  Wire carry;
};

/// Increment the 4-bit significand iff R and (S or L), L being its last line.
RoundedSignificand round_nearest_even(CircuitBuilder& b, const Bus& significand, Wire round,
                                      Wire sticky);

/// RNE rounding, exponent selection, overflow handling and NaN override.
Fp8Bus round_and_pack(CircuitBuilder& b, const RoundInput& in, OverflowPolicy policy);

}  // namespace snnfp8::detail
