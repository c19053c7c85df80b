#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "snnfp8/circuit.hpp"
#include "snnfp8/fp8.hpp"
#include "snnfp8/simulator.hpp"

namespace snnfp8 {

/// Lines of the internal wide mantissa [h, m2, m1, m0, g0..g7].
inline constexpr std::size_t kWideLines = 12;

struct AdderOptions {
  OverflowPolicy overflow = OverflowPolicy::Saturate;
};

/// Five-stage combinational FP8 E4M3 adder. Port layout matches
/// build_multiplier. Stage labels:
///   stage1_align      effective exponents, |A| >= |B| comparator over
///                     (E_eff, h, M), both exponent differences, operand swap
///   stage2_shift      12-line barrel shifter (shifts 1/2/4/8) with sticky side-line
///   stage3_core       13-bit add/subtract (12 lines + sticky) with carry-out
///   stage4_normalize  leading-one detect, subnormal-limited left shift,
///                     exponent adjust E_norm = E_max - P, carry-out path
///   stage5_round      RNE, overflow handling, zero-sign fixup, NaN override
Circuit build_spatial_adder(const AdderOptions& options = {});

const Circuit& adder_circuit(OverflowPolicy policy = OverflowPolicy::Saturate);

/// Adds through the cached spiking circuit on a thread-local evaluator.
Fp8Code snn_add(Fp8Code a, Fp8Code b, const SimConfig& cfg = {},
                OverflowPolicy policy = OverflowPolicy::Saturate);

/// Standalone alignment shifter: inputs x0..x11 (x0 = h) and d0..d3 (LSB
/// first), outputs y0..y11 and sticky. Right shift by delta; lines moved past
/// x11 OR into sticky.
Circuit build_barrel_shifter_circuit();

/// Standalone leading-one detector: inputs x0..x11, outputs p0..p3 (LSB first)
/// and zero (all lines clear).
Circuit build_leading_zero_circuit();

/// Standalone RNE stage: inputs h, m2, m1, m0, r, s; outputs q_h, q_m2, q_m1,
/// q_m0 and carry. Increments the significand iff r and (s or m0).
Circuit build_rne_circuit();

/// Evaluates the standalone circuits. `lines` are MSB-first.
struct ShiftedLines {
  std::array<std::uint8_t, kWideLines> lines;
  bool sticky;
};
ShiftedLines barrel_shift(const std::array<std::uint8_t, kWideLines>& lines, unsigned delta,
                          const SimConfig& cfg = {});

struct LeadingZeroResult {
  unsigned position;  // index of the most significant set line; 0 when zero
  bool zero;
};
LeadingZeroResult leading_zero_detect(const std::array<std::uint8_t, kWideLines>& lines,
                                      const SimConfig& cfg = {});

struct RoundedMantissa {
  unsigned significand;  // 4 bits h.m2m1m0
  bool carry;
};
/// `significand` is the 4-bit h.m2m1m0; its last bit is L.
RoundedMantissa rne_round(const RoundFlags& flags, unsigned significand,
                          const SimConfig& cfg = {});

}  // namespace snnfp8
