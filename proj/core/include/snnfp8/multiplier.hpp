#pragma once

#include "snnfp8/circuit.hpp"
#include "snnfp8/fp8.hpp"
#include "snnfp8/simulator.hpp"

namespace snnfp8 {

struct MultiplierOptions {
  OverflowPolicy overflow = OverflowPolicy::Saturate;
  /// Debug switch: drop the three boundary-bit correction gates.
  bool sticky_extra = true;
};

/// Combinational FP8 E4M3 multiplier built from gate primitives.
///
/// Inputs a.s, a.e3..a.e0, a.m2..a.m0 then the same for b; outputs y.*.
/// Stages (labels used in per-stage neuron counts):
///   sign        S_a XOR S_b
///   special     NaN detection on both operands
///   exponent    implicit bits, effective exponents, 5-bit ripple-carry sum,
///               bias subtraction E_raw = E_a,eff + E_b,eff - 7
///   mantissa    4x4 Braun array over significands h.m2m1m0 (8-bit product)
///   normalize   leading-one detect, left shift s = min(lz, E_raw) on the
///               product with its lowest bit held out, right shift for
///               E_raw < 0
///   sticky_extra  corrections for the held-out bit: into the mantissa LSB
///               when s >= 4, into R when s = 3, into sticky when s < 3
///   round       RNE, exponent carry, saturation or NaN on overflow, NaN override
Circuit build_multiplier(const MultiplierOptions& options = {});

/// Process-wide cached default circuit for the given overflow policy.
const Circuit& multiplier_circuit(OverflowPolicy policy = OverflowPolicy::Saturate);

/// Multiplies through the cached spiking circuit on a thread-local evaluator.
Fp8Code snn_mul(Fp8Code a, Fp8Code b, const SimConfig& cfg = {},
                OverflowPolicy policy = OverflowPolicy::Saturate);

}  // namespace snnfp8
