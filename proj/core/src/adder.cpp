#include "snnfp8/adder.hpp"

#include <stdexcept>
#include <string>

#include "datapath.hpp"
#include "snnfp8/fp8_unit.hpp"

namespace snnfp8 {

using detail::Bus;

Circuit build_spatial_adder(const AdderOptions& options) {
  using namespace detail;
  CircuitBuilder b;
  const Fp8Bus a = add_fp8_inputs(b, "a");
  const Fp8Bus c = add_fp8_inputs(b, "b");

  b.set_stage("stage1_align");
  const Wire nan = gate_or(b, detect_nan(b, a), detect_nan(b, c));
  const Wire ha = implicit_bit(b, a);
  const Wire hc = implicit_bit(b, c);
  const Bus ea = effective_exponent_bus(b, a, ha);  // LSB-first
  const Bus ec = effective_exponent_bus(b, c, hc);
  // |A| >= |B| over the concatenation (E_eff, h, M), LSB-first.
  const Bus key_a = {a[7], a[6], a[5], ha, ea[0], ea[1], ea[2], ea[3]};
  const Bus key_c = {c[7], c[6], c[5], hc, ec[0], ec[1], ec[2], ec[3]};
  const Wire a_major = greater_equal(b, key_a, key_c);
  const Bus delta = mux_bus(b, a_major, subtract(b, ea, ec), subtract(b, ec, ea));
  const Bus sig_a = {ha, a[5], a[6], a[7]};  // MSB-first lines
  const Bus sig_c = {hc, c[5], c[6], c[7]};
  const Bus big = mux_bus(b, a_major, sig_a, sig_c);
  const Bus small = mux_bus(b, a_major, sig_c, sig_a);
  const Bus e_max = mux_bus(b, a_major, ea, ec);
  const Wire big_sign = gate_mux(b, a_major, a[0], c[0]);
  const Wire subtracting = gate_xor(b, a[0], c[0]);

  b.set_stage("stage2_shift");
  Bus small_lines = small;
  small_lines.resize(kWideLines, Wire::zero());
  const ShiftOut aligned = shift_right_lines(b, small_lines, delta);

  b.set_stage("stage3_core");
  // LSB-first 13-bit operands: index 0 is the sticky side-line, index 12 is h.
  Bus big_word(kWideLines + 1, Wire::zero());
  Bus small_word(kWideLines + 1);
  for (std::size_t i = 0; i < 4; ++i) big_word[kWideLines - i] = big[i];
  small_word[0] = aligned.sticky;
  for (std::size_t i = 0; i < kWideLines; ++i) small_word[kWideLines - i] = aligned.lines[i];
  for (auto& w : small_word) w = gate_xor(b, w, subtracting);
  const Bus sum = ripple_add(b, big_word, small_word, subtracting);
  const Wire carry_line = gate_and(b, sum[kWideLines + 1], gate_not(b, subtracting));
  Bus lines(kWideLines);
  for (std::size_t i = 0; i < kWideLines; ++i) lines[i] = sum[kWideLines - i];
  const Wire tail = sum[0];

  b.set_stage("stage4_normalize");
  Bus all = lines;
  all.push_back(carry_line);
  all.push_back(tail);
  const Wire zero = gate_not(b, reduce_or(b, all));

  const LeadingOne lead = leading_one(b, lines);
  const Bus e_max_m1 = subtract(b, e_max, constant_bus(1, 4));
  // P > E_max - 1 would push the exponent below 1: clamp to a subnormal.
  const Wire clamp = gate_not(b, greater_equal(b, e_max_m1, lead.position));
  const Bus shift = mux_bus(b, clamp, e_max_m1, lead.position);
  const Bus shifted = shift_left_lines(b, lines, shift);
  const Bus norm_sig = {shifted[0], shifted[1], shifted[2], shifted[3]};
  const Wire norm_round = shifted[4];
  const Wire norm_sticky = reduce_or(
      b, {shifted[5], shifted[6], shifted[7], shifted[8], shifted[9], shifted[10], shifted[11], tail});
  const Bus norm_exp = zero_extend(subtract(b, e_max, shift), 5);

  // Carry out of the core: shift right by one, exponent E_max + 1.
  const Bus carry_sig = {carry_line, lines[0], lines[1], lines[2]};
  const Wire carry_round = lines[3];
  const Wire carry_sticky = reduce_or(b, {lines[4], lines[5], lines[6], lines[7], lines[8],
                                          lines[9], lines[10], lines[11], tail});
  const Bus carry_exp = increment(b, zero_extend(e_max, 5));

  const Bus sig = mux_bus(b, carry_line, carry_sig, norm_sig);
  const Wire round = gate_mux(b, carry_line, carry_round, norm_round);
  const Wire sticky = gate_mux(b, carry_line, carry_sticky, norm_sticky);
  const Bus exponent = mux_bus(b, carry_line, carry_exp, norm_exp);

  b.set_stage("stage5_round");
  // Exact zero: -0 only for (-0) + (-0); cancellation gives +0.
  const Wire sign = gate_mux(b, zero, gate_and(b, a[0], c[0]), big_sign);
  const Fp8Bus y = round_and_pack(b, {sign, exponent, sig, round, sticky, nan}, options.overflow);
  add_fp8_outputs(b, y, "y");
  return b.build();
}

const Circuit& adder_circuit(OverflowPolicy policy) {
  static const Circuit saturating = build_spatial_adder({OverflowPolicy::Saturate});
  static const Circuit non_saturating = build_spatial_adder({OverflowPolicy::NaN});
  return policy == OverflowPolicy::Saturate ? saturating : non_saturating;
}

Fp8Code snn_add(Fp8Code a, Fp8Code b, const SimConfig& cfg, OverflowPolicy policy) {
  thread_local Fp8BinaryUnit saturating(adder_circuit(OverflowPolicy::Saturate));
  thread_local Fp8BinaryUnit non_saturating(adder_circuit(OverflowPolicy::NaN));
  return (policy == OverflowPolicy::Saturate ? saturating : non_saturating).apply(a, b, cfg);
}

namespace {

Bus wide_inputs(CircuitBuilder& b) {
  Bus x;
  for (std::size_t i = 0; i < kWideLines; ++i) x.push_back(b.add_input("x" + std::to_string(i)));
  return x;
}

}  // namespace

Circuit build_barrel_shifter_circuit() {
  CircuitBuilder b;
  b.set_stage("stage2_shift");
  const Bus x = wide_inputs(b);
  Bus d;
  for (int k = 0; k < 4; ++k) d.push_back(b.add_input("d" + std::to_string(k)));
  const detail::ShiftOut out = detail::shift_right_lines(b, x, d);
  for (std::size_t i = 0; i < kWideLines; ++i) b.add_output(out.lines[i], "y" + std::to_string(i));
  b.add_output(out.sticky, "sticky");
  return b.build();
}

Circuit build_leading_zero_circuit() {
  CircuitBuilder b;
  b.set_stage("stage4_normalize");
  const detail::LeadingOne lead = detail::leading_one(b, wide_inputs(b));
  for (std::size_t k = 0; k < lead.position.size(); ++k)
    b.add_output(lead.position[k], "p" + std::to_string(k));
  b.add_output(gate_not(b, lead.any), "zero");
  return b.build();
}

Circuit build_rne_circuit() {
  CircuitBuilder b;
  b.set_stage("stage5_round");
  const Bus sig = {b.add_input("h"), b.add_input("m2"), b.add_input("m1"), b.add_input("m0")};
  const Wire r = b.add_input("r");
  const Wire s = b.add_input("s");
  const detail::RoundedSignificand q = detail::round_nearest_even(b, sig, r, s);
  b.add_output(q.significand[0], "q_h");
  b.add_output(q.significand[1], "q_m2");
  b.add_output(q.significand[2], "q_m1");
  b.add_output(q.significand[3], "q_m0");
  b.add_output(q.carry, "carry");
  return b.build();
}

ShiftedLines barrel_shift(const std::array<std::uint8_t, kWideLines>& lines, unsigned delta,
                          const SimConfig& cfg) {
  if (delta > 15) throw std::invalid_argument("barrel_shift: delta is a 4-bit amount");
  static const Circuit circuit = build_barrel_shifter_circuit();
  thread_local SpatialEvaluator eval(circuit);
  std::array<std::uint8_t, kWideLines + 4> in{};
  std::copy(lines.begin(), lines.end(), in.begin());
  for (unsigned k = 0; k < 4; ++k) in[kWideLines + k] = (delta >> k) & 1u;
  std::array<std::uint8_t, kWideLines + 1> out{};
  eval.run(in, out, cfg);
  ShiftedLines r{};
  std::copy(out.begin(), out.begin() + kWideLines, r.lines.begin());
  r.sticky = out[kWideLines] != 0;
  return r;
}

LeadingZeroResult leading_zero_detect(const std::array<std::uint8_t, kWideLines>& lines,
                                      const SimConfig& cfg) {
  static const Circuit circuit = build_leading_zero_circuit();
  thread_local SpatialEvaluator eval(circuit);
  std::array<std::uint8_t, 5> out{};
  eval.run(lines, out, cfg);
  const bool zero = out[4] != 0;
  unsigned p = 0;
  for (unsigned k = 0; k < 4; ++k) p |= static_cast<unsigned>(out[k] != 0) << k;
  return {zero ? 0u : p, zero};
}

RoundedMantissa rne_round(const RoundFlags& flags, unsigned significand, const SimConfig& cfg) {
  if (significand > 15) throw std::invalid_argument("rne_round: significand is 4 bits");
  if (flags.lsb != ((significand & 1u) != 0))
    throw std::invalid_argument("rne_round: L must be the significand's last bit");
  static const Circuit circuit = build_rne_circuit();
  thread_local SpatialEvaluator eval(circuit);
  const std::array<std::uint8_t, 6> in = {
      static_cast<std::uint8_t>((significand >> 3) & 1u), static_cast<std::uint8_t>((significand >> 2) & 1u),
      static_cast<std::uint8_t>((significand >> 1) & 1u), static_cast<std::uint8_t>(significand & 1u),
      static_cast<std::uint8_t>(flags.round),             static_cast<std::uint8_t>(flags.sticky)};
  std::array<std::uint8_t, 5> out{};
  eval.run(in, out, cfg);
  return {static_cast<unsigned>(out[0] << 3 | out[1] << 2 | out[2] << 1 | out[3]), out[4] != 0};
}

}  // namespace snnfp8
