#include "snnfp8/multiplier.hpp"

#include "datapath.hpp"
#include "snnfp8/fp8_unit.hpp"

namespace snnfp8 {

using detail::Bus;

namespace {

// 4x4 Braun array: carry-save rows of adders followed by a ripple merge.
// Operands and the product are LSB-first.
Bus braun_multiply(CircuitBuilder& b, const Bus& x, const Bus& y) {
  const std::size_t n = x.size();
  std::vector<Bus> pp(n, Bus(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) pp[j][i] = gate_and(b, x[i], y[j]);

  Bus product(2 * n, Wire::zero());
  Bus sum = pp[0];
  Bus carry(n, Wire::zero());
  product[0] = sum[0];
  for (std::size_t j = 1; j < n; ++j) {
    Bus next_sum(n), next_carry(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Wire above = i + 1 < n ? sum[i + 1] : Wire::zero();
      const SumCarry r = full_adder(b, pp[j][i], above, carry[i]);
      next_sum[i] = r.sum;
      next_carry[i] = r.carry;
    }
    sum = std::move(next_sum);
    carry = std::move(next_carry);
    product[j] = sum[0];
  }
  Bus upper(n), carries = carry;
  for (std::size_t k = 0; k < n; ++k) upper[k] = k + 1 < n ? sum[k + 1] : Wire::zero();
  const Bus merged = detail::ripple_add(b, upper, carries);
  for (std::size_t k = 0; k < n; ++k) product[n + k] = merged[k];
  return product;
}

}  // namespace

Circuit build_multiplier(const MultiplierOptions& options) {
  using namespace detail;
  CircuitBuilder b;
  const Fp8Bus a = add_fp8_inputs(b, "a");
  const Fp8Bus c = add_fp8_inputs(b, "b");

  b.set_stage("sign");
  const Wire sign = gate_xor(b, a[0], c[0]);

  b.set_stage("special");
  const Wire nan = gate_or(b, detect_nan(b, a), detect_nan(b, c));

  b.set_stage("exponent");
  const Wire ha = implicit_bit(b, a);
  const Wire hc = implicit_bit(b, c);
  const Bus exp_sum = ripple_add(b, effective_exponent_bus(b, a, ha),
                                 effective_exponent_bus(b, c, hc));  // 5 bits, 2..30
  const Bus e_raw = [&] {
    Bus r = ripple_add(b, zero_extend(exp_sum, 6), constant_bus(64 - kExponentBias, 6));
    r.pop_back();
    return r;  // 6-bit two's complement, -5..23
  }();
  const Wire negative = e_raw[5];

  b.set_stage("mantissa");
  const Bus product = braun_multiply(b, {a[7], a[6], a[5], ha}, {c[7], c[6], c[5], hc});
  const Bus p_lines = {product[7], product[6], product[5], product[4],
                       product[3], product[2], product[1], product[0]};

  b.set_stage("normalize");
  // Left-normalisation amount s = min(lz(P), E_raw), bounded to [0, 7].
  const Bus lz = leading_one(b, p_lines).position;
  const Bus e_low = {e_raw[0], e_raw[1], e_raw[2]};
  const Wire e_large = gate_or(b, e_raw[3], e_raw[4]);
  const Wire limit = gate_and(b, gate_not(b, e_large), gate_not(b, greater_equal(b, e_low, lz)));
  const Bus shift = mux_bus(b, limit, e_low, lz);

  // The shifter register carries P7..P1; P0 is held out as the boundary bit.
  const Wire held = product[0];
  const Bus register_lines = {product[7], product[6], product[5], product[4],
                              product[3], product[2], product[1], Wire::zero()};
  const Bus left = shift_left_lines(b, register_lines, shift);
  Bus left_sig = {left[0], left[1], left[2], left[3]};
  Wire left_round = left[4];
  Wire left_sticky = reduce_or(b, {left[5], left[6], left[7]});

  if (options.sticky_extra) {
    // Shift-amount decode stays in the normalize stage.
    const Wire not_s2 = gate_not(b, shift[2]);
    const Wire s10 = gate_and(b, shift[1], shift[0]);
    const Wire shift_ge4 = shift[2];
    const Wire shift_eq3 = gate_and(b, not_s2, s10);
    const Wire shift_lt3 = gate_and(b, not_s2, gate_not(b, s10));
    b.set_stage("sticky_extra");
    left_sig[3] = gate_or(b, left_sig[3], gate_and(b, shift_ge4, held));
    left_round = gate_or(b, left_round, gate_and(b, shift_eq3, held));
    left_sticky = gate_or(b, left_sticky, gate_and(b, shift_lt3, held));
    b.set_stage("normalize");
  }

  // E_raw - s + 1, the biased exponent of the left-shifted window.
  const Bus e_raw5 = {e_raw[0], e_raw[1], e_raw[2], e_raw[3], e_raw[4]};
  const Bus left_exp = increment(b, subtract(b, e_raw5, zero_extend(shift, 5)));

  // E_raw < 0: shift right by -E_raw = 7 - E_sum into the subnormal frame.
  const Bus right_amount = invert(b, {exp_sum[0], exp_sum[1], exp_sum[2]});
  const ShiftOut right = shift_right_lines(b, p_lines, right_amount);
  const Bus right_sig = {right.lines[0], right.lines[1], right.lines[2], right.lines[3]};
  const Wire right_sticky =
      reduce_or(b, {right.lines[5], right.lines[6], right.lines[7], right.sticky});

  const Bus sig = mux_bus(b, negative, right_sig, left_sig);
  const Wire round = gate_mux(b, negative, right.lines[4], left_round);
  const Wire sticky = gate_mux(b, negative, right_sticky, left_sticky);
  const Bus exponent = mux_bus(b, negative, constant_bus(1, 5), left_exp);

  b.set_stage("round");
  const Fp8Bus y = round_and_pack(b, {sign, exponent, sig, round, sticky, nan}, options.overflow);
  add_fp8_outputs(b, y, "y");
  return b.build();
}

const Circuit& multiplier_circuit(OverflowPolicy policy) {
  static const Circuit saturating = build_multiplier({OverflowPolicy::Saturate, true});
  static const Circuit non_saturating = build_multiplier({OverflowPolicy::NaN, true});
  return policy == OverflowPolicy::Saturate ? saturating : non_saturating;
}

Fp8Code snn_mul(Fp8Code a, Fp8Code b, const SimConfig& cfg, OverflowPolicy policy) {
  thread_local Fp8BinaryUnit saturating(multiplier_circuit(OverflowPolicy::Saturate));
  thread_local Fp8BinaryUnit non_saturating(multiplier_circuit(OverflowPolicy::NaN));
  return (policy == OverflowPolicy::Saturate ? saturating : non_saturating).apply(a, b, cfg);
}

}  // namespace snnfp8
