#include "datapath.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace snnfp8::detail {

Bus constant_bus(std::uint64_t value, std::size_t width) {
  Bus out(width);
  for (std::size_t i = 0; i < width; ++i) out[i] = Wire::constant((value >> i) & 1u);
  return out;
}

Bus zero_extend(Bus x, std::size_t width) {
  x.resize(width, Wire::zero());
  return x;
}

Bus invert(CircuitBuilder& b, const Bus& x) {
  Bus out;
  out.reserve(x.size());
  for (Wire w : x) out.push_back(gate_not(b, w));
  return out;
}

Bus mux_bus(CircuitBuilder& b, Wire s, const Bus& a, const Bus& c) {
  if (a.size() != c.size()) throw std::logic_error("mux_bus width mismatch");
  Bus out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = gate_mux(b, s, a[i], c[i]);
  return out;
}

Bus ripple_add(CircuitBuilder& b, const Bus& x, const Bus& y, Wire cin) {
  if (x.size() != y.size()) throw std::logic_error("ripple_add width mismatch");
  Bus out(x.size() + 1);
  Wire carry = cin;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const SumCarry r = full_adder(b, x[i], y[i], carry);
    out[i] = r.sum;
    carry = r.carry;
  }
  out.back() = carry;
  return out;
}

Bus subtract(CircuitBuilder& b, const Bus& x, const Bus& y) {
  Bus r = ripple_add(b, x, invert(b, y), Wire::one());
  r.pop_back();
  return r;
}

Bus increment(CircuitBuilder& b, const Bus& x) {
  Bus out(x.size());
  Wire carry = Wire::one();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const SumCarry r = half_adder(b, x[i], carry);
    out[i] = r.sum;
    carry = r.carry;
  }
  return out;
}

Wire greater_equal(CircuitBuilder& b, const Bus& x, const Bus& y) {
  if (x.size() != y.size() || x.empty()) throw std::logic_error("greater_equal width mismatch");
  struct Cmp {
    Wire gt, eq;
  };
  // MSB-first list of per-bit comparisons.
  std::vector<Cmp> level;
  for (std::size_t i = x.size(); i-- > 0;)
    level.push_back({gate_and(b, x[i], gate_not(b, y[i])), gate_xnor(b, x[i], y[i])});
  while (level.size() > 1) {
    std::vector<Cmp> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      const Cmp& hi = level[i];
      const Cmp& lo = level[i + 1];
      next.push_back({gate_or(b, hi.gt, gate_and(b, hi.eq, lo.gt)), gate_and(b, hi.eq, lo.eq)});
    }
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  return gate_or(b, level[0].gt, level[0].eq);
}

ShiftOut shift_right_lines(CircuitBuilder& b, const Bus& lines, const Bus& amount) {
  Bus cur = lines;
  Wire sticky = Wire::zero();
  const std::size_t n = cur.size();
  for (std::size_t k = 0; k < amount.size(); ++k) {
    const std::size_t step = std::size_t{1} << k;
    Bus lost(cur.end() - static_cast<std::ptrdiff_t>(std::min(step, n)), cur.end());
    sticky = gate_or(b, sticky, gate_and(b, amount[k], reduce_or(b, lost)));
    Bus next(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Wire from = i >= step ? cur[i - step] : Wire::zero();
      next[i] = gate_mux(b, amount[k], from, cur[i]);
    }
    cur = std::move(next);
  }
  return {cur, sticky};
}

Bus shift_left_lines(CircuitBuilder& b, const Bus& lines, const Bus& amount) {
  Bus cur = lines;
  const std::size_t n = cur.size();
  for (std::size_t k = 0; k < amount.size(); ++k) {
    const std::size_t step = std::size_t{1} << k;
    Bus next(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Wire from = i + step < n ? cur[i + step] : Wire::zero();
      next[i] = gate_mux(b, amount[k], from, cur[i]);
    }
    cur = std::move(next);
  }
  return cur;
}

namespace {

LeadingOne leading_one_pow2(CircuitBuilder& b, std::span<const Wire> lines) {
  if (lines.size() == 1) return {{}, lines[0]};
  const std::size_t half = lines.size() / 2;
  const LeadingOne hi = leading_one_pow2(b, lines.first(half));
  const LeadingOne lo = leading_one_pow2(b, lines.subspan(half));
  LeadingOne out;
  out.any = gate_or(b, hi.any, lo.any);
  for (std::size_t j = 0; j < hi.position.size(); ++j)
    out.position.push_back(gate_mux(b, hi.any, hi.position[j], lo.position[j]));
  out.position.push_back(gate_not(b, hi.any));
  return out;
}

}  // namespace

LeadingOne leading_one(CircuitBuilder& b, const Bus& lines) {
  if (lines.empty()) throw std::logic_error("leading_one of empty bus");
  Bus padded = lines;
  padded.resize(std::bit_ceil(lines.size()), Wire::zero());
  return leading_one_pow2(b, padded);
}

namespace {
constexpr const char* kFieldNames[8] = {"s", "e3", "e2", "e1", "e0", "m2", "m1", "m0"};
}

Fp8Bus add_fp8_inputs(CircuitBuilder& b, const char* prefix) {
  Fp8Bus x;
  for (int i = 0; i < 8; ++i) x[i] = b.add_input(std::string(prefix) + "." + kFieldNames[i]);
  return x;
}

void add_fp8_outputs(CircuitBuilder& b, const Fp8Bus& y, const char* prefix) {
  for (int i = 0; i < 8; ++i) b.add_output(y[i], std::string(prefix) + "." + kFieldNames[i]);
}

Wire detect_nan(CircuitBuilder& b, const Fp8Bus& x) {
  return reduce_and(b, {x[1], x[2], x[3], x[4], x[5], x[6], x[7]});
}

Wire implicit_bit(CircuitBuilder& b, const Fp8Bus& x) {
  return reduce_or(b, {x[1], x[2], x[3], x[4]});
}

Bus effective_exponent_bus(CircuitBuilder& b, const Fp8Bus& x, Wire implicit) {
  return {gate_or(b, x[4], gate_not(b, implicit)), x[3], x[2], x[1]};
}

RoundedSignificand round_nearest_even(CircuitBuilder& b, const Bus& significand, Wire round,
                                      Wire sticky) {
  const Wire lsb = significand.back();
  Wire carry = gate_and(b, round, gate_or(b, sticky, lsb));
  RoundedSignificand out;
  out.significand.resize(significand.size());
  for (std::size_t i = significand.size(); i-- > 0;) {
    const SumCarry r = half_adder(b, significand[i], carry);
    out.significand[i] = r.sum;
    carry = r.carry;
  }
  out.carry = carry;
  return out;
}

Fp8Bus round_and_pack(CircuitBuilder& b, const RoundInput& in, OverflowPolicy policy) {
  const RoundedSignificand q = round_nearest_even(b, in.significand, in.round, in.sticky);
  const Bus bumped = increment(b, in.exponent);

  // A carry out of the significand means 10.000: exponent + 1, mantissa 000.
  // Without it, a zero leading line marks a subnormal (exponent field 0).
  Bus exponent(in.exponent.size());
  for (std::size_t i = 0; i < exponent.size(); ++i)
    exponent[i] = gate_mux(b, q.carry, bumped[i], gate_and(b, q.significand[0], in.exponent[i]));
  const Bus mantissa = {q.significand[1], q.significand[2], q.significand[3]};

  Wire beyond = Wire::zero();
  for (std::size_t i = 4; i < exponent.size(); ++i) beyond = gate_or(b, beyond, exponent[i]);
  const Wire nan_slot = reduce_and(
      b, {exponent[0], exponent[1], exponent[2], exponent[3], mantissa[0], mantissa[1], mantissa[2]});
  const Wire overflow = gate_or(b, beyond, nan_slot);

  Wire sign = in.sign;
  Fp8Bus y;
  if (policy == OverflowPolicy::Saturate) {
    // Clamp to +-448: E = 1111, M = 110.
    for (int i = 0; i < 4; ++i) y[4 - i] = gate_or(b, exponent[i], overflow);
    y[5] = gate_or(b, mantissa[0], overflow);
    y[6] = gate_or(b, mantissa[1], overflow);
    y[7] = gate_and(b, mantissa[2], gate_not(b, overflow));
    const Wire nan = in.nan;
    for (int i = 1; i < 8; ++i) y[i] = gate_or(b, y[i], nan);
    y[0] = gate_and(b, sign, gate_not(b, nan));
  } else {
    const Wire nan = gate_or(b, in.nan, overflow);
    for (int i = 0; i < 4; ++i) y[4 - i] = gate_or(b, exponent[i], nan);
    for (int i = 0; i < 3; ++i) y[5 + i] = gate_or(b, mantissa[i], nan);
    y[0] = gate_and(b, sign, gate_not(b, nan));
  }
  return y;
}

}  // namespace snnfp8::detail
