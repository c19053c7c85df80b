#include <gtest/gtest.h>

#include "fp8_reference.hpp"
#include "snnfp8/fp8_unit.hpp"
#include "snnfp8/multiplier.hpp"

using namespace snnfp8;

namespace {

Fp8Code F(unsigned s, unsigned e, unsigned m) { return Fp8Code::from_fields(s, e, m); }

void expect_exhaustive(const Circuit& c, const SimConfig& cfg, OverflowPolicy policy) {
  Fp8BinaryUnit unit(c);
  for (Fp8Code a : finite_codes())
    for (Fp8Code b : finite_codes())
      ASSERT_EQ(unit.apply(a, b, cfg), oracle_mul(a, b, policy)) << to_hex(a) << " * " << to_hex(b);
}

}  // namespace

TEST(Multiplier, Ports) {
  const Circuit& c = multiplier_circuit();
  EXPECT_EQ(c.input_count(), 16u);
  EXPECT_EQ(c.output_count(), 8u);
  EXPECT_EQ(c.input_names()[0], "a.s");
  EXPECT_EQ(c.input_names()[8], "b.s");
  EXPECT_EQ(c.output_names()[7], "y.m0");
}

TEST(Multiplier, FrozenResourceCounts) {
  const CircuitStats st = circuit_stats(multiplier_circuit());
  EXPECT_EQ(st.neurons, 655u);
  EXPECT_EQ(st.synapses, 1153u);
  EXPECT_EQ(st.depth, 69u);
  EXPECT_EQ(st.components, 1u);
  EXPECT_EQ(st.neurons_per_stage.at("sign"), 4u);
  EXPECT_EQ(st.neurons_per_stage.at("special"), 13u);
  EXPECT_EQ(st.neurons_per_stage.at("exponent"), 72u);
  EXPECT_EQ(st.neurons_per_stage.at("mantissa"), 124u);
  EXPECT_EQ(st.neurons_per_stage.at("normalize"), 344u);
  EXPECT_EQ(st.neurons_per_stage.at("sticky_extra"), 6u);
  EXPECT_EQ(st.neurons_per_stage.at("round"), 92u);
  EXPECT_GE(st.neurons, 600u);
  EXPECT_LE(st.neurons, 750u);
}

TEST(Multiplier, Examples) {
  EXPECT_EQ(snn_mul(F(0, 7, 0), F(0, 7, 0)), F(0, 7, 0));
  EXPECT_EQ(snn_mul(F(0, 0, 4), F(0, 8, 0)), F(0, 1, 0));  // 2^-7 * 2 = 2^-6
  EXPECT_EQ(snn_mul(kCanonicalNaN, F(0, 7, 0)), kCanonicalNaN);
  EXPECT_EQ(snn_mul(Fp8Code(0xFF), Fp8Code(0x00)), kCanonicalNaN);
  EXPECT_EQ(snn_mul(kMaxFinite, kMaxFinite), kMaxFinite);
  EXPECT_EQ(snn_mul(kMaxFinite, kMaxFinite, {}, OverflowPolicy::NaN), kCanonicalNaN);
}

TEST(Multiplier, ExhaustiveIdeal) { expect_exhaustive(multiplier_circuit(), {}, OverflowPolicy::Saturate); }

TEST(Multiplier, ExhaustiveLeaky) {
  expect_exhaustive(multiplier_circuit(), SimConfig::leaky(0.01), OverflowPolicy::Saturate);
}

TEST(Multiplier, ExhaustiveNanOnOverflow) {
  expect_exhaustive(multiplier_circuit(OverflowPolicy::NaN), {}, OverflowPolicy::NaN);
}

TEST(Multiplier, NanOperandsGiveCanonicalNan) {
  for (Fp8Code nan : {Fp8Code(0x7F), Fp8Code(0xFF)})
    for (unsigned c = 0; c < 256; ++c) {
      const Fp8Code x(static_cast<std::uint8_t>(c));
      EXPECT_EQ(snn_mul(nan, x), kCanonicalNaN);
      EXPECT_EQ(snn_mul(x, nan), kCanonicalNaN);
    }
}

TEST(Multiplier, Commutative) {
  for (Fp8Code a : finite_codes())
    for (Fp8Code b : finite_codes()) ASSERT_EQ(snn_mul(a, b), snn_mul(b, a));
}

TEST(Multiplier, StickyExtraIsLive) {
  const Circuit without = build_multiplier({OverflowPolicy::Saturate, false});
  Fp8BinaryUnit unit(without);
  std::size_t sub_normal_fail = 0, total_fail = 0;
  for (Fp8Code a : finite_codes())
    for (Fp8Code b : finite_codes()) {
      if (unit.apply(a, b) == oracle_mul(a, b)) continue;
      ++total_fail;
      if (classify(a) == Fp8Class::Subnormal && classify(b) == Fp8Class::Normal) ++sub_normal_fail;
    }
  EXPECT_GT(sub_normal_fail, 0u);
  EXPECT_GT(total_fail, 0u);
  // The correction gates are the only difference.
  EXPECT_EQ(circuit_stats(multiplier_circuit()).neurons - circuit_stats(without).neurons, 11u);
}

TEST(Multiplier, SparsityInRange) {
  Fp8BinaryUnit unit(multiplier_circuit());
  double spikes = 0, n = 0;
  for (Fp8Code a : finite_codes())
    for (Fp8Code b : finite_codes()) {
      unit.apply(a, b);
      spikes += static_cast<double>(unit.last_spike_count());
      ++n;
    }
  const double sparsity = spikes / n / static_cast<double>(multiplier_circuit().neuron_count());
  EXPECT_GE(sparsity, 0.3);
  EXPECT_LE(sparsity, 0.7);
}
