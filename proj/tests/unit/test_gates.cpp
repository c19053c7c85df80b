#include <gtest/gtest.h>

#include "snnfp8/gates.hpp"
#include "snnfp8/simulator.hpp"

using namespace snnfp8;

namespace {

std::vector<std::uint8_t> row_bits(std::size_t row, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = (row >> (n - 1 - i)) & 1u;
  return bits;
}

std::uint8_t boolean_reference(GateKind k, const std::vector<std::uint8_t>& x) {
  switch (k) {
    case GateKind::And: return x[0] && x[1];
    case GateKind::Or: return x[0] || x[1];
    case GateKind::Not: return !x[0];
    case GateKind::Xor: return x[0] != x[1];
    case GateKind::Mux2: return x[0] ? x[1] : x[2];
    default: return 0;
  }
}

}  // namespace

TEST(Gates, TruthTablesUnderLeakage) {
  for (GateKind k : all_gate_kinds()) {
    const Circuit c = build_gate(k).circuit;
    const std::size_t n = c.input_count();
    for (double beta : {1.0, 0.5, 0.1, 0.01}) {
      const SimConfig cfg = beta == 1.0 ? SimConfig::ideal() : SimConfig::leaky(beta);
      for (std::size_t row = 0; row < (1u << n); ++row) {
        const auto in = row_bits(row, n);
        EXPECT_EQ(evaluate_spatial(c, in, cfg).outputs, gate_truth(k, in))
            << to_string(k) << " row " << row << " beta " << beta;
      }
    }
  }
}

TEST(Gates, TruthMatchesBooleanFormulas) {
  for (GateKind k : {GateKind::And, GateKind::Or, GateKind::Not, GateKind::Xor, GateKind::Mux2}) {
    const std::size_t n = build_gate(k).circuit.input_count();
    for (std::size_t row = 0; row < (1u << n); ++row) {
      const auto in = row_bits(row, n);
      EXPECT_EQ(gate_truth(k, in)[0], boolean_reference(k, in)) << to_string(k);
    }
  }
}

TEST(Gates, AndExamples) {
  const Circuit c = build_gate(GateKind::And).circuit;
  for (auto [a, b, y] : std::vector<std::tuple<int, int, int>>{{1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 0}}) {
    const std::vector<std::uint8_t> in = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)};
    EXPECT_EQ(evaluate_spatial(c, in).outputs[0], y);
  }
}

TEST(Gates, Thresholds) {
  EXPECT_EQ(build_gate(GateKind::And).circuit.neurons()[0].threshold, 1.5);
  EXPECT_EQ(build_gate(GateKind::Or).circuit.neurons()[0].threshold, 0.5);
  const auto not_neuron = build_gate(GateKind::Not).circuit.neurons()[0];
  EXPECT_EQ(not_neuron.threshold, 0.5);
  EXPECT_EQ(not_neuron.bias, 1.0);
  EXPECT_EQ(build_gate(GateKind::Not).circuit.synapses()[0].weight, -1.0);
}

TEST(Gates, FrozenSizes) {
  struct Expect {
    GateKind kind;
    std::size_t neurons;
    std::uint32_t depth;
  };
  for (auto e : {Expect{GateKind::And, 1, 1}, Expect{GateKind::Or, 1, 1}, Expect{GateKind::Not, 1, 1},
                 Expect{GateKind::Xor, 4, 3}, Expect{GateKind::Mux2, 4, 3}}) {
    const auto st = circuit_stats(build_gate(e.kind).circuit);
    EXPECT_EQ(st.neurons, e.neurons) << to_string(e.kind);
    EXPECT_EQ(st.depth, e.depth) << to_string(e.kind);
  }
}

TEST(Gates, MuxSelects) {
  const Circuit c = build_gate(GateKind::Mux2).circuit;
  for (std::uint8_t a : {0, 1})
    for (std::uint8_t b : {0, 1}) {
      EXPECT_EQ(evaluate_spatial(c, std::vector<std::uint8_t>{1, a, b}).outputs[0], a);
      EXPECT_EQ(evaluate_spatial(c, std::vector<std::uint8_t>{0, a, b}).outputs[0], b);
    }
}

TEST(Gates, FullAdderBruteForce) {
  const Circuit c = build_gate(GateKind::FullAdder).circuit;
  for (unsigned row = 0; row < 8; ++row) {
    const auto in = row_bits(row, 3);
    const unsigned sum = in[0] + in[1] + in[2];
    const auto out = evaluate_spatial(c, in).outputs;
    EXPECT_EQ(out[0], sum & 1u);
    EXPECT_EQ(out[1], sum >> 1);
  }
}

TEST(Gates, ParseKinds) {
  for (GateKind k : all_gate_kinds()) EXPECT_EQ(parse_gate_kind(to_string(k)), k);
  EXPECT_THROW(parse_gate_kind("nand"), CircuitError);
}

TEST(Gates, ConstantFolding) {
  CircuitBuilder b;
  const Wire x = b.add_input("x");
  EXPECT_EQ(gate_and(b, x, Wire::one()), x);
  EXPECT_TRUE(gate_and(b, x, Wire::zero()).is_zero());
  EXPECT_TRUE(gate_or(b, x, Wire::one()).is_one());
  EXPECT_TRUE(gate_not(b, Wire::zero()).is_one());
  EXPECT_EQ(b.neuron_count(), 0u);
}

TEST(Compose, DoubleNegationIsIdentity) {
  Composer comp;
  const auto n1 = comp.add(build_gate(GateKind::Not));
  const auto n2 = comp.add(build_gate(GateKind::Not));
  comp.bind_input("x", n1, "a");
  comp.connect(n1, "y", n2, "a");
  comp.bind_output("y", n2, "y");
  const Circuit c = comp.build();
  for (std::uint8_t x : {0, 1}) EXPECT_EQ(evaluate_spatial(c, std::vector<std::uint8_t>{x}).outputs[0], x);
}

TEST(Compose, RippleCarryAdds4Bits) {
  Composer comp;
  std::vector<std::size_t> fa;
  for (int i = 0; i < 4; ++i) fa.push_back(comp.add(build_gate(GateKind::FullAdder)));
  for (int i = 0; i < 4; ++i) {
    comp.bind_input("a" + std::to_string(i), fa[i], "a");
    comp.bind_input("b" + std::to_string(i), fa[i], "b");
    if (i == 0)
      comp.bind_input("cin", fa[0], "cin");
    else
      comp.connect(fa[i - 1], "cout", fa[i], "cin");
    comp.bind_output("s" + std::to_string(i), fa[i], "sum");
  }
  comp.bind_output("cout", fa[3], "cout");
  const Circuit c = comp.build();
  SpatialEvaluator eval(c);
  std::vector<std::uint8_t> in(c.input_count()), out(c.output_count());
  for (unsigned a = 0; a < 16; ++a)
    for (unsigned b = 0; b < 16; ++b) {
      for (int i = 0; i < 4; ++i) {
        in[c.input_index("a" + std::to_string(i))] = (a >> i) & 1u;
        in[c.input_index("b" + std::to_string(i))] = (b >> i) & 1u;
      }
      in[c.input_index("cin")] = 0;
      eval.run(in, out, {});
      unsigned got = 0;
      for (int i = 0; i < 4; ++i) got |= static_cast<unsigned>(out[c.output_index("s" + std::to_string(i))]) << i;
      got |= static_cast<unsigned>(out[c.output_index("cout")]) << 4;
      EXPECT_EQ(got, a + b);
    }
}

TEST(Compose, TwoUnconnectedGatesAreTwoComponents) {
  Composer comp;
  const auto g1 = comp.add(build_gate(GateKind::And));
  const auto g2 = comp.add(build_gate(GateKind::Or));
  comp.bind_input("a", g1, "a");
  comp.bind_input("b", g1, "b");
  comp.bind_input("c", g2, "a");
  comp.bind_input("d", g2, "b");
  comp.bind_output("y1", g1, "y");
  comp.bind_output("y2", g2, "y");
  EXPECT_EQ(circuit_stats(comp.build()).components, 2u);
}

TEST(Compose, Errors) {
  {
    Composer comp;
    const auto g = comp.add(build_gate(GateKind::And));
    comp.bind_input("a", g, "a");
    comp.bind_output("y", g, "y");
    EXPECT_THROW(comp.build(), CircuitError);  // port b dangling
  }
  {
    Composer comp;
    const auto g = comp.add(build_gate(GateKind::Not));
    comp.bind_input("a", g, "a");
    EXPECT_THROW(comp.bind_input("b", g, "a"), CircuitError);  // driven twice
  }
  {
    Composer comp;
    const auto g1 = comp.add(build_gate(GateKind::Not));
    const auto g2 = comp.add(build_gate(GateKind::Not));
    comp.connect(g1, "y", g2, "a");
    comp.connect(g2, "y", g1, "a");
    comp.bind_output("y", g2, "y");
    EXPECT_THROW(comp.build(), CircuitError);  // cycle
  }
  {
    Composer comp;
    const auto g = comp.add(build_gate(GateKind::Not));
    EXPECT_THROW(comp.bind_input("a", g, "nope"), CircuitError);
  }
}
