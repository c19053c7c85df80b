#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "snnfp8/circuit.hpp"

namespace snnfp8 {

inline constexpr double kAndThreshold = 1.5;
inline constexpr double kOrThreshold = 0.5;
inline constexpr double kNotThreshold = 0.5;

// Gate primitives on a builder. Each gate is a fixed neuron template with
// fan-in 2; constant operands are folded away instead of spending neurons.
//
//   AND  1 neuron   I[a + b >= 1.5]
//   OR   1 neuron   I[a + b >= 0.5]
//   NOT  1 neuron   I[1 - a >= 0.5]   (bias +1, inhibitory -1)
//   XOR  4 neurons  AND(OR(a,b), NOT(AND(a,b)))          depth 3
//   MUX  4 neurons  OR(AND(s,a), AND(NOT(s),b))          depth 3
Wire gate_and(CircuitBuilder& b, Wire x, Wire y);
Wire gate_or(CircuitBuilder& b, Wire x, Wire y);
Wire gate_not(CircuitBuilder& b, Wire x);
Wire gate_xor(CircuitBuilder& b, Wire x, Wire y);
Wire gate_xnor(CircuitBuilder& b, Wire x, Wire y);
/// Selects `a` when s = 1 and `c` when s = 0.
Wire gate_mux(CircuitBuilder& b, Wire s, Wire a, Wire c);

struct SumCarry {
  Wire sum;
  Wire carry;
};

SumCarry half_adder(CircuitBuilder& b, Wire x, Wire y);
/// XOR/XOR for the sum, OR(AND(x,y), AND(x^y, cin)) for the carry.
SumCarry full_adder(CircuitBuilder& b, Wire x, Wire y, Wire cin);

/// Balanced fan-in-2 reductions; empty input yields the identity constant.
Wire reduce_or(CircuitBuilder& b, std::vector<Wire> xs);
Wire reduce_and(CircuitBuilder& b, std::vector<Wire> xs);

enum class GateKind { And, Or, Not, Xor, Mux2, HalfAdder, FullAdder };

std::string_view to_string(GateKind kind);
/// Parses "and", "or", "not", "xor", "mux", "half_adder", "full_adder".
GateKind parse_gate_kind(std::string_view name);
const std::vector<GateKind>& all_gate_kinds();

/// A standalone gate or cell with named ports; its circuit is immutable.
struct Subcircuit {
  Circuit circuit;

  const std::vector<std::string>& input_ports() const { return circuit.input_names(); }
  const std::vector<std::string>& output_ports() const { return circuit.output_names(); }
  std::uint32_t depth_span() const { return circuit.depth(); }
};

/// Port conventions: AND/OR/XOR (a,b)->y, NOT a->y, MUX2 (s,a,b)->y,
/// HALF_ADDER (a,b)->(sum,carry), FULL_ADDER (a,b,cin)->(sum,cout).
Subcircuit build_gate(GateKind kind);

/// Bit-level reference semantics of a gate kind, one entry per output port.
std::vector<std::uint8_t> gate_truth(GateKind kind, const std::vector<std::uint8_t>& inputs);

/// Flattens instances of subcircuits into one circuit. Every instance input
/// port must be driven by exactly one primary input or instance output.
class Composer {
 public:
  std::size_t add(const Subcircuit& sub);

  /// Drives an instance input from a (possibly shared) primary input.
  void bind_input(std::string_view primary, std::size_t instance, std::string_view port);
  /// Drives `to.in_port` from `from.out_port`.
  void connect(std::size_t from, std::string_view out_port, std::size_t to,
               std::string_view in_port);
  void bind_output(std::string_view primary, std::size_t instance, std::string_view port);

  /// Throws CircuitError for dangling ports, double drivers or cycles.
  Circuit build() const;

 private:
  struct Driver {
    bool from_primary = false;
    std::size_t primary = 0;
    std::size_t instance = 0;
    std::size_t port = 0;
  };
  struct Instance {
    Subcircuit sub;
    std::vector<std::optional<Driver>> drivers;
  };

  std::size_t primary_index(std::string_view name);
  Instance& instance(std::size_t i);

  std::vector<Instance> instances_;
  std::vector<std::string> primaries_;
  std::vector<std::tuple<std::string, std::size_t, std::size_t>> outputs_;
};

}  // namespace snnfp8
