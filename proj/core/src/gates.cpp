#include "snnfp8/gates.hpp"

#include <algorithm>

namespace snnfp8 {

Wire gate_and(CircuitBuilder& b, Wire x, Wire y) {
  if (x.is_zero() || y.is_zero()) return Wire::zero();
  if (x.is_one()) return y;
  if (y.is_one()) return x;
  if (x == y) return x;
  return b.add_neuron(kAndThreshold, {{x, 1.0}, {y, 1.0}});
}

Wire gate_or(CircuitBuilder& b, Wire x, Wire y) {
  if (x.is_one() || y.is_one()) return Wire::one();
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x == y) return x;
  return b.add_neuron(kOrThreshold, {{x, 1.0}, {y, 1.0}});
}

Wire gate_not(CircuitBuilder& b, Wire x) {
  if (x.is_const()) return Wire::constant(x.is_zero());
  return b.add_neuron(kNotThreshold, {{Wire::one(), 1.0}, {x, -1.0}});
}

Wire gate_xor(CircuitBuilder& b, Wire x, Wire y) {
  if (x.is_const() && y.is_const()) return Wire::constant(x.is_one() != y.is_one());
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.is_one()) return gate_not(b, y);
  if (y.is_one()) return gate_not(b, x);
  if (x == y) return Wire::zero();
  const Wire any = gate_or(b, x, y);
  const Wire both = gate_and(b, x, y);
  return gate_and(b, any, gate_not(b, both));
}

Wire gate_xnor(CircuitBuilder& b, Wire x, Wire y) { return gate_not(b, gate_xor(b, x, y)); }

Wire gate_mux(CircuitBuilder& b, Wire s, Wire a, Wire c) {
  if (s.is_one()) return a;
  if (s.is_zero()) return c;
  if (a == c) return a;
  if (a.is_zero()) return gate_and(b, gate_not(b, s), c);
  if (c.is_zero()) return gate_and(b, s, a);
  if (a.is_one()) return gate_or(b, s, c);
  if (c.is_one()) return gate_or(b, gate_not(b, s), a);
  const Wire take_a = gate_and(b, s, a);
  const Wire take_c = gate_and(b, gate_not(b, s), c);
  return gate_or(b, take_a, take_c);
}

SumCarry half_adder(CircuitBuilder& b, Wire x, Wire y) {
  return {gate_xor(b, x, y), gate_and(b, x, y)};
}

SumCarry full_adder(CircuitBuilder& b, Wire x, Wire y, Wire cin) {
  // Move constants to the carry-in slot so the folds below see them.
  if (x.is_const()) std::swap(x, cin);
  if (y.is_const()) std::swap(y, cin);
  if (cin.is_zero()) return half_adder(b, x, y);
  if (cin.is_one()) {
    if (x.is_const() || y.is_const()) {
      // At least two constants: reduce to a half adder on the remaining wire.
      const Wire v = x.is_const() ? y : x;
      const Wire k = x.is_const() ? x : y;
      if (k.is_zero()) return {gate_not(b, v), v};
      return {v, Wire::one()};
    }
    return {gate_xnor(b, x, y), gate_or(b, x, y)};
  }
  const Wire p = gate_xor(b, x, y);
  const Wire sum = gate_xor(b, p, cin);
  const Wire carry = gate_or(b, gate_and(b, x, y), gate_and(b, p, cin));
  return {sum, carry};
}

namespace {

template <typename Op>
Wire reduce_tree(CircuitBuilder& b, std::vector<Wire> xs, Wire identity, Op op) {
  if (xs.empty()) return identity;
  while (xs.size() > 1) {
    std::vector<Wire> next;
    next.reserve((xs.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) next.push_back(op(b, xs[i], xs[i + 1]));
    if (xs.size() % 2) next.push_back(xs.back());
    xs = std::move(next);
  }
  return xs.front();
}

}  // namespace

Wire reduce_or(CircuitBuilder& b, std::vector<Wire> xs) {
  return reduce_tree(b, std::move(xs), Wire::zero(), gate_or);
}

Wire reduce_and(CircuitBuilder& b, std::vector<Wire> xs) {
  return reduce_tree(b, std::move(xs), Wire::one(), gate_and);
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "and";
    case GateKind::Or: return "or";
    case GateKind::Not: return "not";
    case GateKind::Xor: return "xor";
    case GateKind::Mux2: return "mux";
    case GateKind::HalfAdder: return "half_adder";
    case GateKind::FullAdder: return "full_adder";
  }
  return "?";
}

const std::vector<GateKind>& all_gate_kinds() {
  static const std::vector<GateKind> kinds = {GateKind::And,  GateKind::Or,
                                              GateKind::Not,  GateKind::Xor,
                                              GateKind::Mux2, GateKind::HalfAdder,
                                              GateKind::FullAdder};
  return kinds;
}

GateKind parse_gate_kind(std::string_view name) {
  for (GateKind k : all_gate_kinds())
    if (to_string(k) == name) return k;
  if (name == "mux2") return GateKind::Mux2;
  throw CircuitError("unknown gate kind: " + std::string(name));
}

Subcircuit build_gate(GateKind kind) {
  CircuitBuilder b;
  b.set_stage(to_string(kind));
  switch (kind) {
    case GateKind::And: {
      const Wire a = b.add_input("a"), c = b.add_input("b");
      b.add_output(gate_and(b, a, c), "y");
      break;
    }
    case GateKind::Or: {
      const Wire a = b.add_input("a"), c = b.add_input("b");
      b.add_output(gate_or(b, a, c), "y");
      break;
    }
    case GateKind::Not: {
      const Wire a = b.add_input("a");
      b.add_output(gate_not(b, a), "y");
      break;
    }
    case GateKind::Xor: {
      const Wire a = b.add_input("a"), c = b.add_input("b");
      b.add_output(gate_xor(b, a, c), "y");
      break;
    }
    case GateKind::Mux2: {
      const Wire s = b.add_input("s"), a = b.add_input("a"), c = b.add_input("b");
      b.add_output(gate_mux(b, s, a, c), "y");
      break;
    }
    case GateKind::HalfAdder: {
      const Wire a = b.add_input("a"), c = b.add_input("b");
      const SumCarry r = half_adder(b, a, c);
      b.add_output(r.sum, "sum");
      b.add_output(r.carry, "carry");
      break;
    }
    case GateKind::FullAdder: {
      const Wire a = b.add_input("a"), c = b.add_input("b"), cin = b.add_input("cin");
      const SumCarry r = full_adder(b, a, c, cin);
      b.add_output(r.sum, "sum");
      b.add_output(r.carry, "cout");
      break;
    }
  }
  return {b.build()};
}

std::vector<std::uint8_t> gate_truth(GateKind kind, const std::vector<std::uint8_t>& in) {
  auto bit = [](bool v) { return static_cast<std::uint8_t>(v); };
  switch (kind) {
    case GateKind::And: return {bit(in.at(0) && in.at(1))};
    case GateKind::Or: return {bit(in.at(0) || in.at(1))};
    case GateKind::Not: return {bit(!in.at(0))};
    case GateKind::Xor: return {bit(in.at(0) != in.at(1))};
    case GateKind::Mux2: return {in.at(0) ? in.at(1) : in.at(2)};
    case GateKind::HalfAdder: {
      const int s = in.at(0) + in.at(1);
      return {bit(s & 1), bit(s >> 1)};
    }
    case GateKind::FullAdder: {
      const int s = in.at(0) + in.at(1) + in.at(2);
      return {bit(s & 1), bit(s >> 1)};
    }
  }
  return {};
}

std::size_t Composer::add(const Subcircuit& sub) {
  instances_.push_back({sub, std::vector<std::optional<Driver>>(sub.circuit.input_count())});
  return instances_.size() - 1;
}

Composer::Instance& Composer::instance(std::size_t i) {
  if (i >= instances_.size()) throw CircuitError("unknown instance");
  return instances_[i];
}

std::size_t Composer::primary_index(std::string_view name) {
  auto it = std::find(primaries_.begin(), primaries_.end(), name);
  if (it != primaries_.end()) return static_cast<std::size_t>(it - primaries_.begin());
  primaries_.emplace_back(name);
  return primaries_.size() - 1;
}

void Composer::bind_input(std::string_view primary, std::size_t inst, std::string_view port) {
  Instance& target = instance(inst);
  const std::size_t p = target.sub.circuit.input_index(port);
  if (target.drivers[p]) throw CircuitError("port driven twice: " + std::string(port));
  Driver d;
  d.from_primary = true;
  d.primary = primary_index(primary);
  target.drivers[p] = d;
}

void Composer::connect(std::size_t from, std::string_view out_port, std::size_t to,
                       std::string_view in_port) {
  const std::size_t q = instance(from).sub.circuit.output_index(out_port);
  Instance& target = instance(to);
  const std::size_t p = target.sub.circuit.input_index(in_port);
  if (target.drivers[p]) throw CircuitError("port driven twice: " + std::string(in_port));
  Driver d;
  d.instance = from;
  d.port = q;
  target.drivers[p] = d;
}

void Composer::bind_output(std::string_view primary, std::size_t inst, std::string_view port) {
  const std::size_t q = instance(inst).sub.circuit.output_index(port);
  outputs_.emplace_back(std::string(primary), inst, q);
}

Circuit Composer::build() const {
  std::vector<NeuronId> base(instances_.size() + 1, 0);
  for (std::size_t i = 0; i < instances_.size(); ++i)
    base[i + 1] = base[i] + static_cast<NeuronId>(instances_[i].sub.circuit.neuron_count());

  std::vector<NeuronSpec> neurons;
  std::vector<Synapse> synapses;
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const Instance& inst = instances_[i];
    const Circuit& c = inst.sub.circuit;
    for (std::size_t p = 0; p < inst.drivers.size(); ++p)
      if (!inst.drivers[p])
        throw CircuitError("dangling port " + c.input_names()[p] + " on instance " +
                           std::to_string(i));
    for (NeuronSpec n : c.neurons()) {
      n.id += base[i];
      n.stage = 0;
      neurons.push_back(n);
    }
    for (const Synapse& s : c.synapses()) {
      Synapse t = s;
      t.post += base[i];
      if (s.pre.kind == Endpoint::Kind::Neuron) {
        t.pre.index += base[i];
      } else {
        const Driver& d = *inst.drivers[s.pre.index];
        t.pre = d.from_primary
                    ? Endpoint::input(static_cast<std::uint32_t>(d.primary))
                    : Endpoint::neuron(base[d.instance] +
                                       instances_[d.instance].sub.circuit.outputs()[d.port]);
      }
      synapses.push_back(t);
    }
  }
  std::vector<std::pair<NeuronId, std::string>> outs;
  for (const auto& [name, inst, port] : outputs_)
    outs.emplace_back(base[inst] + instances_[inst].sub.circuit.outputs()[port], name);
  return Circuit::from_parts(primaries_, std::move(neurons), std::move(synapses),
                             std::move(outs));
}

}  // namespace snnfp8
