#include "snnfp8/netlist.hpp"

#include <sstream>

namespace snnfp8 {

namespace {

std::string neuron_name(NeuronId id) { return "n" + std::to_string(id); }

std::string endpoint_name(const Circuit& c, const Endpoint& e) {
  return e.kind == Endpoint::Kind::Input ? c.input_names()[e.index] : neuron_name(e.index);
}

}  // namespace

nlohmann::json netlist_json(const Circuit& circuit) {
  using nlohmann::json;
  json doc;
  doc["format"] = "snnfp8-netlist";
  doc["version"] = 1;
  doc["inputs"] = circuit.input_names();
  json outputs = json::array();
  for (std::size_t i = 0; i < circuit.output_count(); ++i)
    outputs.push_back({{"name", circuit.output_names()[i]},
                       {"neuron", neuron_name(circuit.outputs()[i])}});
  doc["outputs"] = outputs;

  json neurons = json::array();
  json synapses = json::array();
  for (const auto& n : circuit.neurons()) {
    neurons.push_back({{"id", neuron_name(n.id)},
                       {"threshold", n.threshold},
                       {"depth", n.depth},
                       {"reset", n.reset == ResetMode::SoftSubtract ? "soft-subtract" : "none"},
                       {"stage", circuit.stage_names()[n.stage]}});
    if (n.bias != 0.0)
      synapses.push_back({{"pre", "bias"}, {"post", neuron_name(n.id)}, {"weight", n.bias}});
  }
  for (const auto& s : circuit.synapses())
    synapses.push_back({{"pre", endpoint_name(circuit, s.pre)},
                        {"post", neuron_name(s.post)},
                        {"weight", s.weight}});
  doc["neurons"] = std::move(neurons);
  doc["synapses"] = std::move(synapses);
  doc["depth"] = circuit.depth();
  return doc;
}

std::string netlist_dot(const Circuit& circuit, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph \"" << graph_name << "\" {\n  rankdir=LR;\n";
  for (const auto& name : circuit.input_names())
    os << "  \"" << name << "\" [shape=box];\n";
  bool has_bias = false;
  for (const auto& n : circuit.neurons()) {
    os << "  \"" << neuron_name(n.id) << "\" [label=\"" << neuron_name(n.id) << "\\nth="
       << n.threshold << " d=" << n.depth << "\"];\n";
    has_bias = has_bias || n.bias != 0.0;
  }
  if (has_bias) os << "  \"bias\" [shape=diamond];\n";
  for (const auto& n : circuit.neurons())
    if (n.bias != 0.0)
      os << "  \"bias\" -> \"" << neuron_name(n.id) << "\" [label=\"" << n.bias << "\"];\n";
  for (const auto& s : circuit.synapses())
    os << "  \"" << endpoint_name(circuit, s.pre) << "\" -> \"" << neuron_name(s.post)
       << "\" [label=\"" << s.weight << "\"];\n";
  for (std::size_t i = 0; i < circuit.output_count(); ++i)
    os << "  \"out:" << circuit.output_names()[i] << "\" [shape=box];\n  \""
       << neuron_name(circuit.outputs()[i]) << "\" -> \"out:" << circuit.output_names()[i]
       << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace snnfp8
