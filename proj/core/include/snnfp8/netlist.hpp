#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "snnfp8/circuit.hpp"

namespace snnfp8 {

/// JSON netlist: {format, version, inputs, outputs, neurons:[{id,threshold,depth,
/// reset,stage}], synapses:[{pre,post,weight}]}. Neurons are "n<k>", primary
/// inputs keep their port names and the always-on source is "bias".
nlohmann::json netlist_json(const Circuit& circuit);

/// Graphviz DOT rendering, one node per input/neuron, edges labelled by weight.
std::string netlist_dot(const Circuit& circuit, const std::string& graph_name = "circuit");

}  // namespace snnfp8
