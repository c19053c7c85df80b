#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace snnfp8 {

/// Raised for malformed circuits: cycles, dangling ports, bad arity.
class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ResetMode : std::uint8_t { SoftSubtract, None };

using NeuronId = std::uint32_t;

/// One threshold unit. `bias` is the summed weight from the always-on source.
struct NeuronSpec {
  NeuronId id = 0;
  double threshold = 1.0;
  ResetMode reset = ResetMode::SoftSubtract;
  std::uint32_t depth = 0;
  double bias = 0.0;
  std::uint16_t stage = 0;
};

/// Presynaptic endpoint of a synapse.
struct Endpoint {
  enum class Kind : std::uint8_t { Input, Neuron };
  Kind kind = Kind::Input;
  std::uint32_t index = 0;

  static Endpoint input(std::uint32_t i) { return {Kind::Input, i}; }
  static Endpoint neuron(NeuronId n) { return {Kind::Neuron, n}; }
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct Synapse {
  Endpoint pre;
  NeuronId post = 0;
  double weight = 1.0;
};

struct CircuitStats {
  std::size_t neurons = 0;
  std::size_t synapses = 0;      // excludes bias connections
  std::size_t bias_sources = 0;  // neurons with a nonzero bias weight
  std::uint32_t depth = 0;
  std::size_t components = 0;    // weakly connected components over inputs + neurons
  std::map<std::string, std::size_t> neurons_per_stage;
};

/// Immutable weighted DAG of threshold neurons.
///
/// Neuron ids are dense in [0, neuron_count()). Depths are recomputed on
/// construction as the longest path from any primary input (inputs and the
/// bias source sit at depth 0). Evaluation order is nondecreasing depth.
class Circuit {
 public:
  Circuit() = default;

  /// Validates and freezes a circuit. Throws CircuitError on cycles,
  /// out-of-range endpoints, nonpositive thresholds or unknown outputs.
  static Circuit from_parts(std::vector<std::string> input_names,
                            std::vector<NeuronSpec> neurons,
                            std::vector<Synapse> synapses,
                            std::vector<std::pair<NeuronId, std::string>> outputs,
                            std::vector<std::string> stage_names = {});

  std::size_t input_count() const { return input_names_.size(); }
  std::size_t output_count() const { return outputs_.size(); }
  std::size_t neuron_count() const { return neurons_.size(); }
  std::uint32_t depth() const { return depth_; }

  const std::vector<std::string>& input_names() const { return input_names_; }
  const std::vector<std::string>& output_names() const { return output_names_; }
  const std::vector<NeuronId>& outputs() const { return outputs_; }
  const std::vector<NeuronSpec>& neurons() const { return neurons_; }
  const std::vector<Synapse>& synapses() const { return synapses_; }
  const std::vector<std::string>& stage_names() const { return stage_names_; }

  /// Index of a named input or output port; throws CircuitError if absent.
  std::size_t input_index(std::string_view name) const;
  std::size_t output_index(std::string_view name) const;

  // Evaluation layout: neurons in depth order with CSR fan-in lists. Sources
  // index a value array laid out as [inputs..., neurons by id...].
  const std::vector<NeuronId>& eval_order() const { return order_; }
  const std::vector<std::uint32_t>& fanin_offsets() const { return fanin_offsets_; }
  const std::vector<std::uint32_t>& fanin_sources() const { return fanin_sources_; }
  const std::vector<double>& fanin_weights() const { return fanin_weights_; }

 private:
  std::vector<std::string> input_names_;
  std::vector<std::string> output_names_;
  std::vector<NeuronId> outputs_;
  std::vector<NeuronSpec> neurons_;
  std::vector<Synapse> synapses_;
  std::vector<std::string> stage_names_;
  std::uint32_t depth_ = 0;

  std::vector<NeuronId> order_;
  std::vector<std::uint32_t> fanin_offsets_;  // indexed by position in order_
  std::vector<std::uint32_t> fanin_sources_;
  std::vector<double> fanin_weights_;
};

CircuitStats circuit_stats(const Circuit& circuit);

/// A signal inside a circuit under construction: a constant, a primary input
/// or the spike output of a neuron.
struct Wire {
  enum class Kind : std::uint8_t { Zero, One, Input, Neuron };
  Kind kind = Kind::Zero;
  std::uint32_t index = 0;

  static constexpr Wire zero() { return {Kind::Zero, 0}; }
  static constexpr Wire one() { return {Kind::One, 0}; }
  static constexpr Wire constant(bool v) { return v ? one() : zero(); }

  bool is_const() const { return kind == Kind::Zero || kind == Kind::One; }
  bool is_zero() const { return kind == Kind::Zero; }
  bool is_one() const { return kind == Kind::One; }
  friend bool operator==(const Wire&, const Wire&) = default;
};

struct WeightedWire {
  Wire wire;
  double weight;
};

/// Incremental netlist construction. Wires may only reference already
/// created inputs and neurons, so builder-produced graphs are acyclic.
class CircuitBuilder {
 public:
  CircuitBuilder();

  Wire add_input(std::string name);

  /// Adds a neuron integrating the given weighted wires. Constant-one wires
  /// become bias weight; constant-zero wires contribute nothing.
  Wire add_neuron(double threshold, std::initializer_list<WeightedWire> fanin);
  Wire add_neuron(double threshold, const std::vector<WeightedWire>& fanin);

  /// Marks a wire as a named output. Inputs and constants get a buffer neuron
  /// so that every output is a neuron.
  void add_output(Wire w, std::string name);

  /// Subsequent neurons are tagged with this stage label for per-stage counts.
  void set_stage(std::string_view stage);
  const std::string& stage() const { return stage_names_[current_stage_]; }

  std::size_t neuron_count() const { return neurons_.size(); }

  Circuit build() const;

 private:
  std::vector<std::string> inputs_;
  std::vector<NeuronSpec> neurons_;
  std::vector<Synapse> synapses_;
  std::vector<std::pair<NeuronId, std::string>> outputs_;
  std::vector<std::string> stage_names_;
  std::uint16_t current_stage_ = 0;
};

}  // namespace snnfp8
