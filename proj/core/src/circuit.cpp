#include "snnfp8/circuit.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace snnfp8 {

Circuit Circuit::from_parts(std::vector<std::string> input_names,
                            std::vector<NeuronSpec> neurons,
                            std::vector<Synapse> synapses,
                            std::vector<std::pair<NeuronId, std::string>> outputs,
                            std::vector<std::string> stage_names) {
  Circuit c;
  c.input_names_ = std::move(input_names);
  c.neurons_ = std::move(neurons);
  c.synapses_ = std::move(synapses);
  c.stage_names_ = std::move(stage_names);
  if (c.stage_names_.empty()) c.stage_names_.emplace_back("default");

  const std::size_t n = c.neurons_.size();
  const std::size_t n_in = c.input_names_.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto& spec = c.neurons_[i];
    if (spec.id != i) throw CircuitError("neuron ids must be dense and ordered");
    if (!(spec.threshold > 0.0)) throw CircuitError("neuron threshold must be positive");
    if (spec.stage >= c.stage_names_.size()) throw CircuitError("neuron stage out of range");
  }

  // Kahn's algorithm over neuron->neuron edges; leftovers mean a cycle.
  std::vector<std::vector<NeuronId>> fanout(n);
  std::vector<std::uint32_t> indegree(n, 0);
  std::vector<std::uint32_t> fanin_count(n, 0);
  for (const auto& s : c.synapses_) {
    if (s.post >= n) throw CircuitError("synapse targets unknown neuron");
    if (s.pre.kind == Endpoint::Kind::Input) {
      if (s.pre.index >= n_in) throw CircuitError("synapse from unknown input");
    } else {
      if (s.pre.index >= n) throw CircuitError("synapse from unknown neuron");
      fanout[s.pre.index].push_back(s.post);
      ++indegree[s.post];
    }
    ++fanin_count[s.post];
  }

  std::vector<std::uint32_t> depth(n, 1);
  std::queue<NeuronId> ready;
  for (NeuronId i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(i);
  std::size_t visited = 0;
  while (!ready.empty()) {
    const NeuronId u = ready.front();
    ready.pop();
    ++visited;
    for (NeuronId v : fanout[u]) {
      depth[v] = std::max(depth[v], depth[u] + 1);
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  if (visited != n) throw CircuitError("cycle detected in circuit");

  c.depth_ = 0;
  for (std::size_t i = 0; i < n; ++i) {
    c.neurons_[i].depth = depth[i];
    c.depth_ = std::max(c.depth_, depth[i]);
  }

  for (auto& [id, name] : outputs) {
    if (id >= n) throw CircuitError("output references unknown neuron: " + name);
    c.outputs_.push_back(id);
    c.output_names_.push_back(std::move(name));
  }

  c.order_.resize(n);
  std::iota(c.order_.begin(), c.order_.end(), 0u);
  std::stable_sort(c.order_.begin(), c.order_.end(), [&](NeuronId a, NeuronId b) {
    return c.neurons_[a].depth < c.neurons_[b].depth;
  });

  std::vector<std::uint32_t> position(n);
  for (std::uint32_t p = 0; p < n; ++p) position[c.order_[p]] = p;
  c.fanin_offsets_.assign(n + 1, 0);
  for (NeuronId i = 0; i < n; ++i) c.fanin_offsets_[position[i] + 1] = fanin_count[i];
  std::partial_sum(c.fanin_offsets_.begin(), c.fanin_offsets_.end(), c.fanin_offsets_.begin());
  c.fanin_sources_.resize(c.synapses_.size());
  c.fanin_weights_.resize(c.synapses_.size());
  std::vector<std::uint32_t> cursor(c.fanin_offsets_.begin(), c.fanin_offsets_.end() - 1);
  for (const auto& s : c.synapses_) {
    const std::uint32_t slot = cursor[position[s.post]]++;
    c.fanin_sources_[slot] = s.pre.kind == Endpoint::Kind::Input
                                 ? s.pre.index
                                 : static_cast<std::uint32_t>(n_in + s.pre.index);
    c.fanin_weights_[slot] = s.weight;
  }
  return c;
}

std::size_t Circuit::input_index(std::string_view name) const {
  auto it = std::find(input_names_.begin(), input_names_.end(), name);
  if (it == input_names_.end()) throw CircuitError("unknown input port: " + std::string(name));
  return static_cast<std::size_t>(it - input_names_.begin());
}

std::size_t Circuit::output_index(std::string_view name) const {
  auto it = std::find(output_names_.begin(), output_names_.end(), name);
  if (it == output_names_.end()) throw CircuitError("unknown output port: " + std::string(name));
  return static_cast<std::size_t>(it - output_names_.begin());
}

namespace {

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

CircuitStats circuit_stats(const Circuit& circuit) {
  CircuitStats st;
  st.neurons = circuit.neuron_count();
  st.synapses = circuit.synapses().size();
  st.depth = circuit.depth();
  for (const auto& n : circuit.neurons()) {
    if (n.bias != 0.0) ++st.bias_sources;
    ++st.neurons_per_stage[circuit.stage_names()[n.stage]];
  }

  const std::size_t n_in = circuit.input_count();
  DisjointSet ds(n_in + st.neurons);
  for (const auto& s : circuit.synapses()) {
    const std::size_t pre =
        s.pre.kind == Endpoint::Kind::Input ? s.pre.index : n_in + s.pre.index;
    ds.unite(pre, n_in + s.post);
  }
  for (std::size_t i = 0; i < n_in + st.neurons; ++i)
    if (ds.find(i) == i) ++st.components;
  return st;
}

CircuitBuilder::CircuitBuilder() { stage_names_.emplace_back("default"); }

Wire CircuitBuilder::add_input(std::string name) {
  inputs_.push_back(std::move(name));
  return {Wire::Kind::Input, static_cast<std::uint32_t>(inputs_.size() - 1)};
}

Wire CircuitBuilder::add_neuron(double threshold, std::initializer_list<WeightedWire> fanin) {
  return add_neuron(threshold, std::vector<WeightedWire>(fanin));
}

Wire CircuitBuilder::add_neuron(double threshold, const std::vector<WeightedWire>& fanin) {
  NeuronSpec spec;
  spec.id = static_cast<NeuronId>(neurons_.size());
  spec.threshold = threshold;
  spec.stage = current_stage_;
  for (const auto& [w, weight] : fanin) {
    switch (w.kind) {
      case Wire::Kind::Zero:
        break;
      case Wire::Kind::One:
        spec.bias += weight;
        break;
      case Wire::Kind::Input:
        synapses_.push_back({Endpoint::input(w.index), spec.id, weight});
        break;
      case Wire::Kind::Neuron:
        synapses_.push_back({Endpoint::neuron(w.index), spec.id, weight});
        break;
    }
  }
  neurons_.push_back(spec);
  return {Wire::Kind::Neuron, spec.id};
}

void CircuitBuilder::add_output(Wire w, std::string name) {
  if (w.kind != Wire::Kind::Neuron) {
    // Buffer: fires iff the driving signal is 1.
    w = w.is_zero() ? add_neuron(0.5, {{Wire::one(), -1.0}}) : add_neuron(0.5, {{w, 1.0}});
  }
  outputs_.emplace_back(w.index, std::move(name));
}

void CircuitBuilder::set_stage(std::string_view stage) {
  auto it = std::find(stage_names_.begin(), stage_names_.end(), stage);
  if (it == stage_names_.end()) {
    stage_names_.emplace_back(stage);
    current_stage_ = static_cast<std::uint16_t>(stage_names_.size() - 1);
  } else {
    current_stage_ = static_cast<std::uint16_t>(it - stage_names_.begin());
  }
}

Circuit CircuitBuilder::build() const {
  return Circuit::from_parts(inputs_, neurons_, synapses_, outputs_, stage_names_);
}

}  // namespace snnfp8
