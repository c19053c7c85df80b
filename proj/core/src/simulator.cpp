#include "snnfp8/simulator.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace snnfp8 {

void validate(const SimConfig& cfg) {
  if (!(cfg.beta > 0.0 && cfg.beta <= 1.0))
    throw std::invalid_argument("beta must lie in (0, 1]");
  if (!(cfg.sigma >= 0.0) || !std::isfinite(cfg.sigma))
    throw std::invalid_argument("sigma must be finite and nonnegative");
}

StepResult step_neuron(double potential, double input_current, const NeuronSpec& spec,
                       const SimConfig& cfg, std::mt19937_64& rng) {
  double current = input_current;
  if (cfg.sigma > 0.0) current += std::normal_distribution<double>(0.0, cfg.sigma)(rng);
  double v = cfg.effective_beta() * potential + current;
  const bool spike = v >= spec.threshold;
  if (spike && spec.reset == ResetMode::SoftSubtract) v -= spec.threshold;
  return {v, spike};
}

SpatialEvaluator::SpatialEvaluator(const Circuit& circuit)
    : circuit_(&circuit), values_(circuit.input_count() + circuit.neuron_count(), 0) {}

std::size_t SpatialEvaluator::run(std::span<const std::uint8_t> inputs,
                                  std::span<std::uint8_t> outputs, const SimConfig& cfg,
                                  EvalTrace* trace) {
  const Circuit& c = *circuit_;
  const std::size_t n_in = c.input_count();
  if (inputs.size() != n_in)
    throw CircuitError("input arity mismatch: expected " + std::to_string(n_in) + ", got " +
                       std::to_string(inputs.size()));
  if (outputs.size() != c.output_count()) throw CircuitError("output arity mismatch");

  for (std::size_t i = 0; i < n_in; ++i) values_[i] = inputs[i] ? 1 : 0;

  const auto& order = c.eval_order();
  const auto& offsets = c.fanin_offsets();
  const auto& sources = c.fanin_sources();
  const auto& weights = c.fanin_weights();
  const auto& specs = c.neurons();

  std::optional<std::mt19937_64> rng;
  std::normal_distribution<double> noise(0.0, cfg.sigma > 0.0 ? cfg.sigma : 1.0);
  if (cfg.sigma > 0.0) rng.emplace(cfg.seed);
  // Fresh state: the leak term beta * 0 vanishes in the single firing step.
  const double beta = cfg.effective_beta();

  if (trace) {
    trace->potential.assign(specs.size(), 0.0);
    trace->spikes.assign(specs.size(), 0);
    trace->steps = c.depth();
  }

  std::size_t spikes = 0;
  for (std::size_t p = 0; p < order.size(); ++p) {
    const NeuronSpec& spec = specs[order[p]];
    double current = spec.bias;
    for (std::uint32_t k = offsets[p]; k < offsets[p + 1]; ++k)
      if (values_[sources[k]]) current += weights[k];
    if (rng) current += noise(*rng);
    const double v = beta * 0.0 + current;
    const bool fire = v >= spec.threshold;
    values_[n_in + spec.id] = fire ? 1 : 0;
    spikes += fire;
    if (trace) {
      trace->potential[spec.id] = v;
      trace->spikes[spec.id] = fire;
    }
  }
  if (trace) trace->spike_count = spikes;

  const auto& outs = c.outputs();
  for (std::size_t i = 0; i < outs.size(); ++i) outputs[i] = values_[n_in + outs[i]];
  return spikes;
}

SpatialResult evaluate_spatial(const Circuit& circuit, std::span<const std::uint8_t> inputs,
                               const SimConfig& cfg) {
  SpatialResult r;
  r.outputs.resize(circuit.output_count());
  SpatialEvaluator(circuit).run(inputs, r.outputs, cfg, &r.trace);
  return r;
}

std::vector<std::vector<std::uint8_t>> evaluate_temporal_reference(
    const Circuit& circuit, const std::vector<std::vector<std::uint8_t>>& input_stream,
    const SimConfig& cfg) {
  if (input_stream.empty()) throw std::invalid_argument("temporal reference needs T >= 1 steps");
  const std::size_t n_in = circuit.input_count();
  const auto& order = circuit.eval_order();
  const auto& offsets = circuit.fanin_offsets();
  const auto& sources = circuit.fanin_sources();
  const auto& weights = circuit.fanin_weights();
  const auto& specs = circuit.neurons();

  std::mt19937_64 rng(cfg.seed);
  std::vector<double> membrane(specs.size(), 0.0);
  std::vector<std::uint8_t> values(n_in + specs.size(), 0);
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(input_stream.size());

  for (const auto& step_inputs : input_stream) {
    if (step_inputs.size() != n_in) throw CircuitError("input arity mismatch in stream");
    for (std::size_t i = 0; i < n_in; ++i) values[i] = step_inputs[i] ? 1 : 0;
    for (std::size_t p = 0; p < order.size(); ++p) {
      const NeuronSpec& spec = specs[order[p]];
      double current = spec.bias;
      for (std::uint32_t k = offsets[p]; k < offsets[p + 1]; ++k)
        if (values[sources[k]]) current += weights[k];
      const StepResult r = step_neuron(membrane[spec.id], current, spec, cfg, rng);
      membrane[spec.id] = r.potential;
      values[n_in + spec.id] = r.spike;
    }
    auto& row = out.emplace_back(circuit.output_count());
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = values[n_in + circuit.outputs()[i]];
  }
  return out;
}

}  // namespace snnfp8
