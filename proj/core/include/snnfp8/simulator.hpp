#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "snnfp8/circuit.hpp"

namespace snnfp8 {

enum class DynamicsMode : std::uint8_t { IdealIF, LIF };

/// Neuron dynamics. In IdealIF mode `beta` is ignored and treated as 1.0.
///
/// Noise is Gaussian N(0, sigma^2), sampled once per neuron per step from a
/// std::mt19937_64 engine seeded with `seed`, and added to the summed input
/// current.
struct SimConfig {
  double beta = 1.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  DynamicsMode mode = DynamicsMode::IdealIF;

  double effective_beta() const { return mode == DynamicsMode::IdealIF ? 1.0 : beta; }

  static SimConfig ideal() { return {}; }
  static SimConfig leaky(double beta, double sigma = 0.0, std::uint64_t seed = 0) {
    return {beta, sigma, seed, DynamicsMode::LIF};
  }
};

/// Throws std::invalid_argument unless beta is in (0,1] and sigma >= 0.
void validate(const SimConfig& cfg);

struct StepResult {
  double potential;
  bool spike;
};

/// One discrete-time update: V' = beta*V + I (+ noise); spike iff V' >= V_th;
/// on spike a soft-reset neuron subtracts V_th.
StepResult step_neuron(double potential, double input_current, const NeuronSpec& spec,
                       const SimConfig& cfg, std::mt19937_64& rng);

/// Per-neuron record of one spatial evaluation. `potential[i]` is neuron i's
/// membrane potential at its firing step, before reset.
struct EvalTrace {
  std::vector<double> potential;
  std::vector<std::uint8_t> spikes;
  std::size_t spike_count = 0;
  std::uint32_t steps = 0;

  double sparsity() const {
    return spikes.empty() ? 0.0 : static_cast<double>(spike_count) / spikes.size();
  }
};

/// Reusable spatial evaluator bound to one circuit. Not thread-safe; give each
/// thread its own instance. The circuit must outlive the evaluator.
///
/// Every evaluation starts from zero membrane potential. A neuron integrates
/// all presynaptic spikes in the single step equal to its depth, so leakage
/// has no opportunity to act.
class SpatialEvaluator {
 public:
  explicit SpatialEvaluator(const Circuit& circuit);

  /// Evaluates into `outputs` (size output_count()); returns the spike count.
  std::size_t run(std::span<const std::uint8_t> inputs, std::span<std::uint8_t> outputs,
                  const SimConfig& cfg, EvalTrace* trace = nullptr);

  const Circuit& circuit() const { return *circuit_; }

 private:
  const Circuit* circuit_;
  std::vector<std::uint8_t> values_;
};

struct SpatialResult {
  std::vector<std::uint8_t> outputs;
  EvalTrace trace;
};

/// Convenience wrapper over SpatialEvaluator. Throws CircuitError on arity mismatch.
SpatialResult evaluate_spatial(const Circuit& circuit, std::span<const std::uint8_t> inputs,
                               const SimConfig& cfg = {});

/// Classic time-stepped simulation: membrane state persists across steps and
/// decays by beta. Within a step neurons run in depth order so spikes propagate
/// combinationally. Returns one output vector per step.
std::vector<std::vector<std::uint8_t>> evaluate_temporal_reference(
    const Circuit& circuit, const std::vector<std::vector<std::uint8_t>>& input_stream,
    const SimConfig& cfg = {});

}  // namespace snnfp8
