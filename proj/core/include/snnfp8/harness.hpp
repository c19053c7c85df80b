#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snnfp8/corner_suite.hpp"
#include "snnfp8/fp8.hpp"
#include "snnfp8/linear.hpp"
#include "snnfp8/simulator.hpp"

namespace snnfp8 {

struct Mismatch {
  Fp8Code a, b, got, expected;
};

struct ClassRow {
  std::string label;  // e.g. "subnormal x normal", "corner:cancellation"
  std::size_t total = 0;
  std::size_t passed = 0;
  double pass_rate() const { return total ? static_cast<double>(passed) / total : 1.0; }
};

struct SweepReport {
  std::string campaign;  // verify-mul / verify-add
  SimConfig config;
  OverflowPolicy overflow = OverflowPolicy::Saturate;
  bool sticky_extra = true;
  unsigned threads = 1;
  std::vector<ClassRow> rows;
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failure_count = 0;
  std::vector<Mismatch> failures;  // first kMaxListedFailures counterexamples
  double mean_sparsity = 0;
  std::size_t neurons = 0;
  std::uint32_t depth = 0;
  double wall_seconds = 0;
  std::vector<std::string> notes;

  bool ok() const { return failure_count == 0; }
  double pass_rate() const { return total ? static_cast<double>(passed) / total : 1.0; }
};

inline constexpr std::size_t kMaxListedFailures = 100;

struct VerifyOptions {
  SimConfig config;
  OverflowPolicy overflow = OverflowPolicy::Saturate;
  bool sticky_extra = true;  // multiplier only
  unsigned threads = 0;
  std::size_t random_trials = 100;  // adder only
  std::uint64_t random_seed = 0;    // adder only
  std::optional<std::vector<CornerCase>> corner_suite;  // adder only; default built-in
  bool exhaustive = true;
};

/// Every finite x finite pair through the spiking multiplier against the
/// oracle, with one row per (class a, class b).
SweepReport verify_mul(const VerifyOptions& options);

/// Corner suite, seeded random pairs and the exhaustive finite sweep through
/// the spiking adder.
SweepReport verify_add(const VerifyOptions& options);

std::string sweep_report_json(const SweepReport& r);
std::string sweep_report_csv(const SweepReport& r);

std::string latency_report_json(const std::vector<LatencyReport>& reports);
std::string latency_report_csv(const std::vector<LatencyReport>& reports);

/// Two-layer MLP with a spike (threshold) activation between layers.
struct MlpWeights {
  Fp8Tensor w1;  // hidden x input
  Fp8Tensor w2;  // classes x hidden
};

/// Seeded synthetic weights for a 16 -> 8 -> 4 net.
MlpWeights synthetic_mlp_weights(std::uint64_t seed);
std::string mlp_weights_json(const MlpWeights& w, std::uint64_t seed);
MlpWeights parse_mlp_weights(const std::string& json_text);

struct MlpDataset {
  Fp8Tensor images;  // samples x 16
  std::vector<int> labels;
  std::string source;
};

/// Class-prototype patterns plus seeded jitter, quantized to FP8.
MlpDataset synthetic_dataset(std::size_t samples, std::uint64_t seed);
/// IDX image file (magic 0x00000803) average-pooled to 4x4 and scaled to
/// [0,1]; optional IDX label file (magic 0x00000801). Throws on malformed data.
MlpDataset load_idx_dataset(const std::string& images_path, const std::string& labels_path,
                            std::size_t max_samples);

/// Spike activation: 1.0 for strictly positive inputs, +0 otherwise.
Fp8Code spike_activation(Fp8Code x);
/// The same activation through its spiking comparator circuit.
Fp8Code spike_activation_circuit(Fp8Code x, const SimConfig& cfg = {});

struct MlpForward {
  Fp8Tensor hidden_pre;  // samples x hidden
  Fp8Tensor logits;      // samples x classes
  std::vector<int> argmax;
};

MlpForward mlp_forward(const MlpWeights& w, const Fp8Tensor& x, Accumulation mode,
                       const Fp8Arithmetic& ops, bool spiking_activation,
                       const SimConfig& cfg = {}, unsigned threads = 0);

struct MlpDemoReport {
  std::size_t samples = 0;
  std::vector<std::size_t> layer_shapes;  // input, hidden, classes
  std::string data_source;
  std::string arithmetic;  // spiking or oracle
  std::uint64_t seed = 0;
  double argmax_agreement = 0;              // spiking tree vs oracle tree
  double bitwise_agreement = 0;             // same comparison, all logits
  double tree_vs_sequential_match = 0;      // logits bitwise
  double tree_vs_sequential_hidden = 0;     // hidden pre-activations bitwise
  double tree_vs_sequential_argmax = 0;
  int max_ulp_tree_vs_sequential = 0;
  double label_accuracy = -1;  // when labels exist
  double wall_seconds = 0;
  std::vector<std::string> notes;

  bool ok() const { return argmax_agreement == 1.0; }
};

struct MlpDemoOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 7;
  std::optional<std::string> weights_path;
  std::optional<std::string> idx_images;
  std::optional<std::string> idx_labels;
  bool fast_check = false;
  SimConfig config;
  OverflowPolicy overflow = OverflowPolicy::Saturate;
  unsigned threads = 0;
};

MlpDemoReport run_mlp_demo(const MlpDemoOptions& options);
std::string mlp_report_json(const MlpDemoReport& r);
std::string mlp_report_csv(const MlpDemoReport& r);

}  // namespace snnfp8
