#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snnfp8/circuit.hpp"
#include "snnfp8/simulator.hpp"

namespace snnfp8 {

/// Scan targets. Temporal is a reference accumulator (threshold 2, soft reset)
/// that receives a and b on consecutive steps and must spike on the second
/// step iff both are 1; it retains state across steps and so is exposed to
/// leakage.
enum class ScanTarget { And, Or, Xor, SpatialAdder, Temporal };

std::string_view to_string(ScanTarget t);
/// "and", "or", "xor", "adder", "temporal". Throws std::invalid_argument.
ScanTarget parse_scan_target(std::string_view name);

struct ScanSpec {
  std::vector<ScanTarget> targets = {ScanTarget::And, ScanTarget::Or, ScanTarget::Xor,
                                     ScanTarget::SpatialAdder};
  std::vector<double> betas = {1.0, 0.5, 0.1, 0.01};
  std::vector<double> sigmas = {0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.40, 0.50};
  std::size_t trials = 10000;       // per gate truth-table row
  std::size_t adder_trials = 1000;  // per corner-suite case
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

/// Throws std::invalid_argument for empty grids, zero trials or values out of range.
void validate(const ScanSpec& spec);

/// Partial specs are allowed; missing keys keep their defaults. Keys: targets,
/// betas, sigmas, trials, adder_trials, seed, threads.
ScanSpec parse_scan_spec(const std::string& json_text);
std::string scan_spec_json(const ScanSpec& spec);

struct ScanPoint {
  ScanTarget target;
  double beta = 1.0;
  double sigma = 0.0;
  std::size_t trials = 0;  // total evaluations at this point
  std::size_t passes = 0;
  std::vector<std::size_t> case_failures;  // per truth-table row / corner case

  double accuracy() const { return trials ? static_cast<double>(passes) / trials : 0.0; }
};

struct ScanResult {
  std::string kind;  // "beta" or "sigma"
  ScanSpec spec;
  std::vector<ScanPoint> points;
  /// Smallest grid sigma with any failure, per target (sigma scans only).
  std::map<ScanTarget, std::optional<double>> first_failure_sigma;
};

/// Leakage scan at sigma = 0. Deterministic, so each row or case runs once.
ScanResult beta_scan(const ScanSpec& spec);
/// Monte Carlo noise scan at beta = 1.
ScanResult sigma_scan(const ScanSpec& spec);

/// Per-trial seed: splitmix64 chain over (campaign seed, target, point, trial).
std::uint64_t trial_seed(std::uint64_t seed, ScanTarget target, std::size_t point,
                         std::uint64_t trial);

/// The circuit a gate target is scanned on (AND / OR / XOR or the temporal
/// accumulator neuron).
const Circuit& scan_circuit(ScanTarget target);

/// Evaluates one truth-table row of the temporal reference.
std::uint8_t temporal_accumulate(std::uint8_t a, std::uint8_t b, const SimConfig& cfg);

std::string scan_result_json(const ScanResult& result);
std::string scan_result_csv(const ScanResult& result);

}  // namespace snnfp8
