#pragma once

#include <array>
#include <cstddef>

#include "snnfp8/circuit.hpp"
#include "snnfp8/fp8.hpp"
#include "snnfp8/simulator.hpp"

namespace snnfp8 {

/// Binds a two-operand FP8 circuit (16 input lines, 8 output lines, both in
/// bus order [S, E3..E0, M2..M0], operand a first) to a private evaluator.
/// One instance per thread.
class Fp8BinaryUnit {
 public:
  explicit Fp8BinaryUnit(const Circuit& circuit);

  Fp8Code apply(Fp8Code a, Fp8Code b, const SimConfig& cfg = {});
  Fp8Code apply(Fp8Code a, Fp8Code b, const SimConfig& cfg, EvalTrace& trace);

  std::size_t last_spike_count() const { return last_spikes_; }
  const Circuit& circuit() const { return evaluator_.circuit(); }

 private:
  SpatialEvaluator evaluator_;
  std::array<std::uint8_t, 16> in_{};
  std::array<std::uint8_t, 8> out_{};
  std::size_t last_spikes_ = 0;
};

std::array<std::uint8_t, 16> operand_lines(Fp8Code a, Fp8Code b);

}  // namespace snnfp8
