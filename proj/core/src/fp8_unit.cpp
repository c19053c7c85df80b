#include "snnfp8/fp8_unit.hpp"

namespace snnfp8 {

std::array<std::uint8_t, 16> operand_lines(Fp8Code a, Fp8Code b) {
  std::array<std::uint8_t, 16> lines{};
  const auto la = to_lines(a);
  const auto lb = to_lines(b);
  for (int i = 0; i < 8; ++i) {
    lines[i] = la[i];
    lines[8 + i] = lb[i];
  }
  return lines;
}

Fp8BinaryUnit::Fp8BinaryUnit(const Circuit& circuit) : evaluator_(circuit) {
  if (circuit.input_count() != 16 || circuit.output_count() != 8)
    throw CircuitError("FP8 binary unit needs a 16-in/8-out circuit");
}

Fp8Code Fp8BinaryUnit::apply(Fp8Code a, Fp8Code b, const SimConfig& cfg) {
  in_ = operand_lines(a, b);
  last_spikes_ = evaluator_.run(in_, out_, cfg);
  return from_lines(out_);
}

Fp8Code Fp8BinaryUnit::apply(Fp8Code a, Fp8Code b, const SimConfig& cfg, EvalTrace& trace) {
  in_ = operand_lines(a, b);
  last_spikes_ = evaluator_.run(in_, out_, cfg, &trace);
  return from_lines(out_);
}

}  // namespace snnfp8
