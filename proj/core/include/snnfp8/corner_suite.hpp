#pragma once

#include <string>
#include <vector>

#include "snnfp8/fp8.hpp"

namespace snnfp8 {

struct CornerCase {
  Fp8Code a;
  Fp8Code b;
  std::string category;  // cancellation, boundary, saturation, alignment, signed_zero, general
  std::string note;
};

inline constexpr int kCornerSuiteVersion = 1;

/// Built-in adder corner suite (identical to data/adder_corner_suite.json).
const std::vector<CornerCase>& adder_corner_suite();

/// {"format":"snnfp8-corner-suite","version":1,"cases":[{"a":"0x38",...}]}
std::string corner_suite_json(const std::vector<CornerCase>& cases);
/// Throws std::runtime_error on malformed input or an unknown version.
std::vector<CornerCase> parse_corner_suite(const std::string& json_text);

}  // namespace snnfp8
