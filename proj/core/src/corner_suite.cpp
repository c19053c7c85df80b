#include "snnfp8/corner_suite.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace snnfp8 {

namespace {

CornerCase make(unsigned a, unsigned b, const char* category, const char* note) {
  return {Fp8Code(static_cast<std::uint8_t>(a)), Fp8Code(static_cast<std::uint8_t>(b)), category, note};
}

}  // namespace

const std::vector<CornerCase>& adder_corner_suite() {
  static const std::vector<CornerCase> suite = {
      make(0x38, 0xB8, "cancellation", "1 + -1"),
      make(0xB8, 0x38, "cancellation", "-1 + 1"),
      make(0x7E, 0xFE, "cancellation", "448 + -448"),
      make(0x01, 0x81, "cancellation", "min subnormal + its negation"),
      make(0x87, 0x07, "cancellation", "-max subnormal + max subnormal"),
      make(0x08, 0x88, "cancellation", "min normal + its negation"),
      make(0x3F, 0xBF, "cancellation", "1.875 + -1.875"),
      make(0x00, 0x80, "signed_zero", "+0 + -0"),
      make(0x80, 0x80, "signed_zero", "-0 + -0 keeps -0"),
      make(0x00, 0x00, "signed_zero", "+0 + +0"),
      make(0x80, 0x03, "signed_zero", "-0 + subnormal"),
      make(0x07, 0x01, "boundary", "max subnormal + min subnormal reaches min normal"),
      make(0x07, 0x08, "boundary", "max subnormal + min normal"),
      make(0x04, 0x04, "boundary", "two subnormals sum to min normal"),
      make(0x08, 0x81, "boundary", "min normal - min subnormal drops to max subnormal"),
      make(0x09, 0x8A, "boundary", "normal difference lands in subnormals"),
      make(0x3F, 0x28, "boundary", "1.875 + 0.25 crosses a binade"),
      make(0x7E, 0x7E, "saturation", "448 + 448"),
      make(0xFE, 0xFE, "saturation", "-448 + -448"),
      make(0x7E, 0x60, "saturation", "448 + 32 rounds past max"),
      make(0x7E, 0x58, "saturation", "448 + 16 ties back to 448"),
      make(0x78, 0x78, "saturation", "256 + 256"),
      make(0x77, 0x77, "saturation", "240 + 240"),
      make(0x38, 0x01, "alignment", "1 + min subnormal, delta E = 6"),
      make(0x7E, 0x01, "alignment", "448 + min subnormal, delta E = 14"),
      make(0x7E, 0x81, "alignment", "448 - min subnormal"),
      make(0x60, 0x08, "alignment", "delta E = 11"),
      make(0x60, 0x88, "alignment", "delta E = 11 with subtraction"),
      make(0x38, 0x18, "alignment", "exact half ulp ties to even"),
      make(0x39, 0x18, "alignment", "half ulp on odd significand rounds up"),
      make(0x38, 0x19, "alignment", "just above half ulp"),
      make(0xB8, 0x20, "general", "-1 + 0.125"),
      make(0x44, 0xC2, "general", "3 - 2.5"),
      make(0x3C, 0x3C, "general", "1.5 + 1.5"),
  };
  return suite;
}

std::string corner_suite_json(const std::vector<CornerCase>& cases) {
  nlohmann::ordered_json j;
  j["format"] = "snnfp8-corner-suite";
  j["version"] = kCornerSuiteVersion;
  j["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : cases)
    j["cases"].push_back({{"a", to_hex(c.a)}, {"b", to_hex(c.b)}, {"category", c.category}, {"note", c.note}});
  return j.dump(2) + "\n";
}

std::vector<CornerCase> parse_corner_suite(const std::string& json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (j.at("format") != "snnfp8-corner-suite") throw std::runtime_error("not a corner suite");
    if (j.at("version") != kCornerSuiteVersion)
      throw std::runtime_error("unsupported corner suite version " + j.at("version").dump());
    std::vector<CornerCase> out;
    for (const auto& c : j.at("cases"))
      out.push_back({parse_code(c.at("a").get<std::string>()), parse_code(c.at("b").get<std::string>()),
                     c.at("category").get<std::string>(), c.value("note", "")});
    if (out.empty()) throw std::runtime_error("corner suite has no cases");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("corner suite: ") + e.what());
  }
}

}  // namespace snnfp8
