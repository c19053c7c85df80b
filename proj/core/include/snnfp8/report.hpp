#pragma once

#include <string_view>

#include <nlohmann/json.hpp>

#include "snnfp8/fp8.hpp"
#include "snnfp8/simulator.hpp"

namespace snnfp8 {

inline constexpr int kReportSchemaVersion = 1;

/// {"schema":"snnfp8-report","schema_version":1,"kind":kind}
nlohmann::ordered_json report_header(std::string_view kind);

/// Dynamics echo: mode, beta, sigma, seed, prng and noise model.
nlohmann::ordered_json config_json(const SimConfig& cfg);

std::string_view to_string(OverflowPolicy p);  // "saturate" / "nan"

}  // namespace snnfp8
