#include "snnfp8/report.hpp"

namespace snnfp8 {

nlohmann::ordered_json report_header(std::string_view kind) {
  nlohmann::ordered_json j;
  j["schema"] = "snnfp8-report";
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = kind;
  return j;
}

nlohmann::ordered_json config_json(const SimConfig& cfg) {
  nlohmann::ordered_json j;
  j["mode"] = cfg.mode == DynamicsMode::IdealIF ? "ideal_if" : "lif";
  j["beta"] = cfg.effective_beta();
  j["sigma"] = cfg.sigma;
  j["seed"] = cfg.seed;
  j["prng"] = "mt19937_64";
  j["noise_model"] = "gaussian, resampled per neuron per step, added to summed input current";
  return j;
}

std::string_view to_string(OverflowPolicy p) {
  return p == OverflowPolicy::Saturate ? "saturate" : "nan";
}

}  // namespace snnfp8
