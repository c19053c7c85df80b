#include "snnfp8/robustness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "parallel.hpp"
#include "snnfp8/adder.hpp"
#include "snnfp8/corner_suite.hpp"
#include "snnfp8/fp8_unit.hpp"
#include "snnfp8/gates.hpp"
#include "snnfp8/report.hpp"

namespace snnfp8 {

namespace {

constexpr std::array<std::pair<ScanTarget, std::string_view>, 5> kTargetNames = {{
    {ScanTarget::And, "and"},
    {ScanTarget::Or, "or"},
    {ScanTarget::Xor, "xor"},
    {ScanTarget::SpatialAdder, "adder"},
    {ScanTarget::Temporal, "temporal"},
}};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Circuit build_temporal_accumulator() {
  CircuitBuilder b;
  const Wire x = b.add_input("x");
  b.add_output(b.add_neuron(2.0, {{x, 1.0}}), "y");
  return b.build();
}

GateKind gate_of(ScanTarget t) {
  switch (t) {
    case ScanTarget::And: return GateKind::And;
    case ScanTarget::Or: return GateKind::Or;
    case ScanTarget::Xor: return GateKind::Xor;
    default: throw std::invalid_argument("not a gate target");
  }
}

std::size_t case_count(ScanTarget t) {
  return t == ScanTarget::SpatialAdder ? adder_corner_suite().size() : 4;
}

// Runs `trials` seeded evaluations of every row / case and fills `point`.
void run_point(ScanPoint& point, std::size_t point_index, std::size_t trials, const ScanSpec& spec) {
  const ScanTarget target = point.target;
  const std::size_t cases = case_count(target);
  const std::size_t total = cases * trials;
  const unsigned threads = detail::resolve_threads(spec.threads);
  constexpr std::size_t kChunk = 1024;
  std::vector<std::size_t> failures_by_chunk_case(((total + kChunk - 1) / kChunk) * cases, 0);

  const auto config_for = [&](std::uint64_t trial) {
    const bool noisy = point.sigma > 0;
    return SimConfig::leaky(point.beta, point.sigma,
                            noisy ? trial_seed(spec.seed, target, point_index, trial) : 0);
  };

  if (target == ScanTarget::SpatialAdder) {
    const auto& suite = adder_corner_suite();
    std::vector<Fp8BinaryUnit> units;
    for (unsigned w = 0; w < threads; ++w) units.emplace_back(adder_circuit());
    detail::parallel_chunks(total, threads, kChunk, [&](unsigned w, std::size_t lo, std::size_t hi) {
      std::size_t* fails = &failures_by_chunk_case[(lo / kChunk) * cases];
      for (std::size_t i = lo; i < hi; ++i) {
        const CornerCase& c = suite[i / trials];
        const Fp8Code got = units[w].apply(c.a, c.b, config_for(i));
        if (!(got == oracle_add(c.a, c.b))) ++fails[i / trials];
      }
    });
  } else if (target == ScanTarget::Temporal) {
    detail::parallel_chunks(total, threads, kChunk, [&](unsigned, std::size_t lo, std::size_t hi) {
      std::size_t* fails = &failures_by_chunk_case[(lo / kChunk) * cases];
      for (std::size_t i = lo; i < hi; ++i) {
        const std::size_t row = i / trials;
        const std::uint8_t a = (row >> 1) & 1, b = row & 1;
        if (temporal_accumulate(a, b, config_for(i)) != (a & b)) ++fails[row];
      }
    });
  } else {
    const GateKind kind = gate_of(target);
    const Circuit& circuit = scan_circuit(target);
    std::vector<SpatialEvaluator> evals;
    for (unsigned w = 0; w < threads; ++w) evals.emplace_back(circuit);
    detail::parallel_chunks(total, threads, kChunk, [&](unsigned w, std::size_t lo, std::size_t hi) {
      std::size_t* fails = &failures_by_chunk_case[(lo / kChunk) * cases];
      std::array<std::uint8_t, 2> in{};
      std::array<std::uint8_t, 1> out{};
      for (std::size_t i = lo; i < hi; ++i) {
        const std::size_t row = i / trials;
        in = {static_cast<std::uint8_t>((row >> 1) & 1), static_cast<std::uint8_t>(row & 1)};
        evals[w].run(in, out, config_for(i));
        if (out[0] != gate_truth(kind, {in[0], in[1]})[0]) ++fails[row];
      }
    });
  }

  point.trials = total;
  point.case_failures.assign(cases, 0);
  for (std::size_t k = 0; k < failures_by_chunk_case.size(); ++k)
    point.case_failures[k % cases] += failures_by_chunk_case[k];
  std::size_t failed = 0;
  for (auto f : point.case_failures) failed += f;
  point.passes = total - failed;
}

nlohmann::ordered_json spec_json(const ScanSpec& spec) {
  nlohmann::ordered_json j;
  j["targets"] = nlohmann::ordered_json::array();
  for (auto t : spec.targets) j["targets"].push_back(to_string(t));
  j["betas"] = spec.betas;
  j["sigmas"] = spec.sigmas;
  j["trials"] = spec.trials;
  j["adder_trials"] = spec.adder_trials;
  j["seed"] = spec.seed;
  j["threads"] = spec.threads;
  return j;
}

}  // namespace

std::string_view to_string(ScanTarget t) {
  for (auto& [k, v] : kTargetNames)
    if (k == t) return v;
  return "?";
}

ScanTarget parse_scan_target(std::string_view name) {
  for (auto& [k, v] : kTargetNames)
    if (v == name) return k;
  throw std::invalid_argument("unknown scan target '" + std::string(name) + "'");
}

void validate(const ScanSpec& spec) {
  if (spec.targets.empty()) throw std::invalid_argument("scan spec: target list is empty");
  if (spec.betas.empty()) throw std::invalid_argument("scan spec: beta grid is empty");
  if (spec.sigmas.empty()) throw std::invalid_argument("scan spec: sigma grid is empty");
  if (spec.trials == 0 || spec.adder_trials == 0)
    throw std::invalid_argument("scan spec: trials must be >= 1");
  for (double b : spec.betas)
    if (!(b > 0.0 && b <= 1.0)) throw std::invalid_argument("scan spec: beta outside (0,1]");
  for (double s : spec.sigmas)
    if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("scan spec: sigma must be >= 0");
}

ScanSpec parse_scan_spec(const std::string& json_text) {
  ScanSpec spec;
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw std::invalid_argument("scan spec: expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      if (key == "targets") {
        spec.targets.clear();
        for (const auto& t : it.value()) spec.targets.push_back(parse_scan_target(t.get<std::string>()));
      } else if (key == "betas") {
        spec.betas = it.value().get<std::vector<double>>();
      } else if (key == "sigmas") {
        spec.sigmas = it.value().get<std::vector<double>>();
      } else if (key == "trials") {
        spec.trials = it.value().get<std::size_t>();
      } else if (key == "adder_trials") {
        spec.adder_trials = it.value().get<std::size_t>();
      } else if (key == "seed") {
        spec.seed = it.value().get<std::uint64_t>();
      } else if (key == "threads") {
        spec.threads = it.value().get<unsigned>();
      } else {
        throw std::invalid_argument("scan spec: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scan spec: ") + e.what());
  }
  validate(spec);
  return spec;
}

std::string scan_spec_json(const ScanSpec& spec) { return spec_json(spec).dump(2) + "\n"; }

std::uint64_t trial_seed(std::uint64_t seed, ScanTarget target, std::size_t point,
                         std::uint64_t trial) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(target));
  h = splitmix64(h ^ point);
  return splitmix64(h ^ trial);
}

const Circuit& scan_circuit(ScanTarget target) {
  static const Circuit and_gate = build_gate(GateKind::And).circuit;
  static const Circuit or_gate = build_gate(GateKind::Or).circuit;
  static const Circuit xor_gate = build_gate(GateKind::Xor).circuit;
  static const Circuit temporal = build_temporal_accumulator();
  switch (target) {
    case ScanTarget::And: return and_gate;
    case ScanTarget::Or: return or_gate;
    case ScanTarget::Xor: return xor_gate;
    case ScanTarget::Temporal: return temporal;
    case ScanTarget::SpatialAdder: return adder_circuit();
  }
  throw std::invalid_argument("unknown scan target");
}

std::uint8_t temporal_accumulate(std::uint8_t a, std::uint8_t b, const SimConfig& cfg) {
  const auto out = evaluate_temporal_reference(scan_circuit(ScanTarget::Temporal), {{a}, {b}}, cfg);
  return out[1][0];
}

ScanResult beta_scan(const ScanSpec& spec) {
  validate(spec);
  ScanResult r{"beta", spec, {}, {}};
  for (ScanTarget t : spec.targets) {
    for (std::size_t p = 0; p < spec.betas.size(); ++p) {
      ScanPoint point{t, spec.betas[p], 0.0, 0, 0, {}};
      run_point(point, p, 1, spec);
      r.points.push_back(std::move(point));
    }
  }
  return r;
}

ScanResult sigma_scan(const ScanSpec& spec) {
  validate(spec);
  ScanResult r{"sigma", spec, {}, {}};
  for (ScanTarget t : spec.targets) {
    auto& first = r.first_failure_sigma[t];
    for (std::size_t p = 0; p < spec.sigmas.size(); ++p) {
      ScanPoint point{t, 1.0, spec.sigmas[p], 0, 0, {}};
      const std::size_t trials = spec.sigmas[p] > 0
                                     ? (t == ScanTarget::SpatialAdder ? spec.adder_trials : spec.trials)
                                     : 1;
      run_point(point, p, trials, spec);
      if (point.passes < point.trials && (!first || point.sigma < *first)) first = point.sigma;
      r.points.push_back(std::move(point));
    }
  }
  return r;
}

std::string scan_result_json(const ScanResult& result) {
  auto j = report_header("scan");
  j["scan"] = result.kind;
  j["spec"] = spec_json(result.spec);
  j["interpretation"] = {
      {"snr", "signal = unit spike current (synaptic weight 1.0); SNR = 1/sigma"},
      {"noise", "gaussian N(0, sigma^2) per neuron per step on the summed input current"},
      {"prng", "mt19937_64 per trial, seeded by splitmix64(seed, target, point, trial)"},
      {"adder_accuracy", "fraction of corner-suite evaluations with bit-exact output"},
      {"first_failure", "smallest grid sigma with any observed failure"},
  };
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : result.points) {
    nlohmann::ordered_json pj;
    pj["target"] = to_string(p.target);
    pj["beta"] = p.beta;
    pj["sigma"] = p.sigma;
    pj["trials"] = p.trials;
    pj["passes"] = p.passes;
    pj["accuracy"] = p.accuracy();
    pj["case_failures"] = p.case_failures;
    j["points"].push_back(std::move(pj));
  }
  if (result.kind == "sigma") {
    auto& ff = j["first_failure_sigma"] = nlohmann::ordered_json::object();
    for (ScanTarget t : result.spec.targets) {
      const auto it = result.first_failure_sigma.find(t);
      ff[std::string(to_string(t))] =
          it != result.first_failure_sigma.end() && it->second ? nlohmann::ordered_json(*it->second)
                                                               : nlohmann::ordered_json(nullptr);
    }
  }
  // x/y series for external plotting.
  auto& series = j["series"] = nlohmann::ordered_json::array();
  for (ScanTarget t : result.spec.targets) {
    nlohmann::ordered_json s{{"target", to_string(t)}, {"x", nlohmann::ordered_json::array()},
                             {"y", nlohmann::ordered_json::array()}};
    for (const auto& p : result.points) {
      if (p.target != t) continue;
      s["x"].push_back(result.kind == "beta" ? p.beta : p.sigma);
      s["y"].push_back(p.accuracy());
    }
    series.push_back(std::move(s));
  }
  return j.dump(2) + "\n";
}

std::string scan_result_csv(const ScanResult& result) {
  std::ostringstream out;
  out << "scan,target,beta,sigma,trials,passes,accuracy\n";
  for (const auto& p : result.points)
    out << result.kind << ',' << to_string(p.target) << ',' << p.beta << ',' << p.sigma << ','
        << p.trials << ',' << p.passes << ',' << p.accuracy() << '\n';
  return out.str();
}

}  // namespace snnfp8
