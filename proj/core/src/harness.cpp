#include "snnfp8/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

#include "datapath.hpp"
#include "parallel.hpp"
#include "snnfp8/adder.hpp"
#include "snnfp8/fp8_unit.hpp"
#include "snnfp8/io.hpp"
#include "snnfp8/multiplier.hpp"
#include "snnfp8/report.hpp"

namespace snnfp8 {

namespace {

using Clock = std::chrono::steady_clock;
using ojson = nlohmann::ordered_json;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct PairRun {
  std::vector<Fp8Code> got;
  std::size_t spikes = 0;
};

PairRun evaluate_pairs(const Circuit& circuit, const std::vector<std::pair<Fp8Code, Fp8Code>>& pairs,
                       const SimConfig& cfg, unsigned threads) {
  threads = detail::resolve_threads(threads);
  PairRun run;
  run.got.resize(pairs.size());
  std::vector<Fp8BinaryUnit> units;
  for (unsigned w = 0; w < threads; ++w) units.emplace_back(circuit);
  std::vector<std::size_t> spikes(threads, 0);
  detail::parallel_chunks(pairs.size(), threads, 2048, [&](unsigned w, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      run.got[i] = units[w].apply(pairs[i].first, pairs[i].second, cfg);
      spikes[w] += units[w].last_spike_count();
    }
  });
  for (auto s : spikes) run.spikes += s;
  return run;
}

bool same_result(Fp8Code got, Fp8Code expected) {
  return got == expected;
}

std::string class_label(Fp8Code a, Fp8Code b) {
  return std::string(to_string(classify(a))) + " x " + std::string(to_string(classify(b)));
}

std::vector<std::pair<Fp8Code, Fp8Code>> all_finite_pairs() {
  std::vector<std::pair<Fp8Code, Fp8Code>> pairs;
  const auto& codes = finite_codes();
  pairs.reserve(codes.size() * codes.size());
  for (Fp8Code a : codes)
    for (Fp8Code b : codes) pairs.emplace_back(a, b);
  return pairs;
}

// Row bookkeeping that keeps insertion order.
class RowTable {
 public:
  ClassRow& row(const std::string& label) {
    auto it = index_.find(label);
    if (it != index_.end()) return rows_[it->second];
    index_[label] = rows_.size();
    rows_.push_back({label, 0, 0});
    return rows_.back();
  }
  std::vector<ClassRow> take() { return std::move(rows_); }

 private:
  std::vector<ClassRow> rows_;
  std::map<std::string, std::size_t> index_;
};

void record(SweepReport& r, ClassRow& row, Fp8Code a, Fp8Code b, Fp8Code got, Fp8Code expected) {
  ++row.total;
  ++r.total;
  if (same_result(got, expected)) {
    ++row.passed;
    ++r.passed;
    return;
  }
  ++r.failure_count;
  if (r.failures.size() < kMaxListedFailures) r.failures.push_back({a, b, got, expected});
}

void seed_class_rows(RowTable& table, const char* prefix) {
  for (auto ca : {Fp8Class::Zero, Fp8Class::Subnormal, Fp8Class::Normal})
    for (auto cb : {Fp8Class::Zero, Fp8Class::Subnormal, Fp8Class::Normal})
      table.row(prefix + std::string(to_string(ca)) + " x " + std::string(to_string(cb)));
}

}  // namespace

SweepReport verify_mul(const VerifyOptions& options) {
  validate(options.config);
  const auto t0 = Clock::now();
  SweepReport r;
  r.campaign = "verify-mul";
  r.config = options.config;
  r.overflow = options.overflow;
  r.sticky_extra = options.sticky_extra;
  r.threads = detail::resolve_threads(options.threads);
  const Circuit circuit = build_multiplier({options.overflow, options.sticky_extra});
  const CircuitStats stats = circuit_stats(circuit);
  r.neurons = stats.neurons;
  r.depth = stats.depth;

  const auto pairs = all_finite_pairs();
  const PairRun run = evaluate_pairs(circuit, pairs, options.config, options.threads);
  RowTable table;
  seed_class_rows(table, "");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    record(r, table.row(class_label(a, b)), a, b, run.got[i], oracle_mul(a, b, options.overflow));
  }
  r.rows = table.take();
  r.mean_sparsity = static_cast<double>(run.spikes) / (static_cast<double>(pairs.size()) * r.neurons);
  if (!options.sticky_extra) r.notes.push_back("sticky-extra correction gates disabled (debug)");
  r.notes.push_back("sweep covers all 254 x 254 signed finite pairs");
  r.notes.push_back("NaN detection and overflow clamp are built from spiking gates");
  r.wall_seconds = seconds_since(t0);
  return r;
}

SweepReport verify_add(const VerifyOptions& options) {
  validate(options.config);
  const auto t0 = Clock::now();
  SweepReport r;
  r.campaign = "verify-add";
  r.config = options.config;
  r.overflow = options.overflow;
  r.threads = detail::resolve_threads(options.threads);
  const Circuit& circuit = adder_circuit(options.overflow);
  const CircuitStats stats = circuit_stats(circuit);
  r.neurons = stats.neurons;
  r.depth = stats.depth;

  RowTable table;
  std::size_t evaluations = 0, spikes = 0;
  const auto run_rows = [&](const std::vector<std::pair<Fp8Code, Fp8Code>>& pairs, auto&& label_of) {
    const PairRun run = evaluate_pairs(circuit, pairs, options.config, options.threads);
    evaluations += pairs.size();
    spikes += run.spikes;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto [a, b] = pairs[i];
      record(r, table.row(label_of(i)), a, b, run.got[i], oracle_add(a, b, options.overflow));
    }
    return run;
  };

  const auto& suite = options.corner_suite ? *options.corner_suite : adder_corner_suite();
  std::vector<std::pair<Fp8Code, Fp8Code>> corner;
  for (const auto& c : suite) corner.emplace_back(c.a, c.b);
  run_rows(corner, [&](std::size_t i) { return "corner:" + suite[i].category; });

  std::mt19937_64 rng(options.random_seed);
  const auto& codes = finite_codes();
  std::vector<std::pair<Fp8Code, Fp8Code>> random;
  for (std::size_t t = 0; t < options.random_trials; ++t) {
    const Fp8Code a = codes[rng() % codes.size()];
    const Fp8Code b = codes[rng() % codes.size()];
    random.emplace_back(a, b);
  }
  run_rows(random, [](std::size_t) { return std::string("random"); });

  if (options.exhaustive) {
    const auto pairs = all_finite_pairs();
    seed_class_rows(table, "exhaustive:");
    const PairRun run =
        run_rows(pairs, [&](std::size_t i) { return "exhaustive:" + class_label(pairs[i].first, pairs[i].second); });
    // Exact cancellation x + (-x) must give the +0 code.
    ClassRow& cancel = table.row("cancellation:x+(-x)=+0");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto [a, b] = pairs[i];
      if (classify(a) == Fp8Class::Zero || !(b == a.negated())) continue;
      record(r, cancel, a, b, run.got[i], Fp8Code{0x00});
    }
  } else {
    r.notes.push_back("exhaustive sweep skipped");
  }
  r.rows = table.take();
  r.mean_sparsity = evaluations ? static_cast<double>(spikes) / (static_cast<double>(evaluations) * r.neurons) : 0;
  r.notes.push_back("corner suite version " + std::to_string(kCornerSuiteVersion) + ", " +
                    std::to_string(suite.size()) + " cases; random trials seeded with " +
                    std::to_string(options.random_seed));
  r.wall_seconds = seconds_since(t0);
  return r;
}

std::string sweep_report_json(const SweepReport& r) {
  auto j = report_header("sweep");
  j["campaign"] = r.campaign;
  auto cfg = config_json(r.config);
  cfg["overflow"] = to_string(r.overflow);
  cfg["saturate"] = r.overflow == OverflowPolicy::Saturate;
  if (r.campaign == "verify-mul") cfg["sticky_extra"] = r.sticky_extra;
  cfg["threads"] = r.threads;
  j["config"] = std::move(cfg);
  j["circuit"] = {{"neurons", r.neurons}, {"depth", r.depth}};
  j["rows"] = ojson::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"label", row.label}, {"total", row.total}, {"passed", row.passed}, {"pass_rate", row.pass_rate()}});
  j["total"] = r.total;
  j["passed"] = r.passed;
  j["pass_rate"] = r.pass_rate();
  j["failure_count"] = r.failure_count;
  j["failures"] = ojson::array();
  for (const auto& f : r.failures)
    j["failures"].push_back({{"a", to_hex(f.a)}, {"b", to_hex(f.b)}, {"got", to_hex(f.got)}, {"expected", to_hex(f.expected)}});
  j["mean_sparsity"] = r.mean_sparsity;
  j["wall_seconds"] = r.wall_seconds;
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

std::string sweep_report_csv(const SweepReport& r) {
  std::ostringstream out;
  out << "campaign,label,total,passed,pass_rate\n";
  for (const auto& row : r.rows)
    out << r.campaign << ",\"" << row.label << "\"," << row.total << ',' << row.passed << ','
        << row.pass_rate() << '\n';
  out << r.campaign << ",total," << r.total << ',' << r.passed << ',' << r.pass_rate() << '\n';
  return out.str();
}

std::string latency_report_json(const std::vector<LatencyReport>& reports) {
  auto j = report_header("latency");
  j["model"] = {
      {"tree", "T_mul + ceil(log2 D_in) * T_add"},
      {"sequential", "T_mul + (D_in - 1) * T_add"},
      {"unit_level", "T_mul = T_add = 1"},
      {"temporal_steps_per_op", kTemporalStepsPerOp},
  };
  j["entries"] = ojson::array();
  for (const auto& r : reports) {
    ojson e;
    e["d_in"] = r.d_in;
    e["add_levels"] = r.add_levels;
    e["unit"] = {{"tree", r.unit_tree}, {"sequential", r.unit_sequential}, {"speedup", r.unit_speedup}};
    e["depth"] = {{"t_mul", r.depth_model.t_mul}, {"t_add", r.depth_model.t_add},
                  {"tree", r.depth_tree}, {"sequential", r.depth_sequential}, {"speedup", r.depth_speedup}};
    e["temporal_serial_steps"] = r.temporal_serial;
    j["entries"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string latency_report_csv(const std::vector<LatencyReport>& reports) {
  std::ostringstream out;
  out << "d_in,add_levels,unit_tree,unit_sequential,unit_speedup,t_mul,t_add,depth_tree,"
         "depth_sequential,depth_speedup,temporal_serial\n";
  for (const auto& r : reports)
    out << r.d_in << ',' << r.add_levels << ',' << r.unit_tree << ',' << r.unit_sequential << ','
        << r.unit_speedup << ',' << r.depth_model.t_mul << ',' << r.depth_model.t_add << ','
        << r.depth_tree << ',' << r.depth_sequential << ',' << r.depth_speedup << ','
        << r.temporal_serial << '\n';
  return out.str();
}

// ---- MLP demo ----

namespace {

constexpr std::size_t kInputs = 16, kHidden = 8, kClasses = 4;

// Exact: any finite double is a dyadic rational.
Fp8Code quantize(double v) {
  if (v == 0) return Fp8Code{0x00};
  int e = 0;
  const double m = std::frexp(std::abs(v), &e);
  return encode_rne(ExactReal::make(v < 0, static_cast<std::uint64_t>(std::ldexp(m, 53)), e - 53));
}

std::string hex_codes(const Fp8Tensor& t) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (Fp8Code c : t.data()) {
    s.push_back(digits[c.bits() >> 4]);
    s.push_back(digits[c.bits() & 15]);
  }
  return s;
}

Fp8Tensor tensor_from_json(const nlohmann::json& layer) {
  const auto shape = layer.at("shape").get<std::vector<std::size_t>>();
  if (shape.size() != 2) throw std::runtime_error("weights: shape must be rank 2");
  const auto hex = layer.at("codes").get<std::string>();
  if (hex.size() != 2 * shape[0] * shape[1]) throw std::runtime_error("weights: code count does not match shape");
  std::vector<Fp8Code> data;
  for (std::size_t i = 0; i < hex.size(); i += 2) data.push_back(parse_code("0x" + hex.substr(i, 2)));
  return {shape[0], shape[1], std::move(data)};
}

std::uint32_t read_be32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("idx: truncated header");
  return static_cast<std::uint32_t>(b[0]) << 24 | b[1] << 16 | b[2] << 8 | b[3];
}

const Circuit& activation_circuit() {
  static const Circuit circuit = [] {
    using namespace detail;
    CircuitBuilder b;
    const Fp8Bus x = add_fp8_inputs(b, "x");
    const Wire nonzero = reduce_or(b, {x[1], x[2], x[3], x[4], x[5], x[6], x[7]});
    const Wire positive = gate_and(b, gate_and(b, gate_not(b, x[0]), nonzero), gate_not(b, detect_nan(b, x)));
    // 1.0 = [0 | 0111 | 000]
    const Fp8Bus y = {Wire::zero(), Wire::zero(), positive, positive, positive,
                      Wire::zero(), Wire::zero(), Wire::zero()};
    add_fp8_outputs(b, y, "y");
    return b.build();
  }();
  return circuit;
}

int argmax_row(const Fp8Tensor& t, std::size_t r) {
  int best = 0;
  double best_v = -INFINITY;
  for (std::size_t c = 0; c < t.cols(); ++c) {
    const double v = t.at(r, c).is_nan() ? -INFINITY : to_double(t.at(r, c));
    if (v > best_v) {
      best_v = v;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

MlpWeights synthetic_mlp_weights(std::uint64_t seed) {
  // Codes with |w| <= 1 keep hidden sums well inside range.
  return {random_tensor(kHidden, kInputs, seed, 1.0), random_tensor(kClasses, kHidden, seed + 1, 1.0)};
}

std::string mlp_weights_json(const MlpWeights& w, std::uint64_t seed) {
  ojson j;
  j["format"] = "snnfp8-mlp-weights";
  j["version"] = 1;
  j["seed"] = seed;
  j["activation"] = "spike: 1.0 if x > 0 else +0";
  j["layers"] = ojson::array();
  j["layers"].push_back({{"name", "w1"}, {"shape", {w.w1.rows(), w.w1.cols()}}, {"codes", hex_codes(w.w1)}});
  j["layers"].push_back({{"name", "w2"}, {"shape", {w.w2.rows(), w.w2.cols()}}, {"codes", hex_codes(w.w2)}});
  return j.dump(2) + "\n";
}

MlpWeights parse_mlp_weights(const std::string& json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (j.at("format") != "snnfp8-mlp-weights" || j.at("version") != 1)
      throw std::runtime_error("weights: unsupported format or version");
    const auto& layers = j.at("layers");
    if (layers.size() != 2) throw std::runtime_error("weights: expected two layers");
    MlpWeights w{tensor_from_json(layers[0]), tensor_from_json(layers[1])};
    if (w.w2.cols() != w.w1.rows()) throw std::runtime_error("weights: layer shapes do not chain");
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("weights: ") + e.what());
  }
}

MlpDataset synthetic_dataset(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::array<std::array<double, kInputs>, kClasses> prototypes{};
  for (auto& p : prototypes)
    for (auto& v : p) v = (rng() & 1) ? 0.75 : 0.0;
  MlpDataset d{Fp8Tensor(samples, kInputs), {}, "synthetic"};
  for (std::size_t s = 0; s < samples; ++s) {
    const int label = static_cast<int>(rng() % kClasses);
    d.labels.push_back(label);
    for (std::size_t k = 0; k < kInputs; ++k) {
      const double jitter = static_cast<double>(rng() >> 44) / static_cast<double>(1u << 20) * 0.25;
      d.images.at(s, k) = quantize(prototypes[label][k] + jitter);
    }
  }
  return d;
}

MlpDataset load_idx_dataset(const std::string& images_path, const std::string& labels_path,
                            std::size_t max_samples) {
  std::ifstream in(images_path, std::ios::binary);
  if (!in) throw std::runtime_error("idx: cannot open " + images_path);
  if (read_be32(in) != 0x00000803) throw std::runtime_error("idx: bad image magic");
  const std::size_t n = read_be32(in), rows = read_be32(in), cols = read_be32(in);
  if (rows < 4 || cols < 4) throw std::runtime_error("idx: images smaller than 4x4");
  const std::size_t count = std::min(n, max_samples);
  MlpDataset d{Fp8Tensor(count, kInputs), {}, "idx:" + images_path};
  std::vector<unsigned char> pixels(rows * cols);
  for (std::size_t s = 0; s < count; ++s) {
    if (!in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size())))
      throw std::runtime_error("idx: truncated image data");
    std::array<double, kInputs> sum{};
    std::array<int, kInputs> cnt{};
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        const std::size_t cell = (r * 4 / rows) * 4 + c * 4 / cols;
        sum[cell] += pixels[r * cols + c] / 255.0;
        ++cnt[cell];
      }
    for (std::size_t k = 0; k < kInputs; ++k) d.images.at(s, k) = quantize(sum[k] / cnt[k]);
  }
  if (!labels_path.empty()) {
    std::ifstream lin(labels_path, std::ios::binary);
    if (!lin) throw std::runtime_error("idx: cannot open " + labels_path);
    if (read_be32(lin) != 0x00000801) throw std::runtime_error("idx: bad label magic");
    if (read_be32(lin) < count) throw std::runtime_error("idx: fewer labels than images");
    for (std::size_t s = 0; s < count; ++s) {
      const int ch = lin.get();
      if (ch == std::char_traits<char>::eof()) throw std::runtime_error("idx: truncated labels");
      d.labels.push_back(ch % static_cast<int>(kClasses));
    }
  }
  return d;
}

Fp8Code spike_activation(Fp8Code x) {
  return (x.sign() == 0 && classify(x) != Fp8Class::Zero && !x.is_nan()) ? Fp8Code{0x38} : Fp8Code{0x00};
}

Fp8Code spike_activation_circuit(Fp8Code x, const SimConfig& cfg) {
  thread_local SpatialEvaluator eval(activation_circuit());
  const auto in = to_lines(x);
  std::array<std::uint8_t, 8> out{};
  eval.run(in, out, cfg);
  return from_lines(out);
}

MlpForward mlp_forward(const MlpWeights& w, const Fp8Tensor& x, Accumulation mode,
                       const Fp8Arithmetic& ops, bool spiking_activation, const SimConfig& cfg,
                       unsigned threads) {
  MlpForward f;
  f.hidden_pre = linear_forward(x, w.w1, mode, ops, threads).y;
  Fp8Tensor act(f.hidden_pre.rows(), f.hidden_pre.cols());
  for (std::size_t r = 0; r < act.rows(); ++r)
    for (std::size_t c = 0; c < act.cols(); ++c)
      act.at(r, c) = spiking_activation ? spike_activation_circuit(f.hidden_pre.at(r, c), cfg)
                                        : spike_activation(f.hidden_pre.at(r, c));
  f.logits = linear_forward(act, w.w2, mode, ops, threads).y;
  for (std::size_t r = 0; r < f.logits.rows(); ++r) f.argmax.push_back(argmax_row(f.logits, r));
  return f;
}

MlpDemoReport run_mlp_demo(const MlpDemoOptions& options) {
  const auto t0 = Clock::now();
  MlpDemoReport rep;
  rep.seed = options.seed;
  const MlpWeights weights = options.weights_path ? parse_mlp_weights(read_file(*options.weights_path))
                                                  : synthetic_mlp_weights(options.seed);
  if (weights.w1.cols() != kInputs)
    throw std::runtime_error("weights: first layer must take " + std::to_string(kInputs) + " inputs");
  rep.layer_shapes = {weights.w1.cols(), weights.w1.rows(), weights.w2.rows()};

  MlpDataset data;
  if (options.idx_images) {
    try {
      data = load_idx_dataset(*options.idx_images, options.idx_labels.value_or(""), options.samples);
    } catch (const std::exception& e) {
      rep.notes.push_back(std::string("warning: ") + e.what() + "; falling back to synthetic data");
      data = synthetic_dataset(options.samples, options.seed);
    }
  } else {
    data = synthetic_dataset(options.samples, options.seed);
  }
  rep.samples = data.images.rows();
  rep.data_source = data.source;

  const SpikingArithmetic spiking(options.config, options.overflow);
  const OracleArithmetic oracle(options.overflow);
  const Fp8Arithmetic& primary = options.fast_check ? static_cast<const Fp8Arithmetic&>(oracle) : spiking;
  rep.arithmetic = primary.name();

  const MlpForward run = mlp_forward(weights, data.images, Accumulation::Tree, primary, !options.fast_check,
                                     options.config, options.threads);
  const MlpForward ref = mlp_forward(weights, data.images, Accumulation::Tree, oracle, false, {}, options.threads);
  const MlpForward seq =
      mlp_forward(weights, data.images, Accumulation::Sequential, oracle, false, {}, options.threads);

  const std::size_t n = rep.samples;
  std::size_t agree = 0, seq_agree = 0, correct = 0;
  for (std::size_t s = 0; s < n; ++s) {
    agree += run.argmax[s] == ref.argmax[s];
    seq_agree += ref.argmax[s] == seq.argmax[s];
    if (!data.labels.empty()) correct += run.argmax[s] == data.labels[s];
  }
  // Bitwise match rate and max ULP gap over differing finite elements.
  const auto compare = [](const Fp8Tensor& a, const Fp8Tensor& b) {
    std::size_t m = 0;
    int ulp = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.data()[i] == b.data()[i])
        ++m;
      else if (!a.data()[i].is_nan() && !b.data()[i].is_nan())
        ulp = std::max(ulp, ulp_distance(a.data()[i], b.data()[i]));
    }
    return std::pair{a.size() ? static_cast<double>(m) / a.size() : 1.0, ulp};
  };
  rep.argmax_agreement = n ? static_cast<double>(agree) / n : 1.0;
  rep.tree_vs_sequential_argmax = n ? static_cast<double>(seq_agree) / n : 1.0;
  rep.bitwise_agreement = compare(run.logits, ref.logits).first;
  rep.tree_vs_sequential_hidden = compare(ref.hidden_pre, seq.hidden_pre).first;
  std::tie(rep.tree_vs_sequential_match, rep.max_ulp_tree_vs_sequential) = compare(ref.logits, seq.logits);
  if (!data.labels.empty()) rep.label_accuracy = n ? static_cast<double>(correct) / n : 0.0;
  rep.notes.push_back("activation: spike threshold (1.0 if x > 0 else +0) via a comparator circuit");
  rep.notes.push_back("reference forward: oracle arithmetic, same tree order");
  rep.notes.push_back("weights are seeded random, so label accuracy is incidental");
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

std::string mlp_report_json(const MlpDemoReport& r) {
  auto j = report_header("mlp");
  j["samples"] = r.samples;
  j["layer_shapes"] = r.layer_shapes;
  j["data_source"] = r.data_source;
  j["arithmetic"] = r.arithmetic;
  j["seed"] = r.seed;
  j["argmax_agreement"] = r.argmax_agreement;
  j["bitwise_agreement"] = r.bitwise_agreement;
  j["tree_vs_sequential"] = {{"logit_match_rate", r.tree_vs_sequential_match},
                             {"hidden_match_rate", r.tree_vs_sequential_hidden},
                             {"argmax_match_rate", r.tree_vs_sequential_argmax},
                             {"max_ulp", r.max_ulp_tree_vs_sequential}};
  j["label_accuracy"] = r.label_accuracy >= 0 ? ojson(r.label_accuracy) : ojson(nullptr);
  j["wall_seconds"] = r.wall_seconds;
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

std::string mlp_report_csv(const MlpDemoReport& r) {
  std::ostringstream out;
  out << "samples,arithmetic,argmax_agreement,bitwise_agreement,tree_vs_sequential_logits,"
         "tree_vs_sequential_hidden,tree_vs_sequential_argmax,max_ulp\n"
      << r.samples << ',' << r.arithmetic << ',' << r.argmax_agreement << ',' << r.bitwise_agreement
      << ',' << r.tree_vs_sequential_match << ',' << r.tree_vs_sequential_hidden << ','
      << r.tree_vs_sequential_argmax << ',' << r.max_ulp_tree_vs_sequential << '\n';
  return out.str();
}

}  // namespace snnfp8
