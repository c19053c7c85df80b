#include "snnfp8/linear.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "parallel.hpp"
#include "snnfp8/adder.hpp"
#include "snnfp8/io.hpp"
#include "snnfp8/multiplier.hpp"

namespace snnfp8 {

Fp8Tensor::Fp8Tensor(std::size_t rows, std::size_t cols, Fp8Code fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Fp8Tensor::Fp8Tensor(std::size_t rows, std::size_t cols, std::vector<Fp8Code> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("Fp8Tensor: element count != rows*cols");
}

Fp8Tensor random_tensor(std::size_t rows, std::size_t cols, std::uint64_t seed, double max_abs) {
  std::vector<Fp8Code> pool;
  for (Fp8Code c : finite_codes())
    if (std::abs(to_double(c)) <= max_abs) pool.push_back(c);
  if (pool.empty()) throw std::invalid_argument("random_tensor: no code within max_abs");
  std::mt19937_64 rng(seed);
  std::vector<Fp8Code> data(rows * cols);
  for (auto& c : data) c = pool[rng() % pool.size()];
  return {rows, cols, std::move(data)};
}

std::string_view to_string(Accumulation a) {
  return a == Accumulation::Tree ? "tree" : "sequential";
}

Fp8Code SpikingArithmetic::mul(Fp8Code a, Fp8Code b) const { return snn_mul(a, b, cfg_, policy_); }
Fp8Code SpikingArithmetic::add(Fp8Code a, Fp8Code b) const { return snn_add(a, b, cfg_, policy_); }

unsigned tree_levels(std::size_t d) {
  return d <= 1 ? 0u : static_cast<unsigned>(std::bit_width(d - 1));
}

Fp8Code accumulate(std::span<const Fp8Code> terms, Accumulation mode, const Fp8Arithmetic& ops) {
  if (terms.empty()) throw std::invalid_argument("accumulate: no terms");
  if (mode == Accumulation::Sequential) {
    Fp8Code acc = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i) acc = ops.add(acc, terms[i]);
    return acc;
  }
  std::vector<Fp8Code> level(terms.begin(), terms.end());
  while (level.size() > 1) {
    std::size_t out = 0;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) level[out++] = ops.add(level[i], level[i + 1]);
    if (level.size() % 2) level[out++] = level.back();
    level.resize(out);
  }
  return level[0];
}

LinearResult linear_forward(const Fp8Tensor& x, const Fp8Tensor& w, Accumulation mode,
                            const Fp8Arithmetic& ops, unsigned threads) {
  if (x.cols() != w.cols())
    throw std::invalid_argument("linear_forward: inner dimensions differ (" + std::to_string(x.cols()) +
                                " vs " + std::to_string(w.cols()) + ")");
  if (x.cols() == 0) throw std::invalid_argument("linear_forward: D_in must be >= 1");
  const std::size_t batch = x.rows(), d_out = w.rows(), d_in = x.cols();
  Fp8Tensor y(batch, d_out);
  detail::parallel_chunks(batch * d_out, threads, 16, [&](unsigned, std::size_t lo, std::size_t hi) {
    std::vector<Fp8Code> products(d_in);
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const std::size_t b = idx / d_out, j = idx % d_out;
      for (std::size_t k = 0; k < d_in; ++k) products[k] = ops.mul(x.at(b, k), w.at(j, k));
      y.at(b, j) = accumulate(products, mode, ops);
    }
  });
  const unsigned levels = mode == Accumulation::Tree ? tree_levels(d_in) : static_cast<unsigned>(d_in - 1);
  return {std::move(y), levels, levels + 1};
}

LatencyModel LatencyModel::from_circuits() {
  return {multiplier_circuit().depth(), adder_circuit().depth()};
}

std::size_t LatencyModel::steps(std::size_t d_in, Accumulation mode) const {
  if (d_in == 0) throw std::invalid_argument("latency: D_in must be >= 1");
  const std::size_t adds = mode == Accumulation::Tree ? tree_levels(d_in) : d_in - 1;
  return t_mul + adds * t_add;
}

LatencyReport latency_report(std::size_t d_in, const LatencyModel& depth_model) {
  LatencyReport r;
  r.d_in = d_in;
  r.add_levels = tree_levels(d_in);
  const LatencyModel unit = LatencyModel::unit();
  r.unit_tree = unit.steps(d_in, Accumulation::Tree);
  r.unit_sequential = unit.steps(d_in, Accumulation::Sequential);
  r.unit_speedup = static_cast<double>(r.unit_sequential) / r.unit_tree;
  r.depth_model = depth_model;
  r.depth_tree = depth_model.steps(d_in, Accumulation::Tree);
  r.depth_sequential = depth_model.steps(d_in, Accumulation::Sequential);
  r.depth_speedup = static_cast<double>(r.depth_sequential) / r.depth_tree;
  r.temporal_serial = kTemporalStepsPerOp * d_in;
  return r;
}

AssociativityAudit nonassociativity_audit(const Fp8Tensor& x, const Fp8Tensor& w,
                                          const Fp8Arithmetic& ops, unsigned threads) {
  const Fp8Tensor tree = linear_forward(x, w, Accumulation::Tree, ops, threads).y;
  const Fp8Tensor seq = linear_forward(x, w, Accumulation::Sequential, ops, threads).y;
  AssociativityAudit audit;
  audit.elements = tree.size();
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const Fp8Code a = tree.data()[i], b = seq.data()[i];
    if (a == b) {
      ++audit.matches;
    } else if (!a.is_nan() && !b.is_nan()) {
      audit.max_ulp = std::max(audit.max_ulp, ulp_distance(a, b));
    }
  }
  return audit;
}

void write_tensor(std::ostream& out, const Fp8Tensor& t) {
  const std::string header =
      nlohmann::json{{"dtype", "fp8_e4m3fn"}, {"shape", {t.rows(), t.cols()}}}.dump();
  const auto n = static_cast<std::uint32_t>(header.size());
  const unsigned char len[4] = {static_cast<unsigned char>(n), static_cast<unsigned char>(n >> 8),
                                static_cast<unsigned char>(n >> 16), static_cast<unsigned char>(n >> 24)};
  out.write(reinterpret_cast<const char*>(len), 4);
  out << header;
  for (Fp8Code c : t.data()) out.put(static_cast<char>(c.bits()));
}

Fp8Tensor read_tensor(std::istream& in) {
  unsigned char len[4];
  if (!in.read(reinterpret_cast<char*>(len), 4)) throw std::runtime_error("tensor: truncated length");
  const std::uint32_t n = len[0] | len[1] << 8 | len[2] << 16 | static_cast<std::uint32_t>(len[3]) << 24;
  if (n > (1u << 20)) throw std::runtime_error("tensor: header too large");
  std::string header(n, '\0');
  if (!in.read(header.data(), n)) throw std::runtime_error("tensor: truncated header");
  const auto h = nlohmann::json::parse(header);
  if (h.at("dtype") != "fp8_e4m3fn") throw std::runtime_error("tensor: unsupported dtype");
  const auto& shape = h.at("shape");
  if (!shape.is_array() || shape.size() != 2) throw std::runtime_error("tensor: shape must be rank 2");
  const auto rows = shape[0].get<std::size_t>(), cols = shape[1].get<std::size_t>();
  std::vector<Fp8Code> data(rows * cols);
  for (auto& c : data) {
    const int ch = in.get();
    if (ch == std::char_traits<char>::eof()) throw std::runtime_error("tensor: truncated data");
    c = Fp8Code(static_cast<std::uint8_t>(ch));
  }
  return {rows, cols, std::move(data)};
}

void write_tensor_file(const std::string& path, const Fp8Tensor& t) {
  std::ostringstream ss;
  write_tensor(ss, t);
  write_file_atomic(path, ss.str());
}

Fp8Tensor read_tensor_file(const std::string& path) {
  std::istringstream ss(read_file(path));
  return read_tensor(ss);
}

}  // namespace snnfp8
