#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "snnfp8/fp8.hpp"
#include "snnfp8/simulator.hpp"

namespace snnfp8 {

/// Row-major rank-2 tensor of FP8 codes.
class Fp8Tensor {
 public:
  Fp8Tensor() = default;
  Fp8Tensor(std::size_t rows, std::size_t cols, Fp8Code fill = Fp8Code{});
  Fp8Tensor(std::size_t rows, std::size_t cols, std::vector<Fp8Code> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  Fp8Code& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Fp8Code at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Fp8Code> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Fp8Code>& data() const { return data_; }

  friend bool operator==(const Fp8Tensor&, const Fp8Tensor&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Fp8Code> data_;
};

/// Uniformly random finite codes with |value| <= max_abs.
Fp8Tensor random_tensor(std::size_t rows, std::size_t cols, std::uint64_t seed,
                        double max_abs = 448.0);

enum class Accumulation { Tree, Sequential };
std::string_view to_string(Accumulation a);

/// Elementary operations used by the linear layer.
class Fp8Arithmetic {
 public:
  virtual ~Fp8Arithmetic() = default;
  virtual Fp8Code mul(Fp8Code a, Fp8Code b) const = 0;
  virtual Fp8Code add(Fp8Code a, Fp8Code b) const = 0;
  virtual std::string name() const = 0;
};

/// Every op runs through the spiking multiplier / adder circuits. Thread-safe.
class SpikingArithmetic final : public Fp8Arithmetic {
 public:
  explicit SpikingArithmetic(SimConfig cfg = {}, OverflowPolicy policy = OverflowPolicy::Saturate)
      : cfg_(cfg), policy_(policy) {}
  Fp8Code mul(Fp8Code a, Fp8Code b) const override;
  Fp8Code add(Fp8Code a, Fp8Code b) const override;
  std::string name() const override { return "spiking"; }

 private:
  SimConfig cfg_;
  OverflowPolicy policy_;
};

/// Golden-model ops (fast-check mode).
class OracleArithmetic final : public Fp8Arithmetic {
 public:
  explicit OracleArithmetic(OverflowPolicy policy = OverflowPolicy::Saturate) : policy_(policy) {}
  Fp8Code mul(Fp8Code a, Fp8Code b) const override { return oracle_mul(a, b, policy_); }
  Fp8Code add(Fp8Code a, Fp8Code b) const override { return oracle_add(a, b, policy_); }
  std::string name() const override { return "oracle"; }

 private:
  OverflowPolicy policy_;
};

/// ceil(log2(d)); 0 for d <= 1.
unsigned tree_levels(std::size_t d);

/// Reduces `terms` with `add`. Tree mode pairs neighbours level by level and
/// passes an unpaired last element through; sequential mode folds left.
Fp8Code accumulate(std::span<const Fp8Code> terms, Accumulation mode, const Fp8Arithmetic& ops);

struct LinearResult {
  Fp8Tensor y;          // B x D_out
  unsigned add_levels;  // add levels on the critical path
  unsigned unit_steps;  // add_levels + 1 multiply level
};

/// Y = X W^T with X: B x D_in and W: D_out x D_in. Throws std::invalid_argument
/// on shape mismatch. `threads` = 0 uses every hardware thread.
LinearResult linear_forward(const Fp8Tensor& x, const Fp8Tensor& w, Accumulation mode,
                            const Fp8Arithmetic& ops, unsigned threads = 0);

/// Latency in logical steps: tree = T_mul + ceil(log2 D) T_add,
/// sequential = T_mul + (D - 1) T_add.
struct LatencyModel {
  unsigned t_mul = 1;
  unsigned t_add = 1;

  static LatencyModel unit() { return {1, 1}; }
  /// Depths of the cached multiplier and adder circuits.
  static LatencyModel from_circuits();

  std::size_t steps(std::size_t d_in, Accumulation mode) const;
};

/// Steps per operation of the serial temporal adder, used only as a constant
/// in reports.
inline constexpr unsigned kTemporalStepsPerOp = 19;

struct LatencyReport {
  std::size_t d_in = 0;
  unsigned add_levels = 0;
  std::size_t unit_tree = 0;
  std::size_t unit_sequential = 0;
  double unit_speedup = 0;
  LatencyModel depth_model;
  std::size_t depth_tree = 0;
  std::size_t depth_sequential = 0;
  double depth_speedup = 0;
  std::size_t temporal_serial = 0;  // kTemporalStepsPerOp * d_in
};

LatencyReport latency_report(std::size_t d_in, const LatencyModel& depth_model);

struct AssociativityAudit {
  std::size_t elements = 0;
  std::size_t matches = 0;
  int max_ulp = 0;
  double match_rate() const { return elements ? static_cast<double>(matches) / elements : 1.0; }
};

/// Compares tree and sequential accumulation elementwise.
AssociativityAudit nonassociativity_audit(const Fp8Tensor& x, const Fp8Tensor& w,
                                          const Fp8Arithmetic& ops, unsigned threads = 0);

/// Binary tensor file: u32 little-endian header length, JSON header
/// {"dtype":"fp8_e4m3fn","shape":[rows,cols]}, then rows*cols code bytes.
void write_tensor(std::ostream& out, const Fp8Tensor& t);
Fp8Tensor read_tensor(std::istream& in);
void write_tensor_file(const std::string& path, const Fp8Tensor& t);
Fp8Tensor read_tensor_file(const std::string& path);

}  // namespace snnfp8
