#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "snnfp8/linear.hpp"
#include "snnfp8/multiplier.hpp"

using namespace snnfp8;

namespace {

const Fp8Code kOne{0x38};

// Reference left fold and tree written independently of accumulate().
Fp8Code fold(const std::vector<Fp8Code>& v) {
  Fp8Code acc = v[0];
  for (std::size_t i = 1; i < v.size(); ++i) acc = oracle_add(acc, v[i]);
  return acc;
}

Fp8Code tree(std::vector<Fp8Code> v) {
  if (v.size() == 1) return v[0];
  std::vector<Fp8Code> next;
  for (std::size_t i = 0; i < v.size(); i += 2)
    next.push_back(i + 1 < v.size() ? oracle_add(v[i], v[i + 1]) : v[i]);
  return tree(next);
}

}  // namespace

TEST(TreeLevels, CeilLog2) {
  EXPECT_EQ(tree_levels(1), 0u);
  EXPECT_EQ(tree_levels(2), 1u);
  EXPECT_EQ(tree_levels(3), 2u);
  EXPECT_EQ(tree_levels(256), 8u);
  for (std::size_t d = 1; d <= 64; ++d)
    EXPECT_EQ(tree_levels(d), static_cast<unsigned>(std::ceil(std::log2(static_cast<double>(d))))) << d;
}

TEST(Linear, SingleInputIsOneMultiply) {
  const Fp8Tensor x(2, 1, std::vector<Fp8Code>{Fp8Code(0x40), Fp8Code(0x3C)});
  const Fp8Tensor w(3, 1, std::vector<Fp8Code>{Fp8Code(0x38), Fp8Code(0x44), Fp8Code(0xB0)});
  const LinearResult r = linear_forward(x, w, Accumulation::Tree, SpikingArithmetic{});
  EXPECT_EQ(r.add_levels, 0u);
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(r.y.at(b, j), snn_mul(x.at(b, 0), w.at(j, 0)));
}

TEST(Linear, AllOnesSumsToFour) {
  const Fp8Tensor x(1, 4, kOne), w(1, 4, kOne);
  for (auto mode : {Accumulation::Tree, Accumulation::Sequential})
    EXPECT_EQ(linear_forward(x, w, mode, SpikingArithmetic{}).y.at(0, 0), Fp8Code(0x48));
}

TEST(Linear, ShapeMismatch) {
  EXPECT_THROW(linear_forward(Fp8Tensor(1, 3), Fp8Tensor(1, 4), Accumulation::Tree, OracleArithmetic{}),
               std::invalid_argument);
}

TEST(Linear, AccumulateMatchesIndependentReductions) {
  for (std::size_t d : {1u, 2u, 3u, 5u, 7u, 16u, 33u, 64u}) {
    const Fp8Tensor t = random_tensor(1, d, d * 31, 8.0);
    const std::vector<Fp8Code> v(t.data());
    EXPECT_EQ(accumulate(v, Accumulation::Sequential, OracleArithmetic{}), fold(v)) << d;
    EXPECT_EQ(accumulate(v, Accumulation::Tree, OracleArithmetic{}), tree(v)) << d;
  }
}

TEST(Linear, SpikingTreeEqualsOracleTree) {
  const Fp8Tensor x = random_tensor(4, 37, 11, 4.0), w = random_tensor(6, 37, 12, 4.0);
  for (auto mode : {Accumulation::Tree, Accumulation::Sequential})
    EXPECT_EQ(linear_forward(x, w, mode, SpikingArithmetic{}).y, linear_forward(x, w, mode, OracleArithmetic{}).y);
}

TEST(Linear, ThreadCountDoesNotChangeResults) {
  const Fp8Tensor x = random_tensor(8, 16, 3), w = random_tensor(5, 16, 4);
  EXPECT_EQ(linear_forward(x, w, Accumulation::Tree, SpikingArithmetic{}, 1).y,
            linear_forward(x, w, Accumulation::Tree, SpikingArithmetic{}, 3).y);
}

TEST(Latency, UnitLevelAt256) {
  const LatencyReport r = latency_report(256, LatencyModel::from_circuits());
  EXPECT_EQ(r.add_levels, 8u);
  EXPECT_EQ(r.unit_tree, 9u);
  EXPECT_EQ(r.unit_sequential, 256u);
  EXPECT_NEAR(r.unit_speedup, 256.0 / 9.0, 1e-12);
  EXPECT_GE(r.depth_speedup, 17.0);
  EXPECT_EQ(r.depth_model.t_mul, multiplier_circuit().depth());
}

TEST(Latency, Laws) {
  const LatencyModel model = LatencyModel::from_circuits();
  EXPECT_DOUBLE_EQ(latency_report(1, model).unit_speedup, 1.0);
  EXPECT_DOUBLE_EQ(latency_report(1, model).depth_speedup, 1.0);
  for (std::size_t d = 1; d <= 64; ++d) {
    const LatencyReport r = latency_report(d, model);
    EXPECT_EQ(r.add_levels, tree_levels(d));
    EXPECT_EQ(r.depth_tree, model.t_mul + tree_levels(d) * model.t_add);
    EXPECT_EQ(r.depth_sequential, model.t_mul + (d - 1) * model.t_add);
    EXPECT_DOUBLE_EQ(r.unit_speedup, static_cast<double>(d) / (1 + tree_levels(d)));
  }
  // Grows between powers of two, dips just past each one.
  for (std::size_t d = 4; d <= 256; d *= 2) {
    EXPECT_GT(latency_report(d, model).unit_speedup, latency_report(d / 2, model).unit_speedup);
    EXPECT_LT(latency_report(d + 1, model).unit_speedup, latency_report(d, model).unit_speedup);
    EXPECT_GT(latency_report(d, model).depth_speedup, latency_report(d / 2, model).depth_speedup);
  }
  EXPECT_THROW(model.steps(0, Accumulation::Tree), std::invalid_argument);
}

TEST(Audit, ExactInputsAlwaysMatch) {
  const Fp8Tensor x(3, 8, kOne), w(2, 8, Fp8Code(0x40));
  const AssociativityAudit a = nonassociativity_audit(x, w, OracleArithmetic{});
  EXPECT_EQ(a.match_rate(), 1.0);
  EXPECT_EQ(a.max_ulp, 0);
}

TEST(Audit, TwoTermsHaveOneOrder) {
  const Fp8Tensor x = random_tensor(50, 2, 5), w = random_tensor(3, 2, 6);
  EXPECT_EQ(nonassociativity_audit(x, w, OracleArithmetic{}).match_rate(), 1.0);
}

TEST(Audit, RandomWideRowsDiverge) {
  const Fp8Tensor x = random_tensor(16, 256, 21, 1.0), w = random_tensor(8, 256, 22, 1.0);
  const AssociativityAudit a = nonassociativity_audit(x, w, OracleArithmetic{});
  EXPECT_GT(a.match_rate(), 0.0);
  EXPECT_LT(a.match_rate(), 1.0);
  RecordProperty("match_rate", std::to_string(a.match_rate()));
  RecordProperty("max_ulp", a.max_ulp);
}

TEST(TensorIo, RoundTrip) {
  const Fp8Tensor t = random_tensor(3, 5, 9);
  std::stringstream ss;
  write_tensor(ss, t);
  EXPECT_EQ(read_tensor(ss), t);

  const auto path = (std::filesystem::temp_directory_path() / "snnfp8_tensor_test.bin").string();
  write_tensor_file(path, t);
  EXPECT_EQ(read_tensor_file(path), t);
  std::filesystem::remove(path);
}

TEST(TensorIo, RejectsCorruptInput) {
  std::stringstream empty;
  EXPECT_THROW(read_tensor(empty), std::runtime_error);
  std::stringstream ss;
  write_tensor(ss, Fp8Tensor(2, 2));
  std::string bytes = ss.str();
  bytes.pop_back();
  std::stringstream truncated(bytes);
  EXPECT_THROW(read_tensor(truncated), std::runtime_error);
}
