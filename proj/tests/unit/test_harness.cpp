#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "snnfp8/harness.hpp"
#include "snnfp8/io.hpp"

using namespace snnfp8;

namespace fs = std::filesystem;

TEST(VerifyMul, IdealPassesWithNineClassRows) {
  VerifyOptions o;
  const SweepReport r = verify_mul(o);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.total, 254u * 254u);
  EXPECT_EQ(r.rows.size(), 9u);
  for (const auto& row : r.rows) EXPECT_EQ(row.pass_rate(), 1.0) << row.label;
  EXPECT_GE(r.mean_sparsity, 0.3);
  EXPECT_LE(r.mean_sparsity, 0.7);
}

TEST(VerifyMul, DisabledStickyExtraReportsCounterexamples) {
  VerifyOptions o;
  o.sticky_extra = false;
  const SweepReport r = verify_mul(o);
  EXPECT_FALSE(r.ok());
  ASSERT_FALSE(r.failures.empty());
  EXPECT_LE(r.failures.size(), kMaxListedFailures);
  const auto j = nlohmann::json::parse(sweep_report_json(r));
  EXPECT_EQ(j.at("config").at("sticky_extra"), false);
  EXPECT_GT(j.at("failure_count").get<std::size_t>(), 0u);
}

TEST(VerifyAdd, CornerRandomAndExhaustive) {
  VerifyOptions o;
  o.config = SimConfig::leaky(0.01);
  const SweepReport r = verify_add(o);
  EXPECT_TRUE(r.ok());
  std::size_t corner = 0;
  bool saw_cancel = false;
  for (const auto& row : r.rows) {
    if (row.label.rfind("corner:", 0) == 0) corner += row.total;
    if (row.label == "cancellation:x+(-x)=+0") saw_cancel = row.total == 252;
  }
  EXPECT_GE(corner, 28u);
  EXPECT_TRUE(saw_cancel);
}

TEST(SweepReport, CsvHasRowPerClass) {
  VerifyOptions o;
  o.exhaustive = false;
  const SweepReport r = verify_add(o);
  const std::string csv = sweep_report_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(r.rows.size() + 2));
}

TEST(Mlp, ActivationCircuitMatchesFunction) {
  for (unsigned c = 0; c < 256; ++c) {
    const Fp8Code x(static_cast<std::uint8_t>(c));
    EXPECT_EQ(spike_activation_circuit(x), spike_activation(x)) << to_hex(x);
  }
  EXPECT_EQ(spike_activation(Fp8Code(0x01)), Fp8Code(0x38));
  EXPECT_EQ(spike_activation(Fp8Code(0x80)), Fp8Code(0x00));
  EXPECT_EQ(spike_activation(Fp8Code(0x7F)), Fp8Code(0x00));
}

TEST(Mlp, ShippedWeightsMatchGenerator) {
  const MlpWeights shipped = parse_mlp_weights(read_file(SNNFP8_DATA_DIR "/mlp_weights.json"));
  const MlpWeights gen = synthetic_mlp_weights(7);
  EXPECT_EQ(shipped.w1, gen.w1);
  EXPECT_EQ(shipped.w2, gen.w2);
  EXPECT_EQ(shipped.w1.rows(), 8u);
  EXPECT_EQ(shipped.w1.cols(), 16u);
  EXPECT_EQ(shipped.w2.rows(), 4u);
}

TEST(Mlp, DemoAgreesAndIsDeterministic) {
  MlpDemoOptions o;
  o.samples = 200;
  const MlpDemoReport a = run_mlp_demo(o), b = run_mlp_demo(o);
  EXPECT_EQ(a.argmax_agreement, 1.0);
  EXPECT_EQ(a.bitwise_agreement, 1.0);
  EXPECT_GT(a.tree_vs_sequential_match, 0.0);
  EXPECT_LE(a.tree_vs_sequential_match, 1.0);
  EXPECT_EQ(a.tree_vs_sequential_match, b.tree_vs_sequential_match);
  EXPECT_EQ(a.layer_shapes, (std::vector<std::size_t>{16, 8, 4}));
  EXPECT_EQ(nlohmann::json::parse(mlp_report_json(a)).at("kind"), "mlp");
}

TEST(Mlp, IdxIngestion) {
  const fs::path dir = fs::temp_directory_path() / "snnfp8_idx_test";
  fs::create_directories(dir);
  const auto be32 = [](std::ofstream& o, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16), static_cast<char>(v >> 8),
                       static_cast<char>(v)};
    o.write(b, 4);
  };
  {
    std::ofstream img(dir / "img.idx", std::ios::binary);
    be32(img, 0x803);
    be32(img, 3);
    be32(img, 8);
    be32(img, 8);
    for (int s = 0; s < 3; ++s)
      for (int p = 0; p < 64; ++p) img.put(static_cast<char>(p < 16 ? 255 : 0));
    std::ofstream lab(dir / "lab.idx", std::ios::binary);
    be32(lab, 0x801);
    be32(lab, 3);
    for (int s = 0; s < 3; ++s) lab.put(static_cast<char>(s));
  }
  const MlpDataset d = load_idx_dataset((dir / "img.idx").string(), (dir / "lab.idx").string(), 10);
  ASSERT_EQ(d.images.rows(), 3u);
  EXPECT_EQ(d.images.at(0, 0), Fp8Code(0x38));  // first two pixel rows are white
  EXPECT_EQ(d.images.at(0, 3), Fp8Code(0x38));
  EXPECT_EQ(d.images.at(0, 4), Fp8Code(0x00));
  EXPECT_EQ(d.labels, (std::vector<int>{0, 1, 2}));

  std::ofstream(dir / "bad.idx") << "garbage";
  EXPECT_THROW(load_idx_dataset((dir / "bad.idx").string(), "", 10), std::runtime_error);
  MlpDemoOptions o;
  o.samples = 20;
  o.fast_check = true;
  o.idx_images = (dir / "bad.idx").string();
  const MlpDemoReport r = run_mlp_demo(o);
  EXPECT_EQ(r.data_source, "synthetic");
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes[0].find("falling back"), std::string::npos);
  fs::remove_all(dir);
}

TEST(AtomicWrite, ReplacesFile) {
  const auto path = (fs::temp_directory_path() / "snnfp8_atomic" / "out.txt").string();
  write_file_atomic(path, "one");
  write_file_atomic(path, "two");
  EXPECT_EQ(read_file(path), "two");
  fs::remove_all(fs::path(path).parent_path());
}
