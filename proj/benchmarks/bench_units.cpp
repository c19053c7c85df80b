#include <benchmark/benchmark.h>

#include "snnfp8/adder.hpp"
#include "snnfp8/linear.hpp"
#include "snnfp8/multiplier.hpp"

using namespace snnfp8;

namespace {

void BM_SnnMul(benchmark::State& state) {
  const auto& codes = finite_codes();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(snn_mul(codes[i % codes.size()], codes[(i * 7 + 3) % codes.size()]));
    ++i;
  }
}
BENCHMARK(BM_SnnMul);

void BM_SnnAdd(benchmark::State& state) {
  const auto& codes = finite_codes();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(snn_add(codes[i % codes.size()], codes[(i * 7 + 3) % codes.size()]));
    ++i;
  }
}
BENCHMARK(BM_SnnAdd);

void BM_SnnAddNoisy(benchmark::State& state) {
  const SimConfig cfg = SimConfig::leaky(1.0, 0.1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(snn_add(Fp8Code(0x40), Fp8Code(0x3A), cfg));
}
BENCHMARK(BM_SnnAddNoisy);

void BM_OracleAdd(benchmark::State& state) {
  const auto& codes = finite_codes();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_add(codes[i % codes.size()], codes[(i * 7 + 3) % codes.size()]));
    ++i;
  }
}
BENCHMARK(BM_OracleAdd);

void BM_LinearForward(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto mode = state.range(1) ? Accumulation::Sequential : Accumulation::Tree;
  const Fp8Tensor x = random_tensor(4, d, 1, 2.0), w = random_tensor(4, d, 2, 2.0);
  const SpikingArithmetic ops;
  for (auto _ : state) benchmark::DoNotOptimize(linear_forward(x, w, mode, ops, 1));
  state.SetItemsProcessed(state.iterations() * 16 * static_cast<std::int64_t>(d));
}
BENCHMARK(BM_LinearForward)->ArgsProduct({{16, 64, 256}, {0, 1}});

}  // namespace
BENCHMARK_MAIN();
