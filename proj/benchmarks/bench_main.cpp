#include <benchmark/benchmark.h>

#include "sptorsion/extremal.hpp"
#include "sptorsion/witness.hpp"

using namespace sptorsion;

static void BM_CountOrders(benchmark::State& state) {
  const Genus g(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extremal::count_orders(g));
}
BENCHMARK(BM_CountOrders)->Arg(50)->Arg(300)->Arg(1500)->Unit(benchmark::kMillisecond);

static void BM_MaximalOrder(benchmark::State& state) {
  const Genus g(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extremal::maximal_order(g));
}
BENCHMARK(BM_MaximalOrder)->Arg(50)->Arg(300)->Arg(1500)->Unit(benchmark::kMillisecond);

static void BM_BruteForce(benchmark::State& state) {
  const Genus g(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extremal::brute_force_extremal(g));
}
BENCHMARK(BM_BruteForce)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

// Fresh blocks each time would need a cache reset; this measures the
// assembled witness with warm blocks plus full verification.
static void BM_BuildWitness(benchmark::State& state) {
  const Genus g(state.range(0));
  const BigInt m = extremal::maximal_order(g);
  for (auto _ : state) benchmark::DoNotOptimize(witness::build_witness(m, g));
  state.SetLabel("m=" + m.str());
}
BENCHMARK(BM_BuildWitness)->Arg(6)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_PrimePowerBlock(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(witness::prime_power_block(p, 1));
  }
}
BENCHMARK(BM_PrimePowerBlock)->Arg(31)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
