#include "invar/support/rng.hpp"

#include <benchmark/benchmark.h>

static void BM_PhiloxU64(benchmark::State& state) {
    invar::PhiloxRng rng(42, 7);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
}
BENCHMARK(BM_PhiloxU64);

static void BM_PhiloxNormal(benchmark::State& state) {
    invar::PhiloxRng rng(42, 7);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_normal());
}
BENCHMARK(BM_PhiloxNormal);

BENCHMARK_MAIN();
