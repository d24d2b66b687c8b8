#include "invar/pde/series.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using invar::Vec;

static void BM_RectSeries1D(benchmark::State& state) {
    const Vec ell = Vec::Constant(1, std::numbers::pi);
    const Vec b = Vec::Constant(1, std::numbers::pi / 3.0);
    const Vec x = Vec::Constant(1, 1.1);
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(invar::h_rect_series(ell, b, 3.0, 1.0, x, order));
}
BENCHMARK(BM_RectSeries1D)->Arg(50)->Arg(200);

static void BM_AnnulusSeries(benchmark::State& state) {
    invar::AnnulusSeries series(1.0, 2.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(series.value(1.0, 0.4, 1.3));
}
BENCHMARK(BM_AnnulusSeries)->Arg(50)->Arg(100);
