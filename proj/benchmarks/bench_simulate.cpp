#include "invar/sim/conditioned.hpp"
#include "invar/pde/feynman_kac.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace invar;

static void BM_DysonSteps(benchmark::State& state) {
    Vec x0(3);
    x0 << -1.0, 0.0, 1.0;
    const long steps = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_dyson(x0, 1e-3, steps * 1e-3, 1, 42));
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_DysonSteps)->Arg(1000)->Arg(10000);

static void BM_FeynmanKacPoint(benchmark::State& state) {
    ProblemSpec spec(make_spring_damper(1.0, 1.0),
                     Domain::hyper_rectangle(Vec::Zero(2), Vec::Constant(2, 2.0)), std::nullopt,
                     Horizon::finite(1.0), Vec::Constant(2, 0.8));
    Vec x = Vec::Constant(2, 0.8);
    const int paths = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(feynman_kac_point(spec, 0.5, x, paths, 1e-3, 7));
    state.SetItemsProcessed(state.iterations() * paths * 500);
}
BENCHMARK(BM_FeynmanKacPoint)->Arg(100)->Arg(500);
