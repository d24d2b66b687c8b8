#include "invar/pde/generator.hpp"

#include <benchmark/benchmark.h>

using namespace invar;

static void BM_DiscretizeGenerator2D(benchmark::State& state) {
    Vec lo = Vec::Zero(2), up = Vec::Constant(2, 2.0);
    const Grid grid = Grid::over_domain(Domain::hyper_rectangle(lo, up),
                                        2.0 / static_cast<double>(state.range(0)));
    const DynamicsField dyn = make_linear_drift(0.01);
    for (auto _ : state) benchmark::DoNotOptimize(discretize_generator(grid, dyn, 0.0));
    state.SetItemsProcessed(state.iterations() * grid.num_interior());
}
BENCHMARK(BM_DiscretizeGenerator2D)->Arg(50)->Arg(100);

static void BM_ApplyGenerator2D(benchmark::State& state) {
    Vec lo = Vec::Zero(2), up = Vec::Constant(2, 2.0);
    const Grid grid = Grid::over_domain(Domain::hyper_rectangle(lo, up),
                                        2.0 / static_cast<double>(state.range(0)));
    const auto gen = discretize_generator(grid, make_brownian(2), 0.0);
    const Vec v = Vec::Ones(static_cast<Eigen::Index>(grid.num_interior()));
    for (auto _ : state) benchmark::DoNotOptimize(apply_generator(gen, v));
}
BENCHMARK(BM_ApplyGenerator2D)->Arg(100)->Arg(200);
