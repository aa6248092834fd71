// Serial reference vs OpenMP for the two parallel kernels.
#include <benchmark/benchmark.h>

#include "omega/mc.hpp"
#include "omega/solve.hpp"

namespace {

using namespace omega;

const Context& ctx() {
    static const Context c = make_context(LevyModel(0.3, 0.2, HyperExpJumps{0.6, {{1.0, 1.0}}}), 0.05, 1.0, 10.0);
    return c;
}

void BM_EvaluateRows(benchmark::State& state) {
    const bool parallel = state.range(0) != 0;
    const auto th = compute_thresholds(ctx());
    const auto sol = solve_region(ctx(), th, 3.0);
    const auto xs = default_grid(ctx(), {static_cast<std::size_t>(state.range(1)), {}, {}}, 3.0);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_rows(ctx(), sol, xs, parallel));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}
BENCHMARK(BM_EvaluateRows)->ArgNames({"parallel", "n"})->Args({0, 2000})->Args({1, 2000})->Unit(benchmark::kMillisecond);

void BM_McRegionStrategy(benchmark::State& state) {
    const auto th = compute_thresholds(ctx());
    const auto sol = solve_region(ctx(), th, 3.0);
    mc::PathConfig cfg;
    cfg.parallel = state.range(0) != 0;
    cfg.n_paths = static_cast<std::size_t>(state.range(1));
    const double x = 0.5 * (*sol.a_star + *sol.b_star);
    for (auto _ : state) benchmark::DoNotOptimize(mc::estimate_region_strategy(ctx(), x, 3.0, sol.region, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_McRegionStrategy)
    ->ArgNames({"parallel", "paths"})
    ->Args({0, 10000})
    ->Args({1, 10000})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
