#include <benchmark/benchmark.h>

#include "drni/experiments.hpp"
#include "drni/graph.hpp"

namespace {

void BM_GenerateGrid(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto net = drni::generate_grid(side, side, seed++);
        benchmark::DoNotOptimize(net.arc_count());
    }
}
BENCHMARK(BM_GenerateGrid)->Arg(10)->Arg(20)->Arg(30);

void BM_MaxFlowGrid(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const auto net = drni::generate_grid(side, side, 7);
    const auto fm = drni::random_factor_model(net.arc_count(), 8);
    const auto scen = drni::sample_scenarios(fm, 1, 9);
    const auto plan = drni::InterdictionPlan::none(net.arc_count(), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(drni::max_flow(net, scen.capacities[0], plan).value);
    }
}
BENCHMARK(BM_MaxFlowGrid)->Arg(10)->Arg(20)->Arg(30);

}  // namespace
