#include <benchmark/benchmark.h>

#include "drni/bnb.hpp"
#include "drni/experiments.hpp"

namespace {

void BM_SpatialBnbSmallGrid(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const auto net = drni::generate_grid(4, 2, 11);
    const auto fm = drni::random_factor_model(net.arc_count(), 12);
    const auto scen = drni::sample_scenarios(fm, K, 13);
    const auto amb = drni::BudgetedAmbiguitySet::uniform(K, 1.0);
    for (auto _ : state) {
        auto res = drni::spatial_bnb(net, scen, amb, drni::RiskSpec{0.05}, 1, 1e-4);
        benchmark::DoNotOptimize(res.value);
    }
}
BENCHMARK(BM_SpatialBnbSmallGrid)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ColumnGenerationRoot(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const auto net = drni::generate_grid(4, 2, 21);
    const auto fm = drni::random_factor_model(net.arc_count(), 22);
    const auto scen = drni::sample_scenarios(fm, K, 23);
    const auto amb = drni::BudgetedAmbiguitySet::uniform(K, 1.0);
    const drni::IntervalBox box{0.0, drni::zeta_bar(net, scen)};
    for (auto _ : state) {
        auto pool = drni::ColumnPool::initial(net, scen, 1);
        auto cg = drni::column_generation(box, net, scen, amb, drni::RiskSpec{0.05}, 1, pool);
        benchmark::DoNotOptimize(cg.lower_bound);
    }
}
BENCHMARK(BM_ColumnGenerationRoot)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
