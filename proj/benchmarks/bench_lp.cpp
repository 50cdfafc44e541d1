#include <benchmark/benchmark.h>

#include "drni/baseline.hpp"
#include "drni/experiments.hpp"
#include "drni/master.hpp"

namespace {

// restricted master solve at study scale
void BM_MasterSolve(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const auto net = drni::generate_grid(4, 2, 5);
    const auto fm = drni::random_factor_model(net.arc_count(), 6);
    const auto scen = drni::sample_scenarios(fm, K, 7);
    const auto amb = drni::BudgetedAmbiguitySet::uniform(K, 2.0);
    auto pool = drni::ColumnPool::initial(net, scen, 1);
    for (const auto& plan : drni::enumerate_plans(net.arc_count(), 1)) pool.add(plan, net, scen);
    const drni::IntervalBox box{0.0, drni::zeta_bar(net, scen)};
    for (auto _ : state) {
        auto ms = drni::solve_master(pool, box, scen, amb, drni::RiskSpec{0.05});
        benchmark::DoNotOptimize(ms.objective);
    }
}
BENCHMARK(BM_MasterSolve)->Arg(5)->Arg(10)->Arg(20);

void BM_CvarDiscrete(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> v(n), p(n, 1.0 / n);
    std::mt19937_64 gen(3);
    for (double& x : v) x = drni::uniform01(gen);
    for (auto _ : state) {
        benchmark::DoNotOptimize(drni::cvar_discrete(v, p, 0.05));
    }
}
BENCHMARK(BM_CvarDiscrete)->Arg(1000)->Arg(100000);

}  // namespace
