#include <benchmark/benchmark.h>

#include "ammkit/scenario.hpp"

namespace {

void BM_Simulate(benchmark::State& state) {
    const auto steps = static_cast<std::size_t>(state.range(0));
    const auto path = ammkit::gbm_path(1.0, 0.02, 0.0, steps, 42);
    ammkit::RangePosition pos;
    if (state.range(1) == 1) pos.range = ammkit::make_range(0.7, 1.4);
    const auto arb = state.range(2) == 1 ? ammkit::ArbModel::fee_band : ammkit::ArbModel::full_convergence;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ammkit::simulate(pos, path, ammkit::FeeTier(ammkit::FeeTier::kMedium), arb));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(steps));
}
BENCHMARK(BM_Simulate)->ArgsProduct({{1000, 100000}, {0, 1}, {0, 1}});

void BM_GbmPath(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ammkit::gbm_path(1.0, 0.02, 0.0, 100000, 7));
}
BENCHMARK(BM_GbmPath);

}  // namespace
