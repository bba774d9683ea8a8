#include <benchmark/benchmark.h>

#include "ammkit/depth.hpp"
#include "ammkit/pool.hpp"

namespace {

void BM_QuoteSwap(benchmark::State& state) {
    const auto pool = ammkit::make_pool(1e6, 5e2, 0.003);
    double dy = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ammkit::quote_swap_y_out(pool, dy));
        dy = dy < 400.0 ? dy + 0.5 : 1.0;
    }
}
BENCHMARK(BM_QuoteSwap);

void BM_QuoteApply(benchmark::State& state) {
    const auto pool = ammkit::make_pool(1e6, 5e2, 0.003);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ammkit::apply_swap(pool, ammkit::quote_swap_y_out(pool, 1.0)));
    }
}
BENCHMARK(BM_QuoteApply);

void BM_DepthLadder(benchmark::State& state) {
    const auto pool = ammkit::make_pool(1e6, 5e2);
    const int levels = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ammkit::depth_ladder(pool, 400.0 / levels, levels, ammkit::BookSide::asks));
    }
    state.SetItemsProcessed(state.iterations() * levels);
}
BENCHMARK(BM_DepthLadder)->Arg(10)->Arg(1000);

}  // namespace
