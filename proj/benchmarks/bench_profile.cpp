#include <benchmark/benchmark.h>

#include "ammkit/impermanent_loss.hpp"

namespace {

void BM_IlV2(benchmark::State& state) {
    double r = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ammkit::il_v2(ammkit::PriceRatio(r)));
        r = r < 100.0 ? r * 1.01 : 0.01;
    }
}
BENCHMARK(BM_IlV2);

void BM_IlGenericRange(benchmark::State& state) {
    ammkit::RangePosition pos;
    pos.range = ammkit::make_range(0.5, 1.5);
    double p = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ammkit::il_generic(pos, ammkit::Price(1.0), ammkit::Price(p)));
        p = p < 10.0 ? p * 1.01 : 0.1;
    }
}
BENCHMARK(BM_IlGenericRange);

void BM_RiskProfile(benchmark::State& state) {
    ammkit::RangePosition pos;
    pos.range = ammkit::make_range(0.8, 1.2);
    const auto grid = ammkit::log_grid(0.01, 100.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ammkit::risk_profile(pos, ammkit::Price(1.0), grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RiskProfile)->Arg(501)->Arg(100000);

void BM_Table(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ammkit::table1_preset());
}
BENCHMARK(BM_Table);

}  // namespace
