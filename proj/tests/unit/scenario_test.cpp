#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ammkit/impermanent_loss.hpp"
#include "ammkit/scenario.hpp"
#include "support.hpp"

namespace ammkit {
namespace {

using testing::error_of;
using testing::Gen;

TEST(Simulate, ConstantPathOnlyFees) {
    const auto path = PricePath::from_prices({1.0, 1.0, 1.0});
    for (const double f : {0.0, 0.003, 0.01}) {
        const auto r = simulate(RangePosition::v2(10), path, FeeTier(f));
        EXPECT_EQ(r.pnl_il, 0.0);
        EXPECT_EQ(r.pnl_hold, 0.0);
        EXPECT_EQ(r.pnl_total, r.pnl_fees);
        const auto legs = pnl_decompose(r);
        EXPECT_EQ(legs.hold, 0.0);
        EXPECT_EQ(legs.il, 0.0);
        EXPECT_EQ(legs.fees, r.fees_collected / r.v0);
    }
}

TEST(Simulate, HalvingPriceZeroFee) {
    const auto r = simulate(RangePosition::v2(1), PricePath::from_prices({1.0, 0.5}), FeeTier(0));
    EXPECT_NEAR(r.pnl_total, -0.29289321881345248, 1e-15);
    EXPECT_NEAR(r.pnl_hold, -0.25, 1e-15);
    EXPECT_NEAR(r.pnl_il, -0.042893218813452476, 1e-15);
    EXPECT_EQ(r.pnl_fees, 0.0);
}

TEST(Simulate, DoublingPriceZeroFee) {
    const auto r = simulate(RangePosition::v2(3), PricePath::from_prices({1.0, 2.0}), FeeTier(0));
    const auto legs = pnl_decompose(r);
    EXPECT_NEAR(legs.hold, 0.5, 1e-15);
    EXPECT_NEAR(legs.il, -0.085786437626904951, 1e-15);
    EXPECT_EQ(legs.fees, 0.0);
}

TEST(Simulate, SingleSwapFee) {
    // L = 100 at P = 1 holds (100, 100); moving to P = 4 adds exactly 100 X.
    const auto r = simulate(RangePosition::v2(100), PricePath::from_prices({1.0, 4.0}),
                            FeeTier(FeeTier::kMedium));
    EXPECT_NEAR(r.fees_x, 0.30090270812437312, 1e-14);
    EXPECT_EQ(r.fees_y, 0.0);
}

TEST(Simulate, MatchesIlGenericUnderFullConvergence) {
    Gen gen(31);
    for (int i = 0; i < 100; ++i) {
        const RangePosition pos{gen.log_uniform(0.1, 100), make_range(0.5, 2.0), Convention::virtual_price};
        const auto path = gbm_path(1.0, 0.05, 0.0, 50, 1000 + i);
        const auto r = simulate(pos, path, FeeTier(0.003));
        EXPECT_NEAR(r.pnl_il, il_generic(pos, Price(path.front_price()), Price(path.back_price())), 1e-12);
        EXPECT_NEAR(r.pnl_total, r.pnl_hold + r.pnl_il + r.pnl_fees, 1e-12);
        EXPECT_GE(r.pnl_fees, 0.0);
    }
}

TEST(Simulate, ZeroFeeDependsOnlyOnEndpoints) {
    auto prices = gbm_path(1.0, 0.1, 0.0, 60, 99).points();
    std::vector<double> ps;
    for (const auto& p : prices) ps.push_back(p.price);
    const auto pos = RangePosition{2.0, make_range(0.7, 1.6), Convention::virtual_price};
    const auto base = simulate(pos, PricePath::from_prices(ps), FeeTier(0));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(ps.begin() + 1, ps.end() - 1, rng);
        const auto r = simulate(pos, PricePath::from_prices(ps), FeeTier(0));
        EXPECT_EQ(r.pnl_total, base.pnl_total);
        EXPECT_EQ(r.final_reserves.x, base.final_reserves.x);
    }
}

TEST(Simulate, OscillationEarnsMoreFees) {
    const auto pos = RangePosition::v2(10);
    const auto monotone = simulate(pos, PricePath::from_prices({1.0, 1.1, 1.2}), FeeTier(0.003));
    const auto wobbly = simulate(pos, PricePath::from_prices({1.0, 1.3, 0.9, 1.2}), FeeTier(0.003));
    EXPECT_GT(wobbly.pnl_fees, monotone.pnl_fees);
    EXPECT_EQ(wobbly.pnl_hold, monotone.pnl_hold);
}

TEST(Simulate, OutOfRangeFreezesPosition) {
    const RangePosition pos{1.0, make_range(0.8, 1.2), Convention::virtual_price};
    const auto r = simulate(pos, PricePath::from_prices({1.0, 1.5, 1.7, 2.5, 1.6}), FeeTier(0.003));
    const auto& t = r.trace;
    for (std::size_t i = 2; i < t.size(); ++i) {
        EXPECT_EQ(t[i].x, t[1].x);
        EXPECT_EQ(t[i].y, 0.0);
        EXPECT_EQ(t[i].fees_x, t[1].fees_x);
    }
}

TEST(Simulate, FeeBandLagsExternalPrice) {
    const auto r = simulate(RangePosition::v2(1), PricePath::from_prices({1.0, 2.0, 1.999}),
                            FeeTier(0.01), ArbModel::fee_band);
    EXPECT_NEAR(r.trace[1].pool_price, 2.0 * 0.99, 1e-15);
    EXPECT_EQ(r.trace[2].pool_price, r.trace[1].pool_price);  // inside the band
    EXPECT_NEAR(r.pnl_total, r.pnl_hold + r.pnl_il + r.pnl_fees, 1e-12);
}

TEST(Simulate, RejectsBadInput) {
    EXPECT_EQ(error_of([] { PricePath::from_prices({}); }), ErrorCode::invalid_parameter);
    EXPECT_EQ(error_of([] { PricePath::from_prices({1.0, 0.0}); }), ErrorCode::invalid_parameter);
    EXPECT_EQ(error_of([] { PricePath::from_prices({1.0, INFINITY}); }), ErrorCode::invalid_parameter);
    EXPECT_EQ(error_of([] { PricePath({{1, 1.0}, {1, 2.0}}); }), ErrorCode::invalid_parameter);
    EXPECT_EQ(error_of([] { FeeTier(0.2); }), ErrorCode::invalid_parameter);
    EXPECT_EQ(error_of([] {
                  simulate(RangePosition{1, {0.5, 2}, Convention::real_price_quadratic},
                           PricePath::from_prices({1.0}), FeeTier(0));
              }),
              ErrorCode::invalid_parameter);
}

TEST(PathCsv, ParsesWithAndWithoutHeader) {
    std::istringstream a("timestamp,price\n0,1.0\n1,1.5\r\n\n2,0.5\n");
    const auto p = read_path_csv(a);
    ASSERT_EQ(p.size(), 3u);
    EXPECT_EQ(p.back_price(), 0.5);
    std::istringstream b("10,2\n20,3\n");
    EXPECT_EQ(read_path_csv(b).size(), 2u);
    std::istringstream c("0,1\n1,abc\n");
    EXPECT_EQ(error_of([&] { read_path_csv(c); }), ErrorCode::invalid_parameter);
}

TEST(Gbm, DeterministicForSeed) {
    const auto a = gbm_path(1.0, 0.02, 0.0, 100, 42);
    const auto b = gbm_path(1.0, 0.02, 0.0, 100, 42);
    ASSERT_EQ(a.size(), 101u);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.points()[i].price, b.points()[i].price);
}

TEST(Annualize, Examples) {
    EXPECT_EQ(annualize(0.015), 0.78);
    EXPECT_EQ(annualize(0.01), 0.52);
    EXPECT_EQ(annualize(0.0), 0.0);
    EXPECT_NEAR(annualize_compounded(0.01), std::pow(1.01, 52) - 1, 1e-14);
    EXPECT_EQ(error_of([] { annualize(-1.0); }), ErrorCode::invalid_parameter);
}

TEST(TraceCsv, Header) {
    const auto r = simulate(RangePosition::v2(1), PricePath::from_prices({1.0, 2.0}), FeeTier(0));
    std::ostringstream os;
    write_trace_csv(os, r);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "step,price,x,y,fees_x,fees_y");
}

}  // namespace
}  // namespace ammkit
