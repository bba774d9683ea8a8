#include <gtest/gtest.h>

#include <cmath>

#include "ammkit/concentrated.hpp"
#include "support.hpp"

namespace ammkit {
namespace {

using testing::error_of;
using testing::Gen;
using testing::rel_diff;

RangePosition range(double lo, double hi, double liquidity = 1.0,
                    Convention c = Convention::virtual_price) {
    return {liquidity, make_range(lo, hi), c};
}

TEST(PriceRange, Validation) {
    EXPECT_EQ(error_of([] { make_range(1.0, 1.0); }), ErrorCode::invalid_range);
    EXPECT_EQ(error_of([] { make_range(2.0, 1.0); }), ErrorCode::invalid_range);
    EXPECT_EQ(error_of([] { make_range(-0.1, 1.0); }), ErrorCode::invalid_range);
    EXPECT_EQ(error_of([] { make_range(0.0, std::nan("")); }), ErrorCode::invalid_range);
    EXPECT_TRUE(make_range(0.0, kInfinity).is_full());
    EXPECT_EQ(error_of([] { validate(RangePosition{0.0, {0.5, 2.0}}); }),
              ErrorCode::invalid_parameter);
}

TEST(RangeIntercepts, Examples) {
    auto i = range_intercepts(range(0.25, 4));
    EXPECT_DOUBLE_EQ(i.x_max, 1.5);
    EXPECT_DOUBLE_EQ(i.y_max, 1.5);
    i = range_intercepts(range(0.8, 1.2));
    EXPECT_NEAR(i.x_max, 0.20101792401041635, 1e-15);
    EXPECT_NEAR(i.y_max, 0.20516305957461799, 1e-15);
    i = range_intercepts(RangePosition::v2(1.0));
    EXPECT_TRUE(std::isinf(i.x_max));
    EXPECT_TRUE(std::isinf(i.y_max));
}

TEST(VirtualReserves, Examples) {
    EXPECT_EQ(error_of([] { virtual_reserves({0, 0}, range(0.5, 1.5)); }),
              ErrorCode::inconsistent_state);
    const auto v = virtual_reserves({0.29289321881345248, 0.18350341907227397}, range(0.5, 1.5));
    EXPECT_NEAR(v.x, 1.0, 1e-15);
    EXPECT_NEAR(v.y, 1.0, 1e-15);
    const auto same = virtual_reserves({2.0, 0.5}, RangePosition::v2(1.0));
    EXPECT_EQ(same.x, 2.0);
    EXPECT_EQ(same.y, 0.5);
}

TEST(ReservesClosed, Examples) {
    auto r = reserves_at_price_closed(range(0.5, 1.5), Price(1));
    EXPECT_NEAR(r.x, 0.29289321881345248, 1e-15);
    EXPECT_NEAR(r.y, 0.18350341907227397, 1e-15);
    r = reserves_at_price_closed(range(0.5, 1.5), Price(0.5));
    EXPECT_EQ(r.x, 0.0);
    EXPECT_NEAR(r.y, 0.59771698144536902, 1e-15);
    r = reserves_at_price_closed(RangePosition::v2(1.0), Price(4));
    EXPECT_DOUBLE_EQ(r.x, 2.0);
    EXPECT_DOUBLE_EQ(r.y, 0.5);
    EXPECT_EQ(error_of([] { reserves_at_price_closed(range(0.5, 1.5), Price(-1)); }),
              ErrorCode::invalid_parameter);
}

TEST(ReservesClosed, ShiftedProductIsK) {
    Gen gen(21);
    for (int i = 0; i < 1000; ++i) {
        const double lo = gen.log_uniform(1e-3, 10);
        const double hi = lo * gen.log_uniform(1.001, 100);
        const auto pos = range(lo, hi, gen.log_uniform(1e-3, 1e6));
        const double p = gen.uniform(lo, hi);
        const auto r = reserves_at_price_closed(pos, Price(p));
        const double xv = r.x + pos.liquidity * std::sqrt(lo);
        const double yv = r.y + pos.liquidity / std::sqrt(hi);
        EXPECT_LE(rel_diff(xv * yv, pos.invariant()), 1e-12);
    }
}

TEST(ReservesClosed, BoundsAndMonotonicity) {
    Gen gen(5);
    for (int i = 0; i < 100; ++i) {
        const double lo = gen.log_uniform(1e-2, 10);
        const double hi = lo * gen.log_uniform(1.01, 50);
        const auto pos = range(lo, hi, gen.log_uniform(0.1, 1e3));
        const auto ints = range_intercepts(pos);
        const auto at_lo = reserves_at_price_closed(pos, Price(lo));
        const auto at_hi = reserves_at_price_closed(pos, Price(hi));
        EXPECT_EQ(at_lo.x, 0.0);
        EXPECT_EQ(at_lo.y, ints.y_max);
        EXPECT_EQ(at_hi.x, ints.x_max);
        EXPECT_EQ(at_hi.y, 0.0);
        // continuity just inside the bounds
        const auto in_lo = reserves_at_price_closed(pos, Price(lo * (1 + 1e-12)));
        EXPECT_NEAR(in_lo.y, ints.y_max, 1e-9 * ints.y_max);
        double prev_x = -1.0;
        double prev_y = kInfinity;
        for (double p = lo / 4; p < hi * 4; p *= 1.07) {
            const auto r = reserves_at_price_closed(pos, Price(p));
            EXPECT_GE(r.x, prev_x);
            EXPECT_LE(r.y, prev_y);
            prev_x = r.x;
            prev_y = r.y;
        }
    }
}

TEST(ReservesQuadratic, Examples) {
    const auto pos = range(0.75, 1.25, 1.0, Convention::real_price_quadratic);
    auto r = reserves_at_price_quadratic(pos, Price(1));
    EXPECT_NEAR(r.x, 0.11987453021434877, 1e-15);
    EXPECT_NEAR(r.y, 0.11987453021434877, 1e-15);
    r = reserves_at_price_quadratic(pos, Price(0.8));
    EXPECT_NEAR(r.x, 0.10680281437617839, 1e-15);
    EXPECT_NEAR(r.y, 0.13350351797022299, 1e-15);
    r = reserves_at_price_quadratic(
        RangePosition{1.0, {0.0, kInfinity}, Convention::real_price_quadratic}, Price(4));
    EXPECT_DOUBLE_EQ(r.x, 2.0);
    EXPECT_DOUBLE_EQ(r.y, 0.5);
    EXPECT_EQ(error_of([&] { reserves_at_price_quadratic(pos, Price(2)); }),
              ErrorCode::out_of_convention);
}

TEST(ReservesQuadratic, ResidualsAndRatio) {
    Gen gen(8);
    for (int i = 0; i < 1000; ++i) {
        const double lo = gen.coin() ? 0.0 : gen.log_uniform(1e-3, 10);
        const double hi = gen.integer(0, 9) == 0 ? kInfinity : std::max(lo, 1e-3) * gen.log_uniform(1.01, 100);
        const auto pos = range(lo, hi, gen.log_uniform(1e-2, 1e4), Convention::real_price_quadratic);
        const double p = std::isinf(hi) ? gen.log_uniform(std::max(lo, 1e-3), 1e3) : gen.uniform(lo, hi);
        if (p <= 0.0) continue;
        const auto r = reserves_at_price_quadratic(pos, Price(p));
        const auto res = quadratic_residuals(pos, Price(p), r);
        EXPECT_LE(std::abs(res.x), 1e-9 * pos.invariant());
        EXPECT_LE(std::abs(res.y), 1e-9 * pos.invariant());
        EXPECT_LE(rel_diff(r.x / r.y, p), 1e-9);
    }
}

TEST(Conventions, CoincideForDegenerateRange) {
    const double eps = 1e-14;
    for (const double p : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        const auto a = reserves_at_price_closed(range(eps, 1 / eps), Price(p));
        const auto b =
            reserves_at_price_quadratic(range(eps, 1 / eps, 1.0, Convention::real_price_quadratic), Price(p));
        EXPECT_LE(rel_diff(a.x, b.x), 1e-6);
        EXPECT_LE(rel_diff(a.y, b.y), 1e-6);
    }
}

TEST(ReserveChange, MatchesReserveDifference) {
    Gen gen(44);
    for (int i = 0; i < 500; ++i) {
        const double lo = gen.log_uniform(1e-2, 1);
        const auto pos = range(lo, lo * gen.log_uniform(1.5, 100), gen.log_uniform(0.1, 100));
        const Price p0(gen.log_uniform(lo / 3, lo * 300));
        const Price p1(gen.log_uniform(lo / 3, lo * 300));
        const auto a = reserves_at_price_closed(pos, p0);
        const auto b = reserves_at_price_closed(pos, p1);
        const auto d = reserve_change(pos, p0, p1);
        const double scale = std::max({a.x, b.x, a.y, b.y});
        EXPECT_NEAR(static_cast<double>(d.dx), b.x - a.x, 1e-12 * scale);
        EXPECT_NEAR(static_cast<double>(d.dy), b.y - a.y, 1e-12 * scale);
    }
}

}  // namespace
}  // namespace ammkit
