#include "ammkit/depth.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ammkit/error.hpp"
#include "ammkit/format.hpp"

namespace ammkit {

using detail::fail;

namespace {

void check_request(double bucket, int n_levels) {
    if (!(std::isfinite(bucket) && bucket > 0.0)) {
        fail(ErrorCode::invalid_parameter, "bucket must be positive and finite", "bucket");
    }
    if (n_levels < 1) {
        fail(ErrorCode::invalid_parameter, "at least one level is required", "levels");
    }
}

double fee_factor(BookSide side, const LadderOptions& options, double fee_rate) {
    if (!options.fee_adjusted) return 1.0;
    if (!(fee_rate >= 0.0 && fee_rate < 1.0)) {
        fail(ErrorCode::invalid_parameter, "fee_rate must lie in [0, 1)", "fee_rate");
    }
    return side == BookSide::asks ? 1.0 / (1.0 - fee_rate) : 1.0 - fee_rate;
}

// Walks `levels` buckets along the curve through (x, y). Fee-free geometry;
// `factor` scales the reported costs only.
DepthLadder walk(double x, double y, double bucket, int levels, BookSide side, double factor) {
    DepthLadder ladder;
    ladder.side = side;
    ladder.bucket = bucket;
    ladder.levels.reserve(static_cast<std::size_t>(levels));
    double cumulative = 0.0;
    for (int k = 1; k <= levels; ++k) {
        double raw = 0.0;
        if (side == BookSide::asks) {
            raw = bucket * x / (y - bucket);
            x += raw;
            y -= bucket;
        } else {
            raw = bucket * x / (y + bucket);
            x -= raw;
            y += bucket;
        }
        const double cost = raw * factor;
        cumulative += cost;
        ladder.levels.push_back({k, bucket, cost, cost / bucket, x / y, cumulative});
    }
    return ladder;
}

}  // namespace

DepthLadder depth_ladder(const PoolState& pool, double bucket, int n_levels, BookSide side,
                         LadderOptions options) {
    spot_price(pool);  // validates reserves
    check_request(bucket, n_levels);
    if (side == BookSide::asks && !(bucket * n_levels < pool.y)) {
        fail(ErrorCode::insufficient_liquidity, "ladder would drain the Y reserve", "levels");
    }
    const double factor = fee_factor(side, options, pool.fee_rate);
    return walk(pool.x, pool.y, bucket, n_levels, side, factor);
}

DepthLadder depth_ladder(const RangePosition& position, Price price, double bucket, int n_levels,
                         BookSide side, LadderOptions options) {
    validate(position);
    check_request(bucket, n_levels);
    const double factor = fee_factor(side, options, options.fee_rate);

    const auto real = reserves_at_price_closed(position, price);
    const auto shifted = virtual_reserves(real, position);
    // Y the range can hand out (asks) or absorb (bids) before its boundary.
    const double capacity =
        side == BookSide::asks ? real.y : range_intercepts(position).y_max - real.y;

    int fitting = n_levels;
    if (!std::isinf(capacity)) {
        const double whole = std::ceil(capacity / bucket) - 1.0;
        fitting = static_cast<int>(std::clamp(whole, 0.0, static_cast<double>(n_levels)));
    }
    if (fitting == 0) {
        fail(ErrorCode::insufficient_liquidity, "no full bucket fits inside the range", "bucket");
    }
    return walk(shifted.x, shifted.y, bucket, fitting, side, factor);
}

void write_csv(std::ostream& out, const DepthLadder& ladder) {
    out << "level,avg_price,marginal_price,quantity,cumulative_cost\n";
    for (const auto& l : ladder.levels) {
        out << l.level << ',' << format_double(l.avg_price) << ',' << format_double(l.marginal_price)
            << ',' << format_double(l.quantity) << ',' << format_double(l.cumulative_cost) << '\n';
    }
}

std::vector<DepthPoint> cumulative_depth(const DepthLadder& ladder) {
    std::vector<DepthPoint> out;
    out.reserve(ladder.levels.size());
    double total = 0.0;
    for (const auto& l : ladder.levels) {
        total += l.quantity;
        out.push_back({l.marginal_price, total});
    }
    return out;
}

}  // namespace ammkit
