#pragma once

// The constant-product curve re-expressed as an order book: fixed-size
// buckets of Y and the X it costs (asks) or pays (bids) to trade each one,
// walking the curve level by level.

#include <iosfwd>
#include <vector>

#include "ammkit/concentrated.hpp"
#include "ammkit/pool.hpp"

namespace ammkit {

enum class BookSide {
    bids,  // pool buys Y: trader sells a bucket of Y and receives X
    asks,  // pool sells Y: trader buys a bucket of Y and pays X
};

struct DepthLevel {
    int level = 0;             // 1-based
    double quantity = 0.0;     // Y traded at this level
    double cost = 0.0;         // X exchanged for this level
    double avg_price = 0.0;    // cost / quantity
    double marginal_price = 0.0;  // spot after the level executes
    double cumulative_cost = 0.0;
};

struct DepthLadder {
    BookSide side = BookSide::asks;
    double bucket = 0.0;
    std::vector<DepthLevel> levels;
};

struct LadderOptions {
    bool fee_adjusted = false;  // asks: cost / (1 - f); bids: proceeds * (1 - f)
    double fee_rate = 0.0;      // used for range positions; pools use their own rate
};

/// Ladder against a v2 pool. Throws InsufficientLiquidity when
/// bucket * n_levels would reach the reserve being consumed.
DepthLadder depth_ladder(const PoolState& pool, double bucket, int n_levels, BookSide side,
                         LadderOptions options = {});

/// Ladder against a range position at `price`. Levels that would cross a
/// range boundary are dropped; throws InsufficientLiquidity if none fit.
DepthLadder depth_ladder(const RangePosition& position, Price price, double bucket, int n_levels,
                         BookSide side, LadderOptions options = {});

/// CSV `level,avg_price,marginal_price,quantity,cumulative_cost`.
void write_csv(std::ostream& out, const DepthLadder& ladder);

struct DepthPoint {
    double price = 0.0;               // marginal price reached
    double cumulative_quantity = 0.0;
};

/// Cumulative-depth series (price reached vs. total Y traded) for plotting.
std::vector<DepthPoint> cumulative_depth(const DepthLadder& ladder);

}  // namespace ammkit
