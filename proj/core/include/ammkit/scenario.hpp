#pragma once

// Liquidity-provider simulation over an external price path. An
// arbitrageur moves the pool price to the external price (or to the edge
// of the fee no-arbitrage band); each swap pays a fee on its input side.
// Fees are held outside the position and never compound into liquidity,
// so the final PnL splits exactly into hold, impermanent-loss and fee legs.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ammkit/concentrated.hpp"

namespace ammkit {

struct PricePoint {
    double timestamp = 0.0;
    double price = 0.0;  // X per Y
};

/// Validated path: nonempty, timestamps strictly increasing, prices
/// positive normal binary64 values.
class PricePath {
public:
    explicit PricePath(std::vector<PricePoint> points);

    /// Timestamps 0, 1, 2, ...
    static PricePath from_prices(const std::vector<double>& prices);

    const std::vector<PricePoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    double front_price() const noexcept { return points_.front().price; }
    double back_price() const noexcept { return points_.back().price; }

private:
    std::vector<PricePoint> points_;
};

/// Reads `timestamp,price` rows. A header row is skipped when present.
PricePath read_path_csv(std::istream& in);

/// Seeded geometric Brownian motion, one step per unit time:
/// p[t+1] = p[t] exp((drift - sigma^2 / 2) + sigma Z). Deterministic for a seed.
PricePath gbm_path(double p0, double sigma, double drift, std::size_t steps, std::uint64_t seed);

class FeeTier {
public:
    static constexpr double kLow = 0.0005;
    static constexpr double kMedium = 0.003;
    static constexpr double kHigh = 0.01;

    /// Any rate in [0, 0.1).
    explicit FeeTier(double rate);

    double rate() const noexcept { return rate_; }

private:
    double rate_;
};

enum class ArbModel {
    full_convergence,
    fee_band,
};

struct SimStep {
    std::size_t step = 0;
    double price = 0.0;       // external price
    double pool_price = 0.0;  // price after arbitrage
    double x = 0.0;
    double y = 0.0;
    double fees_x = 0.0;
    double fees_y = 0.0;
};

struct SimResult {
    RangePosition position;
    double p0 = 0.0;
    double p_final = 0.0;  // final external (valuation) price
    double v0 = 0.0;
    ReservePair initial;
    ReservePair final_reserves;
    double fees_x = 0.0;
    double fees_y = 0.0;
    double fees_collected = 0.0;  // X units, Y fees at p_final
    double pnl_total = 0.0;
    double pnl_hold = 0.0;
    double pnl_il = 0.0;
    double pnl_fees = 0.0;
    std::vector<SimStep> trace;
};

/// Position must use the virtual-price convention.
SimResult simulate(const RangePosition& position, const PricePath& path, FeeTier fee,
                   ArbModel arb = ArbModel::full_convergence);

struct PnlBreakdown {
    double hold = 0.0;
    double il = 0.0;
    double fees = 0.0;
};

/// Recomputes the three legs from the result's reserves and fees.
PnlBreakdown pnl_decompose(const SimResult& result);

/// Simple 52-week scaling of a weekly yield.
double annualize(double weekly_rate);

/// (1 + w)^52 - 1.
double annualize_compounded(double weekly_rate);

/// CSV `step,price,x,y,fees_x,fees_y`.
void write_trace_csv(std::ostream& out, const SimResult& result);

}  // namespace ammkit
