#include "ammkit/pool.hpp"

#include <cmath>
#include <string>

#include "ammkit/error.hpp"

namespace ammkit {

using detail::fail;

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require_active(const PoolState& pool) {
    if (!positive_finite(pool.x) || !positive_finite(pool.y)) {
        fail(ErrorCode::degenerate_pool, "pool reserves must be positive and finite");
    }
    if (!std::isfinite(pool.invariant()) || pool.invariant() <= 0.0) {
        fail(ErrorCode::degenerate_pool, "pool invariant x*y is not a positive finite number");
    }
    if (!(pool.fee_rate >= 0.0 && pool.fee_rate < 1.0)) {
        fail(ErrorCode::invalid_parameter, "fee_rate must lie in [0, 1)", "fee_rate");
    }
}

}  // namespace

Price::Price(double value) : value_(value) {
    if (!positive_finite(value)) {
        fail(ErrorCode::invalid_parameter, "price must be positive and finite", "price");
    }
}

PoolState make_pool(double x, double y, double fee_rate) {
    PoolState pool{x, y, fee_rate, 0.0, 0.0};
    require_active(pool);
    return pool;
}

Price spot_price(const PoolState& pool) {
    require_active(pool);
    return Price(pool.x / pool.y);
}

ReservePair reserves_from_price(double k, Price price) {
    if (!positive_finite(k)) {
        fail(ErrorCode::invalid_parameter, "invariant K must be positive and finite", "K");
    }
    return {std::sqrt(k * price.value()), std::sqrt(k / price.value())};
}

SwapQuote quote_swap_y_out(const PoolState& pool, double delta_y) {
    require_active(pool);
    if (!positive_finite(delta_y)) {
        fail(ErrorCode::invalid_parameter, "delta_y must be positive and finite", "delta_y");
    }
    if (delta_y >= pool.y) {
        fail(ErrorCode::insufficient_liquidity, "delta_y would drain the Y reserve", "delta_y");
    }
    const double effective = delta_y * pool.x / (pool.y - delta_y);
    const double fee = effective * (pool.fee_rate / (1.0 - pool.fee_rate));

    SwapQuote quote;
    quote.direction = SwapDirection::x_in_y_out;
    quote.delta_x = effective + fee;
    quote.delta_y = delta_y;
    quote.fee_paid = fee;
    quote.pre_state = pool;
    quote.post_state = pool;
    quote.post_state.x = pool.x + effective;
    quote.post_state.y = pool.y - delta_y;
    quote.post_state.fees_x += quote.fee_paid;
    return quote;
}

SwapQuote quote_swap_x_out(const PoolState& pool, double delta_x) {
    require_active(pool);
    if (!positive_finite(delta_x)) {
        fail(ErrorCode::invalid_parameter, "delta_x must be positive and finite", "delta_x");
    }
    if (delta_x >= pool.x) {
        fail(ErrorCode::insufficient_liquidity, "delta_x would drain the X reserve", "delta_x");
    }
    const double effective = delta_x * pool.y / (pool.x - delta_x);
    const double fee = effective * (pool.fee_rate / (1.0 - pool.fee_rate));

    SwapQuote quote;
    quote.direction = SwapDirection::y_in_x_out;
    quote.delta_x = delta_x;
    quote.delta_y = effective + fee;
    quote.fee_paid = fee;
    quote.pre_state = pool;
    quote.post_state = pool;
    quote.post_state.x = pool.x - delta_x;
    quote.post_state.y = pool.y + effective;
    quote.post_state.fees_y += quote.fee_paid;
    return quote;
}

PoolState apply_swap(const PoolState& pool, const SwapQuote& quote) {
    if (!(pool == quote.pre_state)) {
        fail(ErrorCode::stale_quote, "quote was priced against a different pool state");
    }
    return quote.post_state;
}

}  // namespace ammkit
