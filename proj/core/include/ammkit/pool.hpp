#pragma once

// Constant-product (Uniswap v2 style) pool mathematics.
//
// Price convention: P = x / y, i.e. units of X per unit of Y. All values are
// measured in units of X (V = x + P * y). This is the reverse of the
// "token1 per token0" convention used by some venues.

#include <compare>

namespace ammkit {

/// Strictly positive, finite exchange rate in X per Y.
class Price {
public:
    explicit Price(double value);

    double value() const noexcept { return value_; }

    friend auto operator<=>(const Price&, const Price&) = default;

private:
    double value_;
};

struct ReservePair {
    double x = 0.0;
    double y = 0.0;
};

/// Aggregate v2 pool. Fees accrue outside the reserves and never re-enter
/// the product x * y.
struct PoolState {
    double x = 0.0;
    double y = 0.0;
    double fee_rate = 0.0;  // fraction in [0, 1)
    double fees_x = 0.0;
    double fees_y = 0.0;

    double invariant() const noexcept { return x * y; }

    friend bool operator==(const PoolState&, const PoolState&) = default;
};

/// Builds a validated pool; throws DegeneratePool / InvalidParameter.
PoolState make_pool(double x, double y, double fee_rate = 0.0);

enum class SwapDirection {
    x_in_y_out,
    y_in_x_out,
};

/// Result of pricing a trade against a pool. `delta_x` and `delta_y` are
/// magnitudes; `direction` says which side flows in. For x_in_y_out,
/// delta_x is what the trader pays (fee included) and delta_y what they
/// receive; y_in_x_out mirrors this.
struct SwapQuote {
    double delta_x = 0.0;
    double delta_y = 0.0;
    double fee_paid = 0.0;  // in input units
    SwapDirection direction = SwapDirection::x_in_y_out;
    PoolState pre_state;
    PoolState post_state;
};

Price spot_price(const PoolState& pool);

/// x = sqrt(K P), y = sqrt(K / P).
ReservePair reserves_from_price(double k, Price price);

/// Trader takes `delta_y` of Y out and pays X. Effective input follows
/// dx = dy * x / (y - dy); the trader pays dx / (1 - f).
SwapQuote quote_swap_y_out(const PoolState& pool, double delta_y);

/// Mirror of quote_swap_y_out: trader takes `delta_x` of X out and pays Y.
SwapQuote quote_swap_x_out(const PoolState& pool, double delta_x);

/// Returns the quote's post state. Throws StaleQuote if `pool` differs from
/// the state the quote was priced against.
PoolState apply_swap(const PoolState& pool, const SwapQuote& quote);

}  // namespace ammkit
