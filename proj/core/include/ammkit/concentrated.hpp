#pragma once

// Concentrated-liquidity (Uniswap v3 style) position geometry.
//
// A position with liquidity L = sqrt(K) over [p_low, p_high] lives on the
// shifted curve (x + L sqrt(p_low)) (y + L / sqrt(p_high)) = K. Two price
// conventions are supported:
//
//  * virtual_price: P = x' / y' on the shifted (virtual) reserves. Hits the
//    intercepts (0, y_max) at p_low and (x_max, 0) at p_high. Default.
//  * real_price_quadratic: P = x / y on the real reserves, solved as a
//    quadratic in x and in y. Only defined inside [p_low, p_high].
//
// p_low = 0 and p_high = +inf are representable; (0, inf) is the v2 pool.

#include <limits>

#include "ammkit/pool.hpp"

namespace ammkit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PriceRange {
    double low = 0.0;
    double high = kInfinity;

    bool is_full() const noexcept { return low == 0.0 && high == kInfinity; }
    bool contains(double p) const noexcept { return p >= low && p <= high; }
};

/// Throws InvalidRange unless 0 <= low < high (high may be +inf).
PriceRange make_range(double low, double high);

enum class Convention {
    virtual_price,
    real_price_quadratic,
};

struct RangePosition {
    double liquidity = 1.0;  // sqrt(K)
    PriceRange range;
    Convention convention = Convention::virtual_price;

    double invariant() const noexcept { return liquidity * liquidity; }

    /// Semi-infinite v2 position [0, inf).
    static RangePosition v2(double liquidity);
};

/// Validates liquidity and range; returns the position unchanged.
const RangePosition& validate(const RangePosition& position);

/// v2 position equivalent to a pool: L = sqrt(x y).
RangePosition position_from_pool(const PoolState& pool);

struct Intercepts {
    double x_max = 0.0;
    double y_max = 0.0;
};

/// y_max = L (1/sqrt(p_low) - 1/sqrt(p_high)), x_max = L (sqrt(p_high) - sqrt(p_low)).
/// Either may be +inf for an unbounded side.
Intercepts range_intercepts(const RangePosition& position);

/// Real -> virtual reserves. Throws InconsistentState when the shifted
/// product differs from K by more than 1e-9 relative.
ReservePair virtual_reserves(const ReservePair& real, const RangePosition& position);

/// Virtual-price convention. Clamps to the intercepts outside the range.
ReservePair reserves_at_price_closed(const RangePosition& position, Price price);

/// Real-price convention via the positive roots of the two quadratics.
/// Throws OutOfConvention for prices outside [p_low, p_high].
ReservePair reserves_at_price_quadratic(const RangePosition& position, Price price);

/// Dispatches on position.convention.
ReservePair reserves_at_price(const RangePosition& position, Price price);

/// Residuals of the x and y quadratics at the given reserves.
struct QuadraticResiduals {
    double x = 0.0;
    double y = 0.0;
};
QuadraticResiduals quadratic_residuals(const RangePosition& position, Price price,
                                       const ReservePair& reserves);

/// Reserve change (x1 - x0, y1 - y0) when the price moves from p0 to p1,
/// evaluated without the cancellation that subtracting two reserve pairs
/// incurs. Honors position.convention.
struct ReserveDelta {
    long double dx = 0.0L;
    long double dy = 0.0L;
};
ReserveDelta reserve_change(const RangePosition& position, Price from, Price to);

}  // namespace ammkit
