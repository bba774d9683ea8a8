#include "ammkit/concentrated.hpp"

#include <algorithm>
#include <cmath>

#include "ammkit/error.hpp"

namespace ammkit {

using detail::fail;

PriceRange make_range(double low, double high) {
    if (!(std::isfinite(low) && low >= 0.0)) {
        fail(ErrorCode::invalid_range, "p_low must be finite and >= 0", "p_low");
    }
    if (std::isnan(high) || !(high > low)) {
        fail(ErrorCode::invalid_range, "p_high must exceed p_low", "p_high");
    }
    return {low, high};
}

RangePosition RangePosition::v2(double liquidity) {
    RangePosition position{liquidity, PriceRange{}, Convention::virtual_price};
    validate(position);
    return position;
}

const RangePosition& validate(const RangePosition& position) {
    if (!(std::isfinite(position.liquidity) && position.liquidity > 0.0)) {
        fail(ErrorCode::invalid_parameter, "liquidity must be positive and finite", "liquidity");
    }
    make_range(position.range.low, position.range.high);
    return position;
}

RangePosition position_from_pool(const PoolState& pool) {
    spot_price(pool);  // validates
    return RangePosition::v2(std::sqrt(pool.invariant()));
}

namespace {

// 1/sqrt(p) with 1/sqrt(inf) = 0 and 1/sqrt(0) = inf.
template <typename T>
T inv_sqrt(T p) {
    if (std::isinf(p)) return T(0);
    return T(1) / std::sqrt(p);
}

}  // namespace

Intercepts range_intercepts(const RangePosition& position) {
    validate(position);
    const double liquidity = position.liquidity;
    const auto& r = position.range;
    return {
        liquidity * (std::sqrt(r.high) - std::sqrt(r.low)),
        liquidity * (inv_sqrt(r.low) - inv_sqrt(r.high)),
    };
}

ReservePair virtual_reserves(const ReservePair& real, const RangePosition& position) {
    validate(position);
    if (!(std::isfinite(real.x) && std::isfinite(real.y) && real.x >= 0.0 && real.y >= 0.0)) {
        fail(ErrorCode::invalid_parameter, "real reserves must be finite and >= 0", "reserves");
    }
    const double k = position.invariant();
    const double liquidity = position.liquidity;
    const ReservePair shifted{
        real.x + liquidity * std::sqrt(position.range.low),
        real.y + liquidity * inv_sqrt(position.range.high),
    };
    if (!(std::abs(shifted.x * shifted.y - k) <= 1e-9 * k)) {
        fail(ErrorCode::inconsistent_state, "real reserves do not lie on the position's curve",
             "reserves");
    }
    return shifted;
}

ReservePair reserves_at_price_closed(const RangePosition& position, Price price) {
    validate(position);
    const auto& r = position.range;
    const double clamped = std::clamp(price.value(), r.low, r.high);
    return {
        position.liquidity * (std::sqrt(clamped) - std::sqrt(r.low)),
        position.liquidity * (inv_sqrt(clamped) - inv_sqrt(r.high)),
    };
}

namespace {

// Positive root of z^2 + b z + c with b >= 0 and c < 0, avoiding the
// cancellation of -b + sqrt(b^2 - 4c) when b^2 >> |c|.
double positive_root(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (!(disc >= 0.0) || !std::isfinite(disc)) {
        fail(ErrorCode::numerical_failure, "quadratic has no real root");
    }
    if (c == 0.0) return std::max(0.0, -b);
    const double q = -0.5 * (b + std::sqrt(disc));
    const double root = c / q;
    if (!(root >= 0.0) || !std::isfinite(root)) {
        fail(ErrorCode::numerical_failure, "quadratic has no nonnegative root");
    }
    return root;
}

struct QuadraticCoefficients {
    double bx, cx, by, cy;
};

QuadraticCoefficients coefficients(const RangePosition& position, double p) {
    const double liquidity = position.liquidity;
    const double k = position.invariant();
    const double sqrt_low = std::sqrt(position.range.low);
    const double inv_sqrt_high = inv_sqrt(position.range.high);
    const double shift = sqrt_low * inv_sqrt_high - 1.0;
    return {
        liquidity * (p * inv_sqrt_high + sqrt_low),
        k * p * shift,
        liquidity * (inv_sqrt_high + sqrt_low / p),
        k / p * shift,
    };
}

}  // namespace

ReservePair reserves_at_price_quadratic(const RangePosition& position, Price price) {
    validate(position);
    const double p = price.value();
    if (!position.range.contains(p)) {
        fail(ErrorCode::out_of_convention,
             "quadratic convention is only defined for prices inside the range", "price");
    }
    const auto co = coefficients(position, p);
    return {positive_root(co.bx, co.cx), positive_root(co.by, co.cy)};
}

ReservePair reserves_at_price(const RangePosition& position, Price price) {
    return position.convention == Convention::virtual_price
               ? reserves_at_price_closed(position, price)
               : reserves_at_price_quadratic(position, price);
}

QuadraticResiduals quadratic_residuals(const RangePosition& position, Price price,
                                       const ReservePair& reserves) {
    validate(position);
    const auto co = coefficients(position, price.value());
    const double x = reserves.x;
    const double y = reserves.y;
    return {x * x + co.bx * x + co.cx, y * y + co.by * y + co.cy};
}

ReserveDelta reserve_change(const RangePosition& position, Price from, Price to) {
    validate(position);
    if (position.convention == Convention::real_price_quadratic) {
        const auto a = reserves_at_price_quadratic(position, from);
        const auto b = reserves_at_price_quadratic(position, to);
        return {static_cast<long double>(b.x) - a.x, static_cast<long double>(b.y) - a.y};
    }
    // Virtual convention: x = L (sqrt(Pc) - sqrt(p_low)), y = L (1/sqrt(Pc) - 1/sqrt(p_high))
    // with Pc the price clamped to the range, so
    //   dx = L (P1 - P0) / (sqrt(P1) + sqrt(P0))
    //   dy = -L (P1 - P0) / (sqrt(P0) sqrt(P1) (sqrt(P0) + sqrt(P1)))
    using ld = long double;
    const auto& r = position.range;
    const ld p0 = std::clamp(from.value(), r.low, r.high);
    const ld p1 = std::clamp(to.value(), r.low, r.high);
    if (p0 == p1) return {};
    const ld liquidity = position.liquidity;
    const ld s0 = std::sqrt(p0);
    const ld s1 = std::sqrt(p1);
    const ld move = p1 - p0;
    return {liquidity * move / (s0 + s1), -liquidity * move / (s0 * s1 * (s0 + s1))};
}

}  // namespace ammkit
