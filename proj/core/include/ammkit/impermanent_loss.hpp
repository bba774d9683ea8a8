#pragma once

// Impermanent loss and liquidity-provider risk profiles.
//
// Loss is normalized by the initial portfolio value V0 = x0 + P0 y0:
//   eps = (V_lp(P1) - V_hold(P1)) / V0, V_hold(P1) = x0 + P1 y0.
// For the v2 position this reduces to sqrt(R) - (R + 1) / 2 with R = P1/P0.
// The widely quoted 2 sqrt(R) / (1 + R) - 1 divides by V_hold(P1) instead
// and is exposed only for comparison.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ammkit/concentrated.hpp"

namespace ammkit {

/// R = P1 / P0, strictly positive and finite.
class PriceRatio {
public:
    explicit PriceRatio(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

/// sqrt(R) - (R + 1) / 2, normalized by initial value. Always <= 0.
double il_v2(PriceRatio ratio);

/// 2 sqrt(R) / (1 + R) - 1, normalized by final hold value. Symmetric in R <-> 1/R.
double il_v2_common(PriceRatio ratio);

struct ILPoint {
    double ratio = 1.0;
    double epsilon_paper = 0.0;
    double epsilon_common = 0.0;
    bool is_limit = false;  // R = 0 endpoint, reported as its limit value
};

/// Both v2 formulas at R. R = 0 yields the limit point (-0.5, -1).
ILPoint il_point(double ratio);

/// Loss of any position between P0 and P1 via its value functions.
double il_generic(const RangePosition& position, Price p0, Price p1);

/// Convenience overload: v2 position built from a pool, P0 = spot price.
double il_generic(const PoolState& pool, Price p1);

struct ValueSample {
    double price = 0.0;
    double v_lp = 0.0;
    double v_hold = 0.0;
    double epsilon = 0.0;         // (v_lp - v_hold) / V0
    double epsilon_common = 0.0;  // (v_lp - v_hold) / v_hold
    bool is_limit = false;
};

struct ValueCurve {
    RangePosition position;
    double p0 = 0.0;
    double v0 = 0.0;
    ReservePair initial;
    std::vector<ValueSample> samples;
};

/// Samples the LP and buy-and-hold values over `grid`. The grid must be
/// strictly increasing and positive; a single leading 0 is accepted and
/// emitted as a limit sample.
ValueCurve risk_profile(const RangePosition& position, Price p0, std::span<const double> grid);

/// 501 log-spaced points over [P0/100, 100 P0].
ValueCurve risk_profile(const RangePosition& position, Price p0);

std::vector<double> log_grid(double lo, double hi, std::size_t n);
std::vector<double> lin_grid(double lo, double hi, std::size_t n);
std::vector<double> default_grid(Price p0);

/// CSV with header `price,v_lp,v_hold,il_paper,il_common`, shortest
/// round-trip decimal formatting.
void write_csv(std::ostream& out, const ValueCurve& curve);

struct ILTable {
    std::vector<PriceRange> rows;  // expressed relative to P0 (multiples)
    std::vector<double> moves;     // relative price moves, e.g. -0.2
    std::vector<std::vector<double>> cells;
};

/// cell(r, m) = il_generic(range r scaled by P0, P0, P0 (1 + m)), virtual convention.
ILTable il_table(std::span<const PriceRange> ranges, std::span<const double> moves, Price p0,
                 double liquidity = 1.0);

/// Ranges [0, inf), [0, 2], [0.25, 1.75], [0.5, 1.5], [0.75, 1.25] at moves -20%, 0, +20%.
ILTable table1_preset();

/// "-1.91%" style rendering, rounded to two decimals of a percent.
std::string format_percent(double fraction);

/// Label such as "[50%, 150%]" or "[0%, inf)".
std::string range_label(const PriceRange& range);

void write_text(std::ostream& out, const ILTable& table);
void write_csv(std::ostream& out, const ILTable& table);

}  // namespace ammkit
