#include "ammkit/impermanent_loss.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ammkit/error.hpp"
#include "ammkit/format.hpp"

namespace ammkit {

using detail::fail;

PriceRatio::PriceRatio(double value) : value_(value) {
    if (!(std::isfinite(value) && value > 0.0)) {
        fail(ErrorCode::invalid_parameter, "price ratio must be positive and finite", "R");
    }
}

// Both closed forms are written as -(sqrt(R) - 1)^2 / d with
// sqrt(R) - 1 = (R - 1) / (sqrt(R) + 1), which keeps full relative
// precision near R = 1.

double il_v2(PriceRatio ratio) {
    const double r = ratio.value();
    const double s = std::sqrt(r);
    const double d = (r - 1.0) / (s + 1.0);
    return -0.5 * d * d;
}

double il_v2_common(PriceRatio ratio) {
    // fl(1/fl(1/R)) need not be R, but one more reciprocal lands on a stable
    // pair (1/(1/(1/R)) == 1/R). Evaluating on the member of that pair below
    // 1 makes R and its computed reciprocal give bit-identical results.
    double r = ratio.value();
    r = r > 1.0 ? 1.0 / r : 1.0 / (1.0 / r);
    const double s = std::sqrt(r);
    const double d = (r - 1.0) / (s + 1.0);
    return -(d * d) / (1.0 + r);
}

ILPoint il_point(double ratio) {
    if (ratio == 0.0) return {0.0, -0.5, -1.0, true};
    const PriceRatio r(ratio);
    return {ratio, il_v2(r), il_v2_common(r), false};
}

namespace {

// Initial reserves and value V0 = x0 + P0 y0.
struct Initial {
    ReservePair reserves;
    double value;
};

Initial initial_state(const RangePosition& position, Price p0) {
    const auto reserves = reserves_at_price(position, p0);
    const double value = reserves.x + p0.value() * reserves.y;
    if (!(std::isfinite(value) && value > 0.0)) {
        fail(ErrorCode::numerical_failure, "initial position value is not positive");
    }
    return {reserves, value};
}

// Numerator of the loss: x1 - x0 + P1 (y1 - y0).
long double pnl_vs_hold(const RangePosition& position, Price p0, Price p1) {
    const auto delta = reserve_change(position, p0, p1);
    return delta.dx + static_cast<long double>(p1.value()) * delta.dy;
}

}  // namespace

double il_generic(const RangePosition& position, Price p0, Price p1) {
    validate(position);
    const auto init = initial_state(position, p0);
    return static_cast<double>(pnl_vs_hold(position, p0, p1) / init.value);
}

double il_generic(const PoolState& pool, Price p1) {
    return il_generic(position_from_pool(pool), spot_price(pool), p1);
}

ValueCurve risk_profile(const RangePosition& position, Price p0, std::span<const double> grid) {
    validate(position);
    if (grid.empty()) {
        fail(ErrorCode::invalid_parameter, "price grid is empty", "grid");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = grid[i];
        const bool leading_zero = i == 0 && p == 0.0;
        if (!leading_zero && !(std::isfinite(p) && p > 0.0)) {
            fail(ErrorCode::invalid_parameter, "grid prices must be positive and finite", "grid");
        }
        if (i > 0 && !(p > grid[i - 1])) {
            fail(ErrorCode::invalid_parameter, "grid must be strictly increasing", "grid");
        }
    }

    const auto init = initial_state(position, p0);
    ValueCurve curve;
    curve.position = position;
    curve.p0 = p0.value();
    curve.v0 = init.value;
    curve.initial = init.reserves;
    curve.samples.reserve(grid.size());

    for (const double p : grid) {
        ValueSample s;
        s.price = p;
        if (p == 0.0) {
            // Limit P -> 0: the position holds only Y, which is worth nothing.
            s.is_limit = true;
            s.v_hold = init.reserves.x;
            s.v_lp = 0.0;
            s.epsilon = -s.v_hold / init.value;
            s.epsilon_common = s.v_hold > 0.0 ? -1.0 : 0.0;
        } else {
            const long double pnl = pnl_vs_hold(position, p0, Price(p));
            s.v_hold = init.reserves.x + p * init.reserves.y;
            s.v_lp = static_cast<double>(s.v_hold + pnl);
            s.epsilon = static_cast<double>(pnl / init.value);
            s.epsilon_common = static_cast<double>(pnl / s.v_hold);
        }
        curve.samples.push_back(s);
    }
    return curve;
}

ValueCurve risk_profile(const RangePosition& position, Price p0) {
    const auto grid = default_grid(p0);
    return risk_profile(position, p0, grid);
}

namespace {

void check_grid_bounds(double lo, double hi, std::size_t n) {
    if (n == 0) fail(ErrorCode::invalid_parameter, "grid needs at least one point", "n");
    if (!(std::isfinite(lo) && std::isfinite(hi))) {
        fail(ErrorCode::invalid_parameter, "grid bounds must be finite", "grid");
    }
    if (n == 1 ? !(hi >= lo) : !(hi > lo)) {
        fail(ErrorCode::invalid_parameter, "grid upper bound must exceed lower bound", "grid");
    }
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    check_grid_bounds(lo, hi, n);
    if (!(lo > 0.0)) fail(ErrorCode::invalid_parameter, "log grid needs lo > 0", "grid");
    if (n == 1) return {lo};
    std::vector<double> out(n);
    const double span = std::log(hi / lo);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo * std::exp(span * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> lin_grid(double lo, double hi, std::size_t n) {
    check_grid_bounds(lo, hi, n);
    if (n == 1) return {lo};
    std::vector<double> out(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

std::vector<double> default_grid(Price p0) {
    return log_grid(p0.value() / 100.0, p0.value() * 100.0, 501);
}

void write_csv(std::ostream& out, const ValueCurve& curve) {
    out << "price,v_lp,v_hold,il_paper,il_common\n";
    for (const auto& s : curve.samples) {
        out << format_double(s.price) << ',' << format_double(s.v_lp) << ','
            << format_double(s.v_hold) << ',' << format_double(s.epsilon) << ','
            << format_double(s.epsilon_common) << '\n';
    }
}

ILTable il_table(std::span<const PriceRange> ranges, std::span<const double> moves, Price p0,
                 double liquidity) {
    for (const double m : moves) {
        if (!(std::isfinite(m) && m > -1.0)) {
            fail(ErrorCode::invalid_parameter, "relative moves must be finite and > -100%", "moves");
        }
    }
    ILTable table;
    table.rows.assign(ranges.begin(), ranges.end());
    table.moves.assign(moves.begin(), moves.end());
    for (const auto& range : ranges) {
        make_range(range.low, range.high);
        RangePosition position{liquidity, {range.low * p0.value(), range.high * p0.value()},
                               Convention::virtual_price};
        std::vector<double> row;
        row.reserve(moves.size());
        for (const double m : moves) {
            row.push_back(il_generic(position, p0, Price(p0.value() * (1.0 + m))));
        }
        table.cells.push_back(std::move(row));
    }
    return table;
}

ILTable table1_preset() {
    const std::vector<PriceRange> ranges{
        {0.0, kInfinity}, {0.0, 2.0}, {0.25, 1.75}, {0.5, 1.5}, {0.75, 1.25},
    };
    const std::vector<double> moves{-0.2, 0.0, 0.2};
    return il_table(ranges, moves, Price(1.0));
}

std::string format_percent(double fraction) {
    double pct = std::round(fraction * 1e4) / 1e2;
    if (pct == 0.0) pct = 0.0;  // no "-0.00%"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f%%", pct);
    return buf;
}

std::string range_label(const PriceRange& range) {
    std::ostringstream os;
    os << '[' << range.low * 100.0 << "%, ";
    if (std::isinf(range.high)) {
        os << "inf)";
    } else {
        os << range.high * 100.0 << "%]";
    }
    return os.str();
}

namespace {

std::string move_label(double m) {
    std::ostringstream os;
    if (m > 0) os << '+';
    os << m * 100.0 << '%';
    return os.str();
}

}  // namespace

void write_text(std::ostream& out, const ILTable& table) {
    constexpr int label_width = 16;
    constexpr int cell_width = 10;
    out << std::left << std::setw(label_width) << "%Move/Range" << std::right;
    for (const double m : table.moves) out << std::setw(cell_width) << move_label(m);
    out << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << std::left << std::setw(label_width) << range_label(table.rows[r]) << std::right;
        for (const double cell : table.cells[r]) out << std::setw(cell_width) << format_percent(cell);
        out << '\n';
    }
}

void write_csv(std::ostream& out, const ILTable& table) {
    out << "range_low,range_high,move,epsilon\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t c = 0; c < table.moves.size(); ++c) {
            out << format_double(table.rows[r].low) << ',' << format_double(table.rows[r].high) << ','
                << format_double(table.moves[c]) << ',' << format_double(table.cells[r][c]) << '\n';
        }
    }
}

}  // namespace ammkit
