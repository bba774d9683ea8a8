#include "ammkit/scenario.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "ammkit/error.hpp"
#include "ammkit/format.hpp"

namespace ammkit {

using detail::fail;

PricePath::PricePath(std::vector<PricePoint> points) : points_(std::move(points)) {
    if (points_.empty()) fail(ErrorCode::invalid_parameter, "price path is empty", "path");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& pt = points_[i];
        if (!(std::isnormal(pt.price) && pt.price > 0.0)) {
            fail(ErrorCode::invalid_parameter,
                 "path price at step " + std::to_string(i) + " is not a positive finite number",
                 "path");
        }
        if (!std::isfinite(pt.timestamp) || (i > 0 && !(pt.timestamp > points_[i - 1].timestamp))) {
            fail(ErrorCode::invalid_parameter, "path timestamps must be strictly increasing", "path");
        }
    }
}

PricePath PricePath::from_prices(const std::vector<double>& prices) {
    std::vector<PricePoint> points;
    points.reserve(prices.size());
    for (std::size_t i = 0; i < prices.size(); ++i) {
        points.push_back({static_cast<double>(i), prices[i]});
    }
    return PricePath(std::move(points));
}

PricePath read_path_csv(std::istream& in) {
    std::vector<PricePoint> points;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            fail(ErrorCode::invalid_parameter,
                 "path line " + std::to_string(line_no) + " lacks a comma", "path");
        }
        try {
            std::size_t used_t = 0;
            std::size_t used_p = 0;
            const std::string ts = line.substr(0, comma);
            const std::string px = line.substr(comma + 1);
            const double t = std::stod(ts, &used_t);
            const double p = std::stod(px, &used_p);
            if (used_t != ts.size() || used_p != px.size()) throw std::invalid_argument("trailing");
            points.push_back({t, p});
        } catch (const std::logic_error&) {
            if (points.empty() && line_no == 1) continue;  // header
            fail(ErrorCode::invalid_parameter,
                 "path line " + std::to_string(line_no) + " is not numeric", "path");
        }
    }
    return PricePath(std::move(points));
}

PricePath gbm_path(double p0, double sigma, double drift, std::size_t steps, std::uint64_t seed) {
    if (!(std::isfinite(sigma) && sigma >= 0.0) || !std::isfinite(drift)) {
        fail(ErrorCode::invalid_parameter, "sigma must be >= 0 and drift finite", "sigma");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> prices;
    prices.reserve(steps + 1);
    prices.push_back(Price(p0).value());
    const double mu = drift - 0.5 * sigma * sigma;
    for (std::size_t i = 0; i < steps; ++i) {
        prices.push_back(prices.back() * std::exp(mu + sigma * normal(rng)));
    }
    return PricePath::from_prices(prices);
}

FeeTier::FeeTier(double rate) : rate_(rate) {
    if (!(rate >= 0.0 && rate < 0.1)) {
        fail(ErrorCode::invalid_parameter, "fee rate must lie in [0, 0.1)", "fee");
    }
}

namespace {

double arb_target(double pool_price, double external, double fee, ArbModel arb) {
    if (arb == ArbModel::full_convergence) return external;
    const double lower = external * (1.0 - fee);
    const double upper = external / (1.0 - fee);
    if (pool_price < lower) return lower;
    if (pool_price > upper) return upper;
    return pool_price;
}

}  // namespace

SimResult simulate(const RangePosition& position, const PricePath& path, FeeTier fee,
                   ArbModel arb) {
    validate(position);
    if (position.convention != Convention::virtual_price) {
        fail(ErrorCode::invalid_parameter, "simulation requires the virtual-price convention",
             "convention");
    }
    const double f = fee.rate();
    const double fee_multiplier = f / (1.0 - f);

    SimResult result;
    result.position = position;
    result.p0 = path.front_price();
    result.p_final = path.back_price();
    result.initial = reserves_at_price_closed(position, Price(result.p0));
    result.v0 = result.initial.x + result.p0 * result.initial.y;

    double pool_price = result.p0;
    ReservePair reserves = result.initial;
    result.trace.reserve(path.size());
    result.trace.push_back({0, result.p0, pool_price, reserves.x, reserves.y, 0.0, 0.0});

    for (std::size_t i = 1; i < path.size(); ++i) {
        const double external = path.points()[i].price;
        const double target = arb_target(pool_price, external, f, arb);
        if (target != pool_price) {
            // Reserves are a function of price alone; recompute rather than
            // accumulate so zero-fee runs depend only on the endpoints.
            const auto next = reserves_at_price_closed(position, Price(target));
            const double dx = next.x - reserves.x;
            const double dy = next.y - reserves.y;
            if (dx > 0.0) result.fees_x += dx * fee_multiplier;
            if (dy > 0.0) result.fees_y += dy * fee_multiplier;
            reserves = next;
            pool_price = target;
        }
        result.trace.push_back(
            {i, external, pool_price, reserves.x, reserves.y, result.fees_x, result.fees_y});
    }

    result.final_reserves = reserves;
    result.fees_collected = result.fees_x + result.p_final * result.fees_y;
    const auto legs = pnl_decompose(result);
    result.pnl_hold = legs.hold;
    result.pnl_il = legs.il;
    result.pnl_fees = legs.fees;
    const double v_final =
        reserves.x + result.p_final * reserves.y + result.fees_collected;
    result.pnl_total = v_final / result.v0 - 1.0;
    return result;
}

PnlBreakdown pnl_decompose(const SimResult& result) {
    const auto& a = result.initial;
    const auto& b = result.final_reserves;
    const double pf = result.p_final;
    return {
        (a.x + pf * a.y) / result.v0 - 1.0,
        ((b.x - a.x) + pf * (b.y - a.y)) / result.v0,
        (result.fees_x + pf * result.fees_y) / result.v0,
    };
}

double annualize(double weekly_rate) {
    if (!(std::isfinite(weekly_rate) && weekly_rate > -1.0)) {
        fail(ErrorCode::invalid_parameter, "weekly rate must exceed -100%", "weekly_rate");
    }
    return 52.0 * weekly_rate;
}

double annualize_compounded(double weekly_rate) {
    annualize(weekly_rate);
    return std::expm1(52.0 * std::log1p(weekly_rate));
}

void write_trace_csv(std::ostream& out, const SimResult& result) {
    out << "step,price,x,y,fees_x,fees_y\n";
    for (const auto& s : result.trace) {
        out << s.step << ',' << format_double(s.price) << ',' << format_double(s.x) << ','
            << format_double(s.y) << ',' << format_double(s.fees_x) << ','
            << format_double(s.fees_y) << '\n';
    }
}

}  // namespace ammkit
