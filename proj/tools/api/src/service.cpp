#include "ammkit/api/service.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ammkit/depth.hpp"
#include "ammkit/error.hpp"
#include "ammkit/impermanent_loss.hpp"
#include "ammkit/scenario.hpp"
#include "ammkit/api/parse.hpp"

namespace ammkit::api {

using json = nlohmann::ordered_json;

namespace {

// Failure detected while reading a request, before the engine runs.
struct RequestError {
    int status;
    std::string code;
    std::string message;
    std::string field;
};

[[noreturn]] void reject(std::string field, std::string message, int status = 422,
                         std::string code = "invalid_parameter") {
    throw RequestError{status, std::move(code), std::move(message), std::move(field)};
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

class Fields {
public:
    explicit Fields(const json& body) : body_(body) {}

    bool has(const char* key) const { return body_.contains(key) && !body_[key].is_null(); }

    const json& at(const char* key) const { return body_[key]; }

    double number(const char* key) const {
        if (!has(key)) reject(key, std::string("missing required field '") + key + "'");
        return as_number(body_[key], key);
    }

    double number_or(const char* key, double fallback) const {
        return has(key) ? as_number(body_[key], key) : fallback;
    }

    // Numbers, plus "inf"/"infinity" strings for unbounded prices.
    double bound_or(const char* key, double fallback) const {
        if (!has(key)) return fallback;
        const auto& v = body_[key];
        if (v.is_string()) {
            const auto s = v.get<std::string>();
            if (s == "inf" || s == "infinity" || s == "Infinity") return kInfinity;
            reject(key, std::string("field '") + key + "' must be a number or \"inf\"");
        }
        return as_number(v, key);
    }

    std::string string_or(const char* key, std::string fallback) const {
        if (!has(key)) return fallback;
        if (!body_[key].is_string()) reject(key, std::string("field '") + key + "' must be a string");
        return body_[key].get<std::string>();
    }

    bool boolean_or(const char* key, bool fallback) const {
        if (!has(key)) return fallback;
        if (!body_[key].is_boolean()) reject(key, std::string("field '") + key + "' must be a boolean");
        return body_[key].get<bool>();
    }

    long long integer(const char* key) const {
        const double v = number(key);
        if (v != std::floor(v) || std::abs(v) > 1e15) {
            reject(key, std::string("field '") + key + "' must be an integer");
        }
        return static_cast<long long>(v);
    }

    static double as_number(const json& v, const std::string& key) {
        if (!v.is_number()) reject(key, "field '" + key + "' must be a number");
        return v.get<double>();
    }

private:
    const json& body_;
};

json parse_body(std::string_view body) {
    auto parsed = json::parse(body.begin(), body.end(), nullptr, false);
    if (parsed.is_discarded()) reject("", "request body is not valid JSON", 400, "malformed_body");
    if (!parsed.is_object()) reject("", "request body must be a JSON object", 400, "malformed_body");
    return parsed;
}

Convention parse_convention(const Fields& f) {
    const auto c = f.string_or("convention", "virtual");
    if (c == "virtual") return Convention::virtual_price;
    if (c == "quadratic") return Convention::real_price_quadratic;
    reject("convention", "convention must be \"virtual\" or \"quadratic\"");
}

std::string parse_kind(const Fields& f) {
    const auto kind = f.string_or("kind", "v2");
    if (kind != "v2" && kind != "range") reject("kind", "kind must be \"v2\" or \"range\"");
    return kind;
}

RangePosition parse_position(const Fields& f) {
    const auto kind = parse_kind(f);
    RangePosition position;
    position.liquidity = f.number_or("liquidity", 1.0);
    position.convention = parse_convention(f);
    if (kind == "range") {
        position.range.low = f.number_or("p_low", 0.0);
        position.range.high = f.bound_or("p_high", kInfinity);
    }
    return position;
}

std::vector<double> parse_number_array(const json& v, const char* key) {
    if (!v.is_array()) reject(key, std::string("field '") + key + "' must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& item : v) out.push_back(Fields::as_number(item, key));
    return out;
}

std::vector<double> parse_grid(const Fields& f, Price p0, std::size_t cap) {
    if (!f.has("grid")) return default_grid(p0);
    const auto& g = f.at("grid");
    if (g.is_array()) {
        if (g.size() > cap) reject("grid", "grid exceeds the point limit", 413, "payload_too_large");
        return parse_number_array(g, "grid");
    }
    if (!g.is_string()) reject("grid", "grid must be an array or a \"log:lo:hi:n\" string");
    const auto spec = parse_grid_spec(g.get<std::string>());
    if (!spec) reject("grid", "grid string must look like log:lo:hi:n or lin:lo:hi:n");
    if (spec->n > cap) reject("grid", "grid exceeds the point limit", 413, "payload_too_large");
    return spec->log ? log_grid(spec->lo, spec->hi, spec->n) : lin_grid(spec->lo, spec->hi, spec->n);
}

json envelope(const json& request_id) {
    json out;
    out["request_id"] = request_id;
    out["engine_version"] = kEngineVersion;
    out["warnings"] = json::array();
    return out;
}

json request_id_of(std::string_view body) {
    auto parsed = json::parse(body.begin(), body.end(), nullptr, false);
    if (parsed.is_object() && parsed.contains("request_id")) return parsed["request_id"];
    return nullptr;
}

HttpResponse error_response(int status, const std::string& code, const std::string& message,
                            const std::string& field, const json& request_id) {
    json out;
    out["request_id"] = request_id;
    out["engine_version"] = kEngineVersion;
    json err;
    err["code"] = code;
    err["message"] = message;
    if (!field.empty()) err["field"] = field;
    out["error"] = err;
    return {status, out.dump()};
}

// Runs `build`, which fills `out["result"]` and may push warnings, and maps
// every failure onto the status-code contract.
template <typename Build>
HttpResponse run(std::string_view body, Build&& build) {
    json request_id = nullptr;
    try {
        const json request = parse_body(body);
        if (request.contains("request_id")) request_id = request["request_id"];
        json out = envelope(request_id);
        build(Fields(request), out);
        return {200, out.dump()};
    } catch (const RequestError& e) {
        if (request_id.is_null()) request_id = request_id_of(body);
        return error_response(e.status, e.code, e.message, e.field, request_id);
    } catch (const Error& e) {
        const bool internal = e.code() == ErrorCode::numerical_failure;
        return error_response(internal ? 500 : 422, std::string(to_string(e.code())), e.what(),
                              e.field(), request_id);
    } catch (const nlohmann::json::exception& e) {
        return error_response(422, "invalid_parameter", e.what(), "", request_id);
    } catch (const std::exception& e) {
        return error_response(500, "internal_error", e.what(), "", request_id);
    }
}

json sample_json(const ValueSample& s) {
    json j;
    j["price"] = s.price;
    j["v_lp"] = s.v_lp;
    j["v_hold"] = s.v_hold;
    j["epsilon"] = s.epsilon;
    j["epsilon_common"] = s.epsilon_common;
    if (s.is_limit) j["is_limit"] = true;
    return j;
}

ArbModel parse_arb(const Fields& f) {
    const auto arb = f.string_or("arb", "full_convergence");
    if (arb == "full_convergence" || arb == "full") return ArbModel::full_convergence;
    if (arb == "fee_band" || arb == "band") return ArbModel::fee_band;
    reject("arb", "arb must be \"full_convergence\" or \"fee_band\"");
}

PricePath parse_path(const Fields& f, std::size_t cap) {
    if (!f.has("path")) reject("path", "missing required field 'path'");
    const auto& p = f.at("path");
    if (!p.is_array()) reject("path", "path must be an array");
    if (p.size() > cap) {
        reject("path", "path exceeds the " + std::to_string(cap) + "-step limit", 413,
               "payload_too_large");
    }
    std::vector<PricePoint> points;
    points.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& item = p[i];
        if (item.is_number()) {
            points.push_back({static_cast<double>(i), item.get<double>()});
        } else if (item.is_object() && item.contains("price")) {
            const double t = item.contains("timestamp") ? Fields::as_number(item["timestamp"], "path")
                                                        : static_cast<double>(i);
            points.push_back({t, Fields::as_number(item["price"], "path")});
        } else if (item.is_array() && item.size() == 2) {
            points.push_back({Fields::as_number(item[0], "path"), Fields::as_number(item[1], "path")});
        } else {
            reject("path", "path entries must be numbers, {timestamp, price} objects or [t, p] pairs");
        }
    }
    return PricePath(std::move(points));
}

}  // namespace

Service::Service(ServiceConfig config)
    : config_(config), started_(std::chrono::steady_clock::now()) {}

HttpResponse Service::handle(std::string_view method, std::string_view path,
                             std::string_view body) const {
    if (path.substr(0, kApiPrefix.size()) != kApiPrefix) {
        return error_response(404, "not_found", "unknown path", "", nullptr);
    }
    const auto name = path.substr(kApiPrefix.size());
    if (name == "health") {
        if (method != "GET") return error_response(405, "method_not_allowed", "use GET", "", nullptr);
        return health();
    }
    using Handler = HttpResponse (Service::*)(std::string_view) const;
    static constexpr std::pair<std::string_view, Handler> routes[] = {
        {"il", &Service::il},           {"profile", &Service::profile},
        {"depth", &Service::depth},     {"table", &Service::table},
        {"simulate", &Service::simulate},
    };
    for (const auto& [route, handler] : routes) {
        if (name != route) continue;
        if (method != "POST") return error_response(405, "method_not_allowed", "use POST", "", nullptr);
        return (this->*handler)(body);
    }
    return error_response(404, "not_found", "unknown endpoint", "", nullptr);
}

HttpResponse Service::il(std::string_view body) const {
    return run(body, [](const Fields& f, json& out) {
        const auto kind = parse_kind(f);
        validate(parse_position(f));
        json result;
        if (kind == "v2" && f.has("R")) {
            const double r = f.number("R");
            if (!(r >= 0.0) || !std::isfinite(r)) reject("R", "R must be a finite number >= 0");
            const auto point = il_point(r);
            result["R"] = r;
            result["epsilon_paper"] = point.epsilon_paper;
            result["epsilon_common"] = point.epsilon_common;
            result["epsilon"] = point.epsilon_paper;
            if (point.is_limit) out["warnings"].push_back("R = 0 reported as its limit value");
        } else {
            auto position = parse_position(f);
            const Price p0(f.number_or("P0", 1.0));
            const Price p1(f.number("P1"));
            if (position.convention == Convention::real_price_quadratic &&
                !(position.range.contains(p0.value()) && position.range.contains(p1.value()))) {
                out["warnings"].push_back(
                    "quadratic convention is undefined outside [p_low, p_high]; virtual convention used");
                position.convention = Convention::virtual_price;
            }
            result["P0"] = p0.value();
            result["P1"] = p1.value();
            result["epsilon"] = il_generic(position, p0, p1);
            if (kind == "v2") {
                const PriceRatio r(p1.value() / p0.value());
                result["epsilon_paper"] = il_v2(r);
                result["epsilon_common"] = il_v2_common(r);
            }
        }
        out["result"] = result;
    });
}

HttpResponse Service::profile(std::string_view body) const {
    return run(body, [this](const Fields& f, json& out) {
        const auto position = parse_position(f);
        validate(position);
        const Price p0(f.number_or("P0", 1.0));
        auto grid = parse_grid(f, p0, config_.max_grid_points);
        if (position.convention == Convention::real_price_quadratic) {
            const auto before = grid.size();
            std::erase_if(grid, [&](double p) { return !position.range.contains(p); });
            if (grid.size() != before) {
                out["warnings"].push_back(
                    "quadratic convention is undefined outside [p_low, p_high]; " +
                    std::to_string(before - grid.size()) + " grid points dropped");
            }
        }
        const auto curve = risk_profile(position, p0, grid);
        json result;
        result["P0"] = curve.p0;
        result["V0"] = curve.v0;
        result["x0"] = curve.initial.x;
        result["y0"] = curve.initial.y;
        const auto ints = range_intercepts(position);
        result["x_max"] = number_or_null(ints.x_max);
        result["y_max"] = number_or_null(ints.y_max);
        json samples = json::array();
        for (const auto& s : curve.samples) samples.push_back(sample_json(s));
        result["samples"] = std::move(samples);
        out["result"] = result;
    });
}

HttpResponse Service::depth(std::string_view body) const {
    return run(body, [this](const Fields& f, json& out) {
        const auto side_name = f.string_or("side", "asks");
        if (side_name != "asks" && side_name != "bids") reject("side", "side must be \"asks\" or \"bids\"");
        const auto side = side_name == "asks" ? BookSide::asks : BookSide::bids;
        const double bucket = f.number("bucket");
        const auto levels = f.integer("levels");
        if (levels < 1) reject("levels", "levels must be >= 1");
        if (static_cast<std::size_t>(levels) > config_.max_grid_points) {
            reject("levels", "levels exceeds the limit", 413, "payload_too_large");
        }
        LadderOptions options;
        options.fee_adjusted = f.boolean_or("fee_adjusted", false);
        options.fee_rate = f.number_or("fee_rate", 0.0);

        DepthLadder ladder;
        if (parse_kind(f) == "v2" && f.has("x") && f.has("y")) {
            const auto pool = make_pool(f.number("x"), f.number("y"), options.fee_rate);
            ladder = depth_ladder(pool, bucket, static_cast<int>(levels), side, options);
        } else {
            auto position = parse_position(f);
            if (position.convention == Convention::real_price_quadratic) {
                out["warnings"].push_back("depth ladders walk virtual reserves; virtual convention used");
                position.convention = Convention::virtual_price;
            }
            const Price price(f.number_or("P0", 1.0));
            ladder = depth_ladder(position, price, bucket, static_cast<int>(levels), side, options);
            if (ladder.levels.size() < static_cast<std::size_t>(levels)) {
                out["warnings"].push_back("ladder truncated at the range boundary");
            }
        }
        json result;
        result["side"] = side_name;
        result["bucket"] = ladder.bucket;
        json rows = json::array();
        for (const auto& l : ladder.levels) {
            json row;
            row["level"] = l.level;
            row["avg_price"] = l.avg_price;
            row["marginal_price"] = l.marginal_price;
            row["quantity"] = l.quantity;
            row["cost"] = l.cost;
            row["cumulative_cost"] = l.cumulative_cost;
            rows.push_back(std::move(row));
        }
        result["levels"] = std::move(rows);
        out["result"] = result;
    });
}

HttpResponse Service::table(std::string_view body) const {
    return run(body, [](const Fields& f, json& out) {
        ILTable t;
        const auto preset = f.string_or("preset", "");
        if (!preset.empty()) {
            if (preset != "table1") reject("preset", "unknown preset");
            t = table1_preset();
        } else {
            if (!f.has("ranges")) reject("ranges", "missing required field 'ranges'");
            if (!f.has("moves")) reject("moves", "missing required field 'moves'");
            const auto& rj = f.at("ranges");
            if (!rj.is_array() || rj.empty()) reject("ranges", "ranges must be a nonempty array");
            std::vector<PriceRange> ranges;
            for (const auto& r : rj) {
                if (!r.is_array() || r.size() != 2) reject("ranges", "each range must be [low, high]");
                const double low = Fields::as_number(r[0], "ranges");
                const double high =
                    r[1].is_null() || (r[1].is_string() && r[1].get<std::string>() == "inf")
                        ? kInfinity
                        : Fields::as_number(r[1], "ranges");
                ranges.push_back({low, high});
            }
            const auto moves = parse_number_array(f.at("moves"), "moves");
            t = il_table(ranges, moves, Price(f.number_or("P0", 1.0)), f.number_or("liquidity", 1.0));
        }
        json result;
        result["moves"] = t.moves;
        json rows = json::array();
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            json row;
            row["label"] = range_label(t.rows[r]);
            row["p_low"] = t.rows[r].low;
            row["p_high"] = number_or_null(t.rows[r].high);
            row["cells"] = t.cells[r];
            json formatted = json::array();
            for (const double c : t.cells[r]) formatted.push_back(format_percent(c));
            row["formatted"] = std::move(formatted);
            rows.push_back(std::move(row));
        }
        result["rows"] = std::move(rows);
        out["result"] = result;
    });
}

HttpResponse Service::simulate(std::string_view body) const {
    return run(body, [this](const Fields& f, json& out) {
        const auto position = parse_position(f);
        if (position.convention != Convention::virtual_price) {
            reject("convention", "simulation supports the virtual convention only");
        }
        const auto path = parse_path(f, config_.max_path_steps);
        const FeeTier fee(f.number_or("fee", FeeTier::kMedium));
        const auto r = ammkit::simulate(position, path, fee, parse_arb(f));
        json result;
        result["steps"] = path.size();
        result["P0"] = r.p0;
        result["P_final"] = r.p_final;
        result["V0"] = r.v0;
        result["final_x"] = r.final_reserves.x;
        result["final_y"] = r.final_reserves.y;
        result["fees_x"] = r.fees_x;
        result["fees_y"] = r.fees_y;
        result["fees_collected"] = r.fees_collected;
        result["pnl_total"] = r.pnl_total;
        result["pnl_hold"] = r.pnl_hold;
        result["pnl_il"] = r.pnl_il;
        result["pnl_fees"] = r.pnl_fees;
        if (f.boolean_or("include_trace", false)) {
            json trace = json::array();
            for (const auto& s : r.trace) {
                trace.push_back({{"step", s.step}, {"price", s.price}, {"pool_price", s.pool_price},
                                 {"x", s.x}, {"y", s.y}, {"fees_x", s.fees_x}, {"fees_y", s.fees_y}});
            }
            result["trace"] = std::move(trace);
        }
        out["result"] = result;
    });
}

HttpResponse Service::health() const {
    const auto uptime = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_);
    json out;
    out["status"] = "ok";
    out["version"] = kEngineVersion;
    out["uptime_s"] = uptime.count();
    return {200, out.dump()};
}

}  // namespace ammkit::api
