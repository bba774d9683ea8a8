#include "ammkit/cli/cli.hpp"

#include <algorithm>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "ammkit/api/parse.hpp"
#include "ammkit/api/server.hpp"
#include "ammkit/api/service.hpp"
#include "ammkit/cli/cost_ledger.hpp"
#include "ammkit/depth.hpp"
#include "ammkit/error.hpp"
#include "ammkit/format.hpp"
#include "ammkit/impermanent_loss.hpp"
#include "ammkit/scenario.hpp"

namespace ammkit::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { text, csv, json };

struct Options {
    std::string format = "text";
    std::string out_file;

    // position
    std::string range;
    double liquidity = 1.0;
    std::string convention = "virtual";
    double p0 = 1.0;

    // il
    std::optional<double> ratio;
    std::optional<double> p1;

    // profile
    std::string grid;

    // table
    std::string preset;
    std::vector<std::string> ranges;
    std::vector<double> moves;

    // depth
    std::optional<double> x;
    std::optional<double> y;
    double bucket = 0.0;
    int levels = 0;
    std::string side = "asks";
    double fee = FeeTier::kMedium;
    bool fee_adjusted = false;

    // simulate
    std::string path_file;
    std::vector<double> prices;
    std::size_t gbm_steps = 0;
    double sigma = 0.05;
    double drift = 0.0;
    std::uint64_t seed = 1;
    std::string arb = "full_convergence";

    // cost
    std::vector<std::string> fees;
    std::optional<double> notional;

    // serve
    std::string host;
    std::optional<int> port;
    std::string static_dir;
};

// Raised for inputs that parse as text but break a syntax rule (grid, range).
struct UsageError {
    std::string message;
};

std::string percent(double fraction, int decimals = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f%%", decimals, fraction * 100.0);
    return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

PriceRange range_or_full(const std::string& text) {
    if (text.empty()) return {};
    const auto r = api::parse_range_spec(text);
    if (!r) throw UsageError{"--range must look like lo:hi (hi may be inf): " + text};
    return *r;
}

RangePosition make_position(const Options& o) {
    RangePosition position;
    position.liquidity = o.liquidity;
    position.range = range_or_full(o.range);
    position.convention = o.convention == "quadratic" ? Convention::real_price_quadratic
                                                     : Convention::virtual_price;
    return validate(position);
}

void write_table_text(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) out << "  ";
            out << std::setw(static_cast<int>(width[c])) << cells[c];
        }
        out << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
}

void cmd_il(const Options& o, Format fmt, std::ostream& out) {
    if (o.ratio) {
        if (!o.range.empty()) throw UsageError{"--ratio applies to full-range positions; use --p0/--p1 with --range"};
        const auto point = il_point(*o.ratio);
        switch (fmt) {
            case Format::json:
                out << json{{"R", *o.ratio},
                            {"epsilon_paper", point.epsilon_paper},
                            {"epsilon_common", point.epsilon_common},
                            {"is_limit", point.is_limit}}
                           .dump(2)
                    << '\n';
                break;
            case Format::csv:
                out << "ratio,epsilon_paper,epsilon_common\n"
                    << format_double(*o.ratio) << ',' << format_double(point.epsilon_paper) << ','
                    << format_double(point.epsilon_common) << '\n';
                break;
            case Format::text:
                out << "paper   " << percent(point.epsilon_paper) << '\n'
                    << "common  " << percent(point.epsilon_common) << '\n';
                break;
        }
        return;
    }
    if (!o.p1) throw UsageError{"il needs --ratio, or --p1 (with optional --p0 and --range)"};
    const auto position = make_position(o);
    const Price p0(o.p0);
    const Price p1(*o.p1);
    const double eps = il_generic(position, p0, p1);
    switch (fmt) {
        case Format::json:
            out << json{{"P0", o.p0}, {"P1", *o.p1}, {"epsilon", eps}}.dump(2) << '\n';
            break;
        case Format::csv:
            out << "p0,p1,epsilon\n"
                << format_double(o.p0) << ',' << format_double(*o.p1) << ',' << format_double(eps) << '\n';
            break;
        case Format::text:
            out << "il  " << percent(eps) << '\n';
            break;
    }
}

void cmd_profile(const Options& o, Format fmt, std::ostream& out) {
    const auto position = make_position(o);
    const Price p0(o.p0);
    std::vector<double> grid;
    if (o.grid.empty()) {
        grid = default_grid(p0);
    } else {
        const auto spec = api::parse_grid_spec(o.grid);
        if (!spec) throw UsageError{"--grid must look like log:lo:hi:n or lin:lo:hi:n: " + o.grid};
        grid = spec->log ? log_grid(spec->lo, spec->hi, spec->n) : lin_grid(spec->lo, spec->hi, spec->n);
    }
    const auto curve = risk_profile(position, p0, grid);
    switch (fmt) {
        case Format::csv:
            write_csv(out, curve);
            break;
        case Format::json: {
            json samples = json::array();
            for (const auto& s : curve.samples) {
                samples.push_back({{"price", s.price},
                                   {"v_lp", s.v_lp},
                                   {"v_hold", s.v_hold},
                                   {"epsilon", s.epsilon},
                                   {"epsilon_common", s.epsilon_common}});
            }
            out << json{{"P0", curve.p0}, {"V0", curve.v0}, {"samples", samples}}.dump(2) << '\n';
            break;
        }
        case Format::text: {
            std::vector<std::vector<std::string>> rows;
            for (const auto& s : curve.samples) {
                rows.push_back({format_double(s.price), format_double(s.v_lp), format_double(s.v_hold),
                                percent(s.epsilon), percent(s.epsilon_common)});
            }
            write_table_text(out, {"price", "v_lp", "v_hold", "il", "il_common"}, rows);
            break;
        }
    }
}

void cmd_table(const Options& o, Format fmt, std::ostream& out) {
    ILTable t;
    if (!o.preset.empty()) {
        if (o.preset != "table1") throw UsageError{"unknown preset: " + o.preset};
        t = table1_preset();
    } else {
        if (o.ranges.empty() || o.moves.empty()) throw UsageError{"table needs --preset, or --ranges and --moves"};
        std::vector<PriceRange> ranges;
        for (const auto& r : o.ranges) ranges.push_back(range_or_full(r));
        t = il_table(ranges, o.moves, Price(o.p0), o.liquidity);
    }
    switch (fmt) {
        case Format::text:
            write_text(out, t);
            break;
        case Format::csv:
            write_csv(out, t);
            break;
        case Format::json: {
            json rows = json::array();
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                rows.push_back({{"label", range_label(t.rows[r])},
                                {"p_low", t.rows[r].low},
                                {"p_high", number_or_null(t.rows[r].high)},
                                {"cells", t.cells[r]}});
            }
            out << json{{"moves", t.moves}, {"rows", rows}}.dump(2) << '\n';
            break;
        }
    }
}

void cmd_depth(const Options& o, Format fmt, std::ostream& out) {
    const auto side = o.side == "bids" ? BookSide::bids : BookSide::asks;
    LadderOptions options;
    options.fee_adjusted = o.fee_adjusted;
    options.fee_rate = o.fee;
    DepthLadder ladder;
    if (o.x || o.y) {
        if (!o.x || !o.y) throw UsageError{"--x and --y go together"};
        ladder = depth_ladder(make_pool(*o.x, *o.y, o.fee), o.bucket, o.levels, side, options);
    } else {
        auto position = make_position(o);
        position.convention = Convention::virtual_price;
        ladder = depth_ladder(position, Price(o.p0), o.bucket, o.levels, side, options);
    }
    switch (fmt) {
        case Format::csv:
            write_csv(out, ladder);
            break;
        case Format::json: {
            json levels = json::array();
            for (const auto& l : ladder.levels) {
                levels.push_back({{"level", l.level},
                                  {"avg_price", l.avg_price},
                                  {"marginal_price", l.marginal_price},
                                  {"quantity", l.quantity},
                                  {"cost", l.cost},
                                  {"cumulative_cost", l.cumulative_cost}});
            }
            out << json{{"side", o.side}, {"bucket", ladder.bucket}, {"levels", levels}}.dump(2) << '\n';
            break;
        }
        case Format::text: {
            std::vector<std::vector<std::string>> rows;
            for (const auto& l : ladder.levels) {
                rows.push_back({std::to_string(l.level), format_double(l.avg_price),
                                format_double(l.marginal_price), format_double(l.quantity),
                                format_double(l.cost), format_double(l.cumulative_cost)});
            }
            write_table_text(out, {"level", "avg_price", "marginal_price", "quantity", "cost", "cumulative_cost"},
                             rows);
            break;
        }
    }
}

PricePath load_path(const Options& o) {
    const int sources = !o.path_file.empty() + !o.prices.empty() + (o.gbm_steps > 0);
    if (sources != 1) throw UsageError{"simulate needs exactly one of --path, --prices, --gbm-steps"};
    if (!o.path_file.empty()) {
        std::ifstream in(o.path_file);
        if (!in) throw UsageError{"cannot open " + o.path_file};
        return read_path_csv(in);
    }
    if (!o.prices.empty()) return PricePath::from_prices(o.prices);
    return gbm_path(o.p0, o.sigma, o.drift, o.gbm_steps, o.seed);
}

void cmd_simulate(const Options& o, Format fmt, std::ostream& out) {
    if (o.convention != "virtual") throw UsageError{"simulate supports --convention virtual only"};
    const auto position = make_position(o);
    const auto path = load_path(o);
    const auto arb = o.arb == "fee_band" ? ArbModel::fee_band : ArbModel::full_convergence;
    const auto r = simulate(position, path, FeeTier(o.fee), arb);
    switch (fmt) {
        case Format::csv:
            write_trace_csv(out, r);
            break;
        case Format::json:
            out << json{{"steps", path.size()},
                        {"P0", r.p0},
                        {"P_final", r.p_final},
                        {"V0", r.v0},
                        {"final_x", r.final_reserves.x},
                        {"final_y", r.final_reserves.y},
                        {"fees_collected", r.fees_collected},
                        {"pnl_total", r.pnl_total},
                        {"pnl_hold", r.pnl_hold},
                        {"pnl_il", r.pnl_il},
                        {"pnl_fees", r.pnl_fees}}
                       .dump(2)
                << '\n';
            break;
        case Format::text:
            out << "steps      " << path.size() << '\n'
                << "P0         " << format_double(r.p0) << '\n'
                << "P_final    " << format_double(r.p_final) << '\n'
                << "final x    " << format_double(r.final_reserves.x) << '\n'
                << "final y    " << format_double(r.final_reserves.y) << '\n'
                << "fees (X)   " << format_double(r.fees_collected) << '\n'
                << "pnl total  " << percent(r.pnl_total, 2) << '\n'
                << "  hold     " << percent(r.pnl_hold, 2) << '\n'
                << "  il       " << percent(r.pnl_il, 2) << '\n'
                << "  fees     " << percent(r.pnl_fees, 2) << '\n';
            break;
    }
}

void cmd_cost(const Options& o, Format fmt, std::ostream& out) {
    CostLedger ledger = onboarding_preset();
    if (!o.fees.empty()) {
        ledger.steps.clear();
        for (const auto& item : o.fees) {
            // "label=amount" or a bare amount
            const auto eq = item.rfind('=');
            const auto label = eq == std::string::npos ? "step " + std::to_string(ledger.steps.size() + 1)
                                                       : item.substr(0, eq);
            const auto amount = eq == std::string::npos ? item : item.substr(eq + 1);
            const auto cents = parse_cents(amount);
            if (!cents) throw UsageError{"fee amounts must be decimals with at most two places: " + amount};
            ledger.steps.push_back({label, *cents});
        }
    }
    validate(ledger);
    std::vector<double> notionals;
    if (o.notional) {
        notionals.push_back(*o.notional);
    } else {
        notionals = {kTransferredNotional, kImpliedNotional};
    }
    for (const double n : notionals) format_share(ledger.total_cents(), n);  // validates
    switch (fmt) {
        case Format::text:
            write_text(out, ledger, notionals);
            break;
        case Format::csv:
            write_csv(out, ledger);
            break;
        case Format::json: {
            json steps = json::array();
            for (const auto& s : ledger.steps) steps.push_back({{"label", s.label}, {"usd", format_cents(s.cents)}});
            json shares = json::array();
            for (const double n : notionals) {
                shares.push_back({{"notional", n}, {"share", format_share(ledger.total_cents(), n)}});
            }
            out << json{{"steps", steps}, {"total", format_cents(ledger.total_cents())}, {"shares", shares}}.dump(2)
                << '\n';
            break;
        }
    }
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
    auto options = api::options_from_env();
    if (!o.host.empty()) options.host = o.host;
    if (o.port) options.port = *o.port;
    options.static_dir = o.static_dir;

    // Route SIGINT/SIGTERM to sigwait below; the server thread inherits the mask.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    const api::Service service;
    api::Server server(service, options);
    const int port = server.bind();
    if (port < 0) {
        err << "error: cannot bind " << options.host << ':' << options.port
            << (options.static_dir.empty() ? "" : " or mount " + options.static_dir) << '\n';
        pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
        return kExitComputation;
    }
    out << "listening on http://" << options.host << ':' << port << std::endl;
    std::thread worker([&] { server.listen_after_bind(); });
    int received = 0;
    sigwait(&signals, &received);
    server.stop();
    worker.join();
    pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
    return kExitOk;
}

void add_position_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--range", o.range, "price range lo:hi (hi may be inf); omit for full range");
    cmd->add_option("--liquidity", o.liquidity, "liquidity L = sqrt(K)")->capture_default_str();
    cmd->add_option("--p0", o.p0, "initial price")->capture_default_str();
    cmd->add_option("--convention", o.convention, "reserve convention")
        ->check(CLI::IsMember({"virtual", "quadratic"}))
        ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Constant-product AMM analytics: impermanent loss, ranges, depth, simulation", "ammkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", o.out_file, "write output to FILE instead of stdout");

    auto* il = app.add_subcommand("il", "impermanent loss for a price ratio or a price move");
    il->add_option("--ratio", o.ratio, "price ratio R = P1/P0 (0 gives the limit value)");
    il->add_option("--p1", o.p1, "final price");
    add_position_options(il, o);

    auto* profile = app.add_subcommand("profile", "LP value versus buy-and-hold over a price grid");
    add_position_options(profile, o);
    profile->add_option("--grid", o.grid, "log:lo:hi:n or lin:lo:hi:n (default log over P0/100..100 P0)");

    auto* table = app.add_subcommand("table", "IL grid over ranges and price moves");
    table->add_option("--preset", o.preset, "built-in table")->check(CLI::IsMember({"table1"}));
    table->add_option("--ranges", o.ranges, "ranges relative to P0, e.g. 0:inf,0.5:1.5")->delimiter(',');
    table->add_option("--moves", o.moves, "relative moves, e.g. -0.2,0,0.2")->delimiter(',');
    table->add_option("--p0", o.p0, "reference price")->capture_default_str();
    table->add_option("--liquidity", o.liquidity, "liquidity L")->capture_default_str();

    auto* depth = app.add_subcommand("depth", "order-book ladder equivalent to the curve");
    add_position_options(depth, o);
    depth->add_option("--x", o.x, "pool reserve of X (v2 pool)");
    depth->add_option("--y", o.y, "pool reserve of Y (v2 pool)");
    depth->add_option("--bucket", o.bucket, "Y per level")->required();
    depth->add_option("--levels", o.levels, "number of levels")->required();
    depth->add_option("--side", o.side, "book side")->check(CLI::IsMember({"asks", "bids"}))->capture_default_str();
    depth->add_option("--fee", o.fee, "fee rate")->capture_default_str();
    depth->add_flag("--fee-adjusted", o.fee_adjusted, "include the fee in level prices");

    auto* sim = app.add_subcommand("simulate", "replay a price path against a position");
    add_position_options(sim, o);
    sim->add_option("--path", o.path_file, "CSV of timestamp,price");
    sim->add_option("--prices", o.prices, "inline prices, e.g. 1,0.5")->delimiter(',');
    sim->add_option("--gbm-steps", o.gbm_steps, "generate a seeded GBM path of this many steps");
    sim->add_option("--sigma", o.sigma, "GBM volatility per step")->capture_default_str();
    sim->add_option("--drift", o.drift, "GBM drift per step")->capture_default_str();
    sim->add_option("--seed", o.seed, "GBM seed")->capture_default_str();
    sim->add_option("--fee", o.fee, "fee tier, e.g. 0.0005, 0.003, 0.01")->capture_default_str();
    sim->add_option("--arb", o.arb, "arbitrage model")
        ->check(CLI::IsMember({"full_convergence", "fee_band"}))
        ->capture_default_str();

    auto* cost = app.add_subcommand("cost", "onboarding cost ledger");
    cost->add_option("--fees", o.fees, "fees as label=amount or amount, comma separated")->delimiter(',');
    cost->add_option("--notional", o.notional, "portfolio value for the percentage line");

    auto* serve = app.add_subcommand("serve", "run the HTTP API (AMMKIT_HOST / AMMKIT_PORT override defaults)");
    serve->add_option("--host", o.host, "bind address (default 127.0.0.1)");
    serve->add_option("--port", o.port, "port (default 8787, 0 picks a free one)");
    serve->add_option("--static", o.static_dir, "directory served at / (the UI bundle)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const auto fmt = o.format == "csv" ? Format::csv : o.format == "json" ? Format::json : Format::text;
    std::ofstream file;
    if (!o.out_file.empty() && !serve->parsed()) {
        file.open(o.out_file);
        if (!file) {
            err << "error: cannot write " << o.out_file << '\n';
            return kExitComputation;
        }
    }
    std::ostream& sink = file.is_open() ? static_cast<std::ostream&>(file) : out;

    try {
        // Render into a buffer so a failing command leaves no partial output.
        std::ostringstream buffer;
        if (il->parsed()) cmd_il(o, fmt, buffer);
        if (profile->parsed()) cmd_profile(o, fmt, buffer);
        if (table->parsed()) cmd_table(o, fmt, buffer);
        if (depth->parsed()) cmd_depth(o, fmt, buffer);
        if (sim->parsed()) cmd_simulate(o, fmt, buffer);
        if (cost->parsed()) cmd_cost(o, fmt, buffer);
        if (serve->parsed()) return cmd_serve(o, out, err);
        sink << buffer.str();
        sink.flush();
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.message << '\n' << "run with --help for usage\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]";
        if (!e.field().empty()) err << " (" << e.field() << ")";
        err << ": " << e.what() << '\n';
        return kExitComputation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
}

}  // namespace ammkit::cli
