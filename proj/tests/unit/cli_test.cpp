#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ammkit/cli/cli.hpp"
#include "ammkit/cli/cost_ledger.hpp"
#include "ammkit/impermanent_loss.hpp"
#include "support.hpp"

namespace ammkit::cli {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

TEST(Cli, IlRatio) {
    const auto r = invoke({"il", "--ratio", "0.5"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("-4.2893%"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("-5.7191%"), std::string::npos) << r.out;
}

TEST(Cli, TablePresetTextAndCsv) {
    const auto text = invoke({"table", "--preset", "table1"});
    EXPECT_EQ(text.code, kExitOk);
    EXPECT_NE(text.out.find("-1.91%"), std::string::npos);
    EXPECT_NE(text.out.find("[75%, 125%]"), std::string::npos);

    const auto csv = invoke({"table", "--preset", "table1", "--format", "csv"});
    std::ostringstream expected;
    write_csv(expected, table1_preset());
    EXPECT_EQ(csv.out, expected.str());
}

TEST(Cli, ProfileCsvEqualsLibrary) {
    const auto r = invoke({"profile", "--range", "0.8:1.2", "--p0", "1", "--grid", "log:0.01:10:501", "--format", "csv"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    RangePosition position;
    position.range = {0.8, 1.2};
    const auto curve = risk_profile(position, Price(1.0), log_grid(0.01, 10, 501));
    std::ostringstream expected;
    write_csv(expected, curve);
    EXPECT_EQ(r.out, expected.str());
}

TEST(Cli, GlobalFlagsBeforeOrAfterSubcommand) {
    const auto before = invoke({"--format", "csv", "il", "--ratio", "2"});
    const auto after = invoke({"il", "--ratio", "2", "--format", "csv"});
    EXPECT_EQ(before.code, kExitOk);
    EXPECT_EQ(before.out, after.out);
}

TEST(Cli, OutFile) {
    const auto path = std::filesystem::temp_directory_path() / "ammkit_cli_out_test.csv";
    const auto r = invoke({"--out", path.string(), "table", "--preset", "table1", "--format", "csv"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "range_low,range_high,move,epsilon");
    std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(invoke({}).code, kExitUsage);
    EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(invoke({"il", "--bogus"}).code, kExitUsage);
    EXPECT_EQ(invoke({"il", "--ratio", "abc"}).code, kExitUsage);
    EXPECT_EQ(invoke({"profile", "--grid", "cube:1:2:3"}).code, kExitUsage);
    EXPECT_EQ(invoke({"--format", "xml", "il", "--ratio", "2"}).code, kExitUsage);
    EXPECT_EQ(invoke({"il", "--ratio", "-1"}).code, kExitComputation);
    EXPECT_EQ(invoke({"il", "--range", "2:1", "--p1", "1.5"}).code, kExitComputation);
    EXPECT_EQ(invoke({"depth", "--x", "100", "--y", "100", "--bucket", "10", "--levels", "10"}).code,
              kExitComputation);
    const auto help = invoke({"--help"});
    EXPECT_EQ(help.code, kExitOk);
    EXPECT_NE(help.out.find("simulate"), std::string::npos);
}

TEST(Cli, UsageErrorsGoToStderr) {
    const auto r = invoke({"frobnicate"});
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, SimulateHalving) {
    const auto r = invoke({"simulate", "--prices", "1,0.5", "--fee", "0"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("hold     -25.00%"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("il       -4.29%"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("fees     0.00%"), std::string::npos) << r.out;
}

TEST(Cli, SimulateGbmIsSeeded) {
    const auto a = invoke({"simulate", "--gbm-steps", "200", "--seed", "9", "--format", "json"});
    const auto b = invoke({"simulate", "--gbm-steps", "200", "--seed", "9", "--format", "json"});
    EXPECT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(invoke({"simulate", "--gbm-steps", "2", "--prices", "1,2"}).code, kExitUsage);
}

TEST(Cli, DepthCsv) {
    const auto r = invoke({"depth", "--x", "100", "--y", "100", "--bucket", "10", "--levels", "2", "--fee", "0",
                           "--format", "csv"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "level,avg_price,marginal_price,quantity,cumulative_cost");
}

TEST(CostLedger, PresetTotal) {
    const auto ledger = onboarding_preset();
    EXPECT_EQ(ledger.steps.size(), 8u);
    EXPECT_EQ(ledger.total_cents(), 3507);
    EXPECT_EQ(format_cents(ledger.total_cents()), "35.07");
    EXPECT_EQ(format_share(3507, 2800), "1.25%");
    EXPECT_EQ(format_share(3507, 2000), "1.75%");
}

TEST(CostLedger, ParseCents) {
    EXPECT_EQ(parse_cents("13.26"), 1326);
    EXPECT_EQ(parse_cents("8"), 800);
    EXPECT_EQ(parse_cents("8.0"), 800);
    EXPECT_EQ(parse_cents("0.07"), 7);
    EXPECT_EQ(parse_cents("-1.5"), -150);
    EXPECT_FALSE(parse_cents("1.234"));
    EXPECT_FALSE(parse_cents("1."));
    EXPECT_FALSE(parse_cents("abc"));
    EXPECT_FALSE(parse_cents(""));
}

TEST(CostLedger, Validation) {
    using ammkit::testing::error_of;
    EXPECT_EQ(error_of([] { validate(CostLedger{}); }), ErrorCode::invalid_parameter);
    EXPECT_EQ(error_of([] { validate(CostLedger{{{"refund", -100}}}); }), ErrorCode::invalid_parameter);
}

TEST(Cli, CostCommand) {
    const auto r = invoke({"cost"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("35.07"), std::string::npos);
    EXPECT_NE(r.out.find("1.75%"), std::string::npos);
    EXPECT_NE(r.out.find("1.25%"), std::string::npos);

    const auto one = invoke({"cost", "--notional", "2800"});
    EXPECT_NE(one.out.find("1.25%"), std::string::npos);
    EXPECT_EQ(one.out.find("1.75%"), std::string::npos);

    EXPECT_EQ(invoke({"cost", "--fees", "gas=-1"}).code, kExitComputation);
    EXPECT_EQ(invoke({"cost", "--fees", "gas=1.234"}).code, kExitUsage);
    const auto custom = invoke({"cost", "--fees", "a=1.10,b=2.20", "--format", "csv"});
    EXPECT_NE(custom.out.find("total,total,3.30"), std::string::npos) << custom.out;

    // short labels next to a long share line
    const auto narrow = invoke({"cost", "--fees", "gas=3.20", "--notional", "1000"});
    EXPECT_EQ(narrow.code, kExitOk) << narrow.err;
    EXPECT_NE(narrow.out.find("share of 1000  0.32%"), std::string::npos) << narrow.out;
}

}  // namespace
}  // namespace ammkit::cli
