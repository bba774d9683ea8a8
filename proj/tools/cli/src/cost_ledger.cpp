#include "ammkit/cli/cost_ledger.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <utility>

#include "ammkit/error.hpp"

namespace ammkit::cli {

std::int64_t CostLedger::total_cents() const {
    std::int64_t total = 0;
    for (const auto& s : steps) total += s.cents;
    return total;
}

std::optional<std::int64_t> parse_cents(std::string_view text) {
    bool negative = false;
    if (!text.empty() && text.front() == '-') {
        negative = true;
        text.remove_prefix(1);
    }
    if (text.empty()) return std::nullopt;
    const auto dot = text.find('.');
    const auto whole = text.substr(0, dot);
    const auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() || whole.size() > 12 || frac.size() > 2) return std::nullopt;
    if (dot != std::string_view::npos && frac.empty()) return std::nullopt;
    const auto digits = [](std::string_view s) {
        return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!digits(whole) || !digits(frac)) return std::nullopt;
    std::int64_t cents = 0;
    for (const char c : whole) cents = cents * 10 + (c - '0');
    cents *= 100;
    if (frac.size() >= 1) cents += (frac[0] - '0') * 10;
    if (frac.size() == 2) cents += frac[1] - '0';
    return negative ? -cents : cents;
}

std::string format_cents(std::int64_t cents) {
    const bool negative = cents < 0;
    const auto magnitude = negative ? -cents : cents;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%lld.%02lld", negative ? "-" : "",
                  static_cast<long long>(magnitude / 100), static_cast<long long>(magnitude % 100));
    return buf;
}

void validate(const CostLedger& ledger) {
    if (ledger.steps.empty()) detail::fail(ErrorCode::invalid_parameter, "cost ledger is empty", "fees");
    for (const auto& s : ledger.steps) {
        if (s.cents < 0) {
            detail::fail(ErrorCode::invalid_parameter, "fee for '" + s.label + "' is negative", "fees");
        }
    }
}

CostLedger onboarding_preset() {
    return {{
        {"buy ETH on exchange", 119},
        {"withdraw ETH to wallet", 698},
        {"buy USDC on exchange", 119},
        {"withdraw USDC to wallet", 800},
        {"wrap ETH to WETH", 117},
        {"approve WETH", 141},
        {"approve USDC", 187},
        {"mint position", 1326},
    }};
}

std::string format_share(std::int64_t cents, double notional) {
    if (!(notional > 0.0)) detail::fail(ErrorCode::invalid_parameter, "notional must be positive", "notional");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", static_cast<double>(cents) / notional);
    return buf;
}

void write_text(std::ostream& out, const CostLedger& ledger, const std::vector<double>& notionals) {
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& s : ledger.steps) rows.emplace_back(s.label, format_cents(s.cents));
    const auto total = ledger.total_cents();
    rows.emplace_back("total", format_cents(total));
    for (const double n : notionals) {
        char label[64];
        std::snprintf(label, sizeof label, "share of %g", n);
        rows.emplace_back(label, format_share(total, n));
    }
    std::size_t label_width = 0;
    std::size_t amount_width = 0;
    for (const auto& [label, amount] : rows) {
        label_width = std::max(label_width, label.size());
        amount_width = std::max(amount_width, amount.size());
    }
    for (const auto& [label, amount] : rows) {
        out << label << std::string(label_width - label.size() + 2 + amount_width - amount.size(), ' ')
            << amount << '\n';
    }
}

void write_csv(std::ostream& out, const CostLedger& ledger) {
    out << "step,label,usd\n";
    for (std::size_t i = 0; i < ledger.steps.size(); ++i) {
        out << i + 1 << ',' << ledger.steps[i].label << ',' << format_cents(ledger.steps[i].cents) << '\n';
    }
    out << "total,total," << format_cents(ledger.total_cents()) << '\n';
}

}  // namespace ammkit::cli
