#pragma once

// Itemized onboarding costs for opening a liquidity position. Amounts are
// kept in integer cents so totals are exact.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ammkit::cli {

struct CostStep {
    std::string label;
    std::int64_t cents = 0;
};

struct CostLedger {
    std::vector<CostStep> steps;
    std::int64_t total_cents() const;
};

/// "13.26" -> 1326. Accepts at most two decimals; rejects signs other than a
/// leading '-', which yields a negative amount for validation to catch.
std::optional<std::int64_t> parse_cents(std::string_view text);

std::string format_cents(std::int64_t cents);

/// Throws InvalidParameter on an empty ledger or a negative fee.
void validate(const CostLedger& ledger);

/// The eight fees paid while bridging funds, wrapping ETH and minting an
/// ETH/USDC position: 1.19, 6.98, 1.19, 8.00, 1.17, 1.41, 1.87, 13.26.
CostLedger onboarding_preset();

/// Portfolio notionals for the percentage line when none is given.
inline constexpr double kTransferredNotional = 2000.0;
inline constexpr double kImpliedNotional = 2800.0;

/// total / notional as a percentage, two decimals.
std::string format_share(std::int64_t cents, double notional);

void write_text(std::ostream& out, const CostLedger& ledger, const std::vector<double>& notionals);
void write_csv(std::ostream& out, const CostLedger& ledger);

}  // namespace ammkit::cli
