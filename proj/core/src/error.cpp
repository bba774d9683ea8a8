#include "ammkit/error.hpp"

namespace ammkit {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::degenerate_pool: return "degenerate_pool";
        case ErrorCode::invalid_parameter: return "invalid_parameter";
        case ErrorCode::insufficient_liquidity: return "insufficient_liquidity";
        case ErrorCode::stale_quote: return "stale_quote";
        case ErrorCode::invalid_range: return "invalid_range";
        case ErrorCode::inconsistent_state: return "inconsistent_state";
        case ErrorCode::numerical_failure: return "numerical_failure";
        case ErrorCode::out_of_convention: return "out_of_convention";
    }
    return "unknown";
}

}  // namespace ammkit
