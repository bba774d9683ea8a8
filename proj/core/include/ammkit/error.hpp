#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ammkit {

enum class ErrorCode {
    degenerate_pool,
    invalid_parameter,
    insufficient_liquidity,
    stale_quote,
    invalid_range,
    inconsistent_state,
    numerical_failure,
    out_of_convention,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Typed failure raised by every engine operation. Inputs are validated
/// eagerly and never clamped; `field()` names the offending input when known.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::string field = {})
        : std::runtime_error(std::move(message)), code_(code), field_(std::move(field)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }

private:
    ErrorCode code_;
    std::string field_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorCode code, std::string message, std::string field = {}) {
    throw Error(code, std::move(message), std::move(field));
}

}  // namespace detail

}  // namespace ammkit
