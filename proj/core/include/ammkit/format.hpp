#pragma once

#include <string>

namespace ammkit {

/// Shortest decimal that parses back to the same binary64 value.
/// Non-finite values render as "inf", "-inf" or "nan".
std::string format_double(double value);

}  // namespace ammkit
