#pragma once

// Text syntaxes shared by the CLI and the JSON service.
//   grid:  log:lo:hi:n | lin:lo:hi:n
//   range: lo:hi, with "inf" accepted for hi

#include <cstddef>
#include <optional>
#include <string_view>

#include "ammkit/concentrated.hpp"

namespace ammkit::api {

struct GridSpec {
    bool log = true;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;
};

std::optional<GridSpec> parse_grid_spec(std::string_view text);

/// Bounds are not validated here; make_range does that.
std::optional<PriceRange> parse_range_spec(std::string_view text);

std::optional<double> parse_number(std::string_view text);

}  // namespace ammkit::api
