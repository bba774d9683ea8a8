#include "ammkit/api/parse.hpp"

#include <charconv>
#include <string>
#include <vector>

namespace ammkit::api {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
    if (text == "inf" || text == "infinity") return kInfinity;
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) return std::nullopt;
    return value;
}

std::optional<GridSpec> parse_grid_spec(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 4) return std::nullopt;
    GridSpec spec;
    if (parts[0] == "log") {
        spec.log = true;
    } else if (parts[0] == "lin") {
        spec.log = false;
    } else {
        return std::nullopt;
    }
    const auto lo = parse_number(parts[1]);
    const auto hi = parse_number(parts[2]);
    if (!lo || !hi) return std::nullopt;
    std::size_t n = 0;
    const auto* end = parts[3].data() + parts[3].size();
    const auto [ptr, ec] = std::from_chars(parts[3].data(), end, n);
    if (ec != std::errc{} || ptr != end || parts[3].empty()) return std::nullopt;
    spec.lo = *lo;
    spec.hi = *hi;
    spec.n = n;
    return spec;
}

std::optional<PriceRange> parse_range_spec(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) return std::nullopt;
    const auto lo = parse_number(parts[0]);
    const auto hi = parse_number(parts[1]);
    if (!lo || !hi) return std::nullopt;
    return PriceRange{*lo, *hi};
}

}  // namespace ammkit::api
