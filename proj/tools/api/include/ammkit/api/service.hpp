#pragma once

// Stateless JSON facade over the engine. Transport-free: `handle` maps a
// (method, path, body) triple to a status code and a JSON body, and the HTTP
// server in server.hpp only forwards to it.
//
// Endpoints (all under /api/v1):
//   POST il, profile, depth, table, simulate
//   GET  health
//
// Status codes: 200 ok, 400 malformed body, 404/405 routing, 413 path too
// long, 422 parameter violation (echoes the offending field), 500 internal.

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>

namespace ammkit::api {

inline constexpr std::string_view kEngineVersion = "0.1.0";
inline constexpr std::string_view kApiPrefix = "/api/v1/";

struct HttpResponse {
    int status = 200;
    std::string body;
};

struct ServiceConfig {
    std::size_t max_path_steps = 100000;
    std::size_t max_grid_points = 100000;
};

class Service {
public:
    explicit Service(ServiceConfig config = {});

    HttpResponse handle(std::string_view method, std::string_view path, std::string_view body) const;

    HttpResponse il(std::string_view body) const;
    HttpResponse profile(std::string_view body) const;
    HttpResponse depth(std::string_view body) const;
    HttpResponse table(std::string_view body) const;
    HttpResponse simulate(std::string_view body) const;
    HttpResponse health() const;

    const ServiceConfig& config() const noexcept { return config_; }

private:
    ServiceConfig config_;
    std::chrono::steady_clock::time_point started_;
};

}  // namespace ammkit::api
