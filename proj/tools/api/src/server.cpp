#include "ammkit/api/server.hpp"

#include <cstdlib>
#include <string>

#include <httplib.h>

namespace ammkit::api {

ServerOptions options_from_env() {
    ServerOptions options;
    if (const char* host = std::getenv("AMMKIT_HOST"); host && *host) options.host = host;
    if (const char* port = std::getenv("AMMKIT_PORT"); port && *port) {
        char* end = nullptr;
        const long value = std::strtol(port, &end, 10);
        if (*end == '\0' && value >= 0 && value <= 65535) options.port = static_cast<int>(value);
    }
    return options;
}

struct Server::Impl {
    const Service& service;
    ServerOptions options;
    httplib::Server http;

    Impl(const Service& s, ServerOptions o) : service(s), options(std::move(o)) {
        http.set_default_headers({
            {"Access-Control-Allow-Origin", options.cors_origin},
            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
            {"Access-Control-Allow-Headers", "Content-Type"},
        });
        http.set_payload_max_length(64u << 20);

        const auto forward = [this](const httplib::Request& req, httplib::Response& res) {
            const auto out = service.handle(req.method, req.path, req.body);
            res.status = out.status;
            res.set_content(out.body, "application/json");
        };
        const std::string pattern = R"(/api/v1/.*)";
        http.Get(pattern, forward);
        http.Post(pattern, forward);
        http.Put(pattern, forward);
        http.Delete(pattern, forward);
        http.Patch(pattern, forward);
        http.Options(pattern, [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

        if (!options.static_dir.empty()) mounted = http.set_mount_point("/", options.static_dir);
    }

    bool mounted = true;
};

Server::Server(const Service& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}

Server::~Server() { stop(); }

int Server::bind() {
    auto& o = impl_->options;
    if (!impl_->mounted) return -1;
    if (o.port == 0) {
        const int port = impl_->http.bind_to_any_port(o.host);
        if (port > 0) o.port = port;
        return port > 0 ? port : -1;
    }
    return impl_->http.bind_to_port(o.host, o.port) ? o.port : -1;
}

bool Server::listen_after_bind() { return impl_->http.listen_after_bind(); }

void Server::stop() {
    if (impl_) impl_->http.stop();
}

bool Server::is_running() const { return impl_->http.is_running(); }

}  // namespace ammkit::api
