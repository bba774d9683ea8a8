#pragma once

#include <memory>
#include <string>

#include "ammkit/api/service.hpp"

namespace ammkit::api {

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8787;               // 0 picks a free port
    std::string static_dir;        // optional UI bundle served at /
    std::string cors_origin = "*";
};

/// Default bind address, overridden by AMMKIT_HOST / AMMKIT_PORT.
ServerOptions options_from_env();

/// HTTP/1.1 front end for a Service. `listen` blocks until `stop` is called
/// from another thread or a signal handler.
class Server {
public:
    Server(const Service& service, ServerOptions options);
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds the socket; returns the bound port, or -1 on failure.
    int bind();
    /// Serves on a bound socket until stopped.
    bool listen_after_bind();
    void stop();
    bool is_running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ammkit::api
