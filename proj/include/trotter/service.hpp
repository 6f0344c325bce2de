#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <json.hpp>

namespace trotter {

inline constexpr int kServiceMaxDim = 4;
inline constexpr int kServiceMaxN = 10;
inline constexpr std::uint64_t kServiceMaxPoints = 200000;
inline constexpr int kDefaultPort = 8080;

std::string version_string();

struct ServiceResponse {
    int status = 200;
    std::string body;
    /// Wall time spent computing, reported in a header rather than the body so
    /// bodies stay deterministic.
    double compute_ms = 0.0;
};

struct ServiceOptions {
    unsigned threads = 0;
};

/// Request handlers, independent of the HTTP transport.
ServiceResponse handle_health();
ServiceResponse handle_cloud(const std::string& body, const ServiceOptions& options = {});
ServiceResponse handle_concentration(const std::string& body, const ServiceOptions& options = {});

/// Serialisation shared with the CLI so both front ends emit identical bytes.
std::string render_json(const nlohmann::json& j);

class Server {
public:
    explicit Server(ServiceOptions options = {});
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds to host:port (port 0 picks a free one) and returns the bound port.
    int bind(const std::string& host, int port);
    /// Blocks serving requests until stop() is called.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Port from TROTTER_PORT if set and valid, otherwise the default.
int port_from_env();

} // namespace trotter
