#include "trotter/service.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include <httplib.h>

#include "trotter/combinatorics.hpp"
#include "trotter/errors.hpp"
#include "trotter/experiments.hpp"

#ifndef TROTTER_VERSION
#define TROTTER_VERSION "0.0.0"
#endif

namespace trotter {

namespace {

using nlohmann::json;

struct CloudRequest {
    MatrixTuple matrices;
    int n;
    RunMode mode;
    std::optional<double> threshold;
};

// Validation failure carrying an optional point-count estimate.
class RequestError : public Error {
public:
    RequestError(std::string reason, const std::string& what, std::optional<std::string> count = std::nullopt)
        : Error(what), reason_(std::move(reason)), count_(std::move(count)) {}
    const char* reason() const noexcept override { return reason_.c_str(); }
    const std::optional<std::string>& count() const noexcept { return count_; }

private:
    std::string reason_;
    std::optional<std::string> count_;
};

ServiceResponse error_response(int status, const std::string& reason, const std::string& message,
                               const std::optional<std::string>& count = std::nullopt) {
    json body = {{"error", reason}, {"message", message}};
    if (count) body["count"] = *count;
    return {status, render_json(body), 0.0};
}

std::string opaque_id() {
    static thread_local std::mt19937_64 rng(std::random_device{}());
    std::ostringstream s;
    s << std::hex << rng();
    return s.str();
}

CloudRequest parse_request(const std::string& text, bool with_threshold) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw RequestError("parse", std::string("request body is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw RequestError("parse", "request body must be a JSON object");
    if (!j.contains("matrices") || !j["matrices"].is_array())
        throw RequestError("shape", "\"matrices\" must be an array of matrices");
    const auto& mats = j["matrices"];
    if (mats.size() < 2 || mats.size() > 26) throw RequestError("shape", "need between 2 and 26 matrices");
    std::vector<ComplexMatrix> parsed;
    for (const auto& m : mats) {
        ComplexMatrix cm = matrix_from_json(m);
        if (cm.dim() > kServiceMaxDim)
            throw RequestError("shape", "matrix dimension " + std::to_string(cm.dim()) + " exceeds " +
                                            std::to_string(kServiceMaxDim));
        parsed.push_back(std::move(cm));
    }
    MatrixTuple tuple(std::move(parsed));

    if (!j.contains("n") || !j["n"].is_number_integer()) throw RequestError("domain", "\"n\" must be an integer");
    const long n = j["n"].get<long>();
    if (n < 1 || n > kServiceMaxN)
        throw RequestError("domain", "\"n\" must be in [1, " + std::to_string(kServiceMaxN) + "]");

    RunMode mode;
    const std::string mode_name = j.value("mode", std::string("exhaustive"));
    std::uint64_t seed = 0;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw RequestError("domain", "\"seed\" must be a non-negative integer");
        seed = j["seed"].get<std::uint64_t>();
    }
    const BigCount total = multinomial(std::vector<long>(tuple.size(), n));
    if (mode_name == "exhaustive") {
        if (total > kServiceMaxPoints)
            throw RequestError("cap",
                               "exhaustive run would produce " + total.str() + " points (limit " +
                                   std::to_string(kServiceMaxPoints) + "); use sample mode or a smaller n",
                               total.str());
        mode = RunMode::exhaustive();
        mode.seed = seed;
    } else if (mode_name == "sample") {
        if (!j.contains("count") || !j["count"].is_number_unsigned())
            throw RequestError("domain", "sample mode needs a positive integer \"count\"");
        const auto count = j["count"].get<std::uint64_t>();
        if (count < 1) throw RequestError("domain", "sample mode needs a positive integer \"count\"");
        if (count > kServiceMaxPoints)
            throw RequestError("cap", "sample count exceeds " + std::to_string(kServiceMaxPoints),
                               std::to_string(count));
        mode = RunMode::sample(count, seed);
    } else {
        throw RequestError("domain", "\"mode\" must be \"exhaustive\" or \"sample\"");
    }

    std::optional<double> threshold;
    if (with_threshold && j.contains("threshold") && !j["threshold"].is_null()) {
        if (!j["threshold"].is_number()) throw RequestError("domain", "\"threshold\" must be a number");
        const double t = j["threshold"].get<double>();
        if (!std::isfinite(t) || t < 0.0) throw RequestError("domain", "\"threshold\" must be finite and >= 0");
        threshold = t;
    }
    return {std::move(tuple), static_cast<int>(n), mode, threshold};
}

template <typename Fn>
ServiceResponse guarded(const std::string& body, bool with_threshold, Fn&& compute) {
    try {
        const CloudRequest req = parse_request(body, with_threshold);
        const auto start = std::chrono::steady_clock::now();
        json result = compute(req);
        const auto stop = std::chrono::steady_clock::now();
        ServiceResponse r{200, render_json(result),
                          std::chrono::duration<double, std::milli>(stop - start).count()};
        return r;
    } catch (const RequestError& e) {
        return error_response(400, e.reason(), e.what(), e.count());
    } catch (const NumericalError& e) {
        const std::string id = opaque_id();
        std::cerr << "internal error " << id << ": " << e.what() << '\n';
        return {500, render_json({{"error", "internal"}, {"id", id}}), 0.0};
    } catch (const Error& e) {
        return error_response(400, e.reason(), e.what());
    } catch (const std::exception& e) {
        const std::string id = opaque_id();
        std::cerr << "internal error " << id << ": " << e.what() << '\n';
        return {500, render_json({{"error", "internal"}, {"id", id}}), 0.0};
    }
}

} // namespace

std::string version_string() { return TROTTER_VERSION; }

std::string render_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

ServiceResponse handle_health() {
    return {200, render_json({{"status", "ok"}, {"version", version_string()}}), 0.0};
}

ServiceResponse handle_cloud(const std::string& body, const ServiceOptions& options) {
    return guarded(body, false, [&](const CloudRequest& req) {
        ExperimentOptions opts;
        opts.threads = options.threads;
        return cloud_to_json(generate_point_cloud(req.matrices, req.n, req.mode, opts));
    });
}

ServiceResponse handle_concentration(const std::string& body, const ServiceOptions& options) {
    return guarded(body, true, [&](const CloudRequest& req) {
        ExperimentOptions opts;
        opts.threads = options.threads;
        return report_to_json(concentration_experiment(req.matrices, req.n, req.mode, req.threshold, opts));
    });
}

struct Server::Impl {
    httplib::Server http;
    ServiceOptions options;
};

namespace {

void send(httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_header("X-Compute-Time-Ms", std::to_string(r.compute_ms));
    res.set_content(r.body, "application/json");
}

} // namespace

Server::Server(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
    impl_->options = options;
    auto& http = impl_->http;
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
    http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    http.Get("/api/health", [](const httplib::Request&, httplib::Response& res) { send(res, handle_health()); });
    http.Post("/api/cloud", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_cloud(req.body, impl_->options));
    });
    http.Post("/api/concentration", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_concentration(req.body, impl_->options));
    });
}

Server::~Server() = default;

int Server::bind(const std::string& host, int port) {
    if (port == 0) {
        const int bound = impl_->http.bind_to_any_port(host);
        if (bound < 0) throw Error("could not bind to " + host);
        return bound;
    }
    if (!impl_->http.bind_to_port(host, port)) throw Error("could not bind to " + host + ":" + std::to_string(port));
    return port;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() { impl_->http.stop(); }

int port_from_env() {
    const char* env = std::getenv("TROTTER_PORT");
    if (env == nullptr) return kDefaultPort;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 65535) return kDefaultPort;
    return static_cast<int>(v);
}

} // namespace trotter
