#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

namespace hairsynth {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    /// 0 binds an ephemeral port.
    int port = 8080;
    std::size_t max_pixels = 16'000'000;
    /// Directory served at "/" (editor assets); empty disables it.
    std::string static_dir;
    int render_threads = 1;
};

/// Resolves the listening port: explicit flag, then $HAIRSYNTH_PORT, then 8080.
int resolve_port(std::optional<int> flag);

/// Local HTTP facade over the pipeline with in-memory sessions.
///
///   POST /sessions                       body: PNG/PPM -> 201 {"id","revision":0,...}
///   PUT  /sessions/{id}/scene            If-Match: <revision>, body: scene JSON
///   POST /sessions/{id}/render?stage=    -> PNG, X-Scene-Revision header
///   GET  /sessions/{id}/result?stage=    last render of that stage
///   GET  /kernel/preview?size=&angle_deg=&curvature=&thickness=&sigma=
///   GET  /healthz
///
/// Errors are JSON {"error": ..., "field": ...}.
class Service {
public:
    explicit Service(ServiceConfig config);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Binds the socket and returns the bound port. Throws on failure.
    int bind();
    /// Serves until stop(). Calls bind() first if needed.
    void listen();
    /// Binds and serves on a background thread; returns the bound port.
    int start();
    void stop();

    int port() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace hairsynth
