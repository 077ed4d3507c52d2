#pragma once

#include <filesystem>
#include <memory>
#include <string>

namespace binx {

struct ServerOptions {
    // Custom methods and palettes persist here; empty keeps them in memory.
    std::filesystem::path data_dir;
    // Directory holding manifest.json of a sample to preload; may be empty.
    std::filesystem::path sample_dir;
    std::size_t max_body_bytes = 50u * 1024u * 1024u;
    std::string cors_origin = "*";
};

/// JSON API over the engine. All routes live under /api plus /healthz.
class Server {
public:
    explicit Server(ServerOptions options);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds without blocking; port 0 picks a free port. Returns the port or -1.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after bind().
    bool listen();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace binx
