// binx-serve: HTTP JSON API over the binning engine.

#include <CLI11.hpp>

#include <csignal>
#include <iostream>

#include "binx/server.hpp"

namespace {
binx::Server* g_server = nullptr;
void on_signal(int) {
    if (g_server) g_server->stop();
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binx-serve: HTTP API for choropleth data binning"};
    std::string host = "127.0.0.1";
    int port = 8080;
    binx::ServerOptions options;
    std::string data_dir, sample_dir = BINX_SAMPLE_DIR;
    app.add_option("--host", host)->capture_default_str();
    app.add_option("--port", port)->capture_default_str();
    app.add_option("--data-dir", data_dir, "persist custom methods and palettes here");
    app.add_option("--sample-dir", sample_dir, "sample to preload as dataset 'sample' (empty to skip)")
        ->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    options.data_dir = data_dir;
    options.sample_dir = sample_dir;
    try {
        binx::Server server(options);
        const int bound = server.bind(host, port);
        if (bound < 0) {
            std::cerr << "binx-serve: cannot bind " << host << ':' << port << '\n';
            return 1;
        }
        g_server = &server;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        std::cerr << "listening on http://" << host << ':' << bound << '\n';
        server.listen();
        g_server = nullptr;
    } catch (const std::exception& e) {
        std::cerr << "binx-serve: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
