#pragma once

#include <httplib.h>
#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "binx/server.hpp"

namespace harness {

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Fresh path under a per-process scratch directory; any old file is removed.
inline std::filesystem::path scratch(const std::string& stem) {
    auto dir = std::filesystem::temp_directory_path() / ("binx-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    auto p = dir / stem;
    std::filesystem::remove_all(p);
    return p;
}

inline std::string fixture(const std::string& name) { return std::string(BINX_TEST_DIR) + "/fixtures/" + name; }

inline std::string quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return out + "'";
}

struct CliRun {
    int status = -1;
    std::string err;
};

/// Runs the binx executable; stdout goes to `out` if given, stderr is captured.
inline CliRun run_cli(const std::vector<std::string>& args, const std::filesystem::path& out = {}) {
    const auto err_file = scratch("stderr.txt");
    std::string cmd = quote(BINX_CLI);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += out.empty() ? " >/dev/null" : " >" + quote(out.string());
    cmd += " 2>" + quote(err_file.string());
    const int raw = std::system(cmd.c_str());
    CliRun r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.err = slurp(err_file);
    return r;
}

/// In-process service on an ephemeral port.
class LiveServer {
public:
    explicit LiveServer(binx::ServerOptions options = {}) : server_(std::move(options)) {
        port_ = server_.bind("127.0.0.1", 0);
        thread_ = std::thread([this] { server_.listen(); });
        server_.wait_until_ready();
    }
    ~LiveServer() {
        server_.stop();
        thread_.join();
    }
    LiveServer(const LiveServer&) = delete;
    LiveServer& operator=(const LiveServer&) = delete;

    int port() const { return port_; }
    httplib::Client client() const {
        httplib::Client c("127.0.0.1", port_);
        c.set_read_timeout(60);
        return c;
    }
    httplib::Result post(const std::string& path, const nlohmann::json& body) const {
        return client().Post(path, body.dump(), "application/json");
    }

    /// Uploads a CSV/GeoJSON pair from tests/fixtures as `id`.
    httplib::Result upload(const std::string& id, const std::string& csv, const std::string& geo,
                           const std::string& id_column, const std::string& value_column) const {
        httplib::MultipartFormDataItems items = {
            {"attributes", slurp(fixture(csv)), csv, "text/csv"},
            {"idColumn", id_column, "", ""},
            {"valueColumn", value_column, "", ""},
            {"datasetId", id, "", ""},
        };
        if (!geo.empty()) items.push_back({"geometry", slurp(fixture(geo)), geo, "application/geo+json"});
        return client().Post("/api/datasets", items);
    }

private:
    binx::Server server_;
    int port_ = -1;
    std::thread thread_;
};

}  // namespace harness
