#include "binx/server.hpp"

#include <httplib.h>

#include <atomic>
#include <fstream>
#include <map>
#include <shared_mutex>

#include "binx/api.hpp"
#include "binx/error.hpp"

namespace binx {

namespace {

constexpr const char* kJson = "application/json";

struct DatasetEntry {
    Dataset dataset;
    std::string default_attribute;
};

class Registry {
public:
    void put(const std::string& id, std::shared_ptr<const DatasetEntry> entry) {
        std::unique_lock lock(mutex_);
        entries_[id] = std::move(entry);
    }
    std::shared_ptr<const DatasetEntry> get(const std::string& id) const {
        std::shared_lock lock(mutex_);
        const auto it = entries_.find(id);
        if (it == entries_.end()) throw Error(ErrorCode::UnknownDataset, "no dataset '" + id + "'", id);
        return it->second;
    }
    std::vector<std::string> ids() const {
        std::shared_lock lock(mutex_);
        std::vector<std::string> out;
        for (const auto& [id, _] : entries_) out.push_back(id);
        return out;
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<std::string, std::shared_ptr<const DatasetEntry>> entries_;
};

nlohmann::json parse_body(const httplib::Request& req) {
    try {
        auto j = nlohmann::json::parse(req.body);
        if (!j.is_object()) throw Error(ErrorCode::InvalidParameter, "request body must be a JSON object");
        return j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidParameter, std::string("malformed JSON body: ") + e.what());
    }
}

std::string required_string(const nlohmann::json& j, const char* name) {
    const auto it = j.find(name);
    if (it == j.end() || !it->is_string())
        throw Error(ErrorCode::InvalidParameter, std::string("\"") + name + "\" must be a string");
    return it->get<std::string>();
}

std::optional<std::string> optional_string(const nlohmann::json& j, const char* name) {
    const auto it = j.find(name);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw Error(ErrorCode::InvalidParameter, std::string("\"") + name + "\" must be a string");
    return it->get<std::string>();
}

int int_field(const nlohmann::json& j, const char* name, int fallback) {
    const auto it = j.find(name);
    if (it == j.end() || it->is_null()) return fallback;
    if (!it->is_number_integer()) throw Error(ErrorCode::InvalidBinCount, std::string(name) + " must be an integer");
    return it->get<int>();
}

std::string content_type(ExportTarget t) {
    switch (t) {
        case ExportTarget::LegendSvg: return "image/svg+xml";
        case ExportTarget::CodeStub: return "text/plain";
        default: return kJson;
    }
}

std::string form_field(const httplib::Request& req, const std::string& name, std::string fallback = {}) {
    return req.has_file(name) ? req.get_file_value(name).content : fallback;
}

}  // namespace

struct Server::Impl {
    ServerOptions options;
    httplib::Server http;
    Registry registry;
    CustomMethodStore customs;
    PaletteCatalog palettes;
    std::atomic<int> next_dataset{1};

    explicit Impl(ServerOptions o)
        : options(std::move(o)),
          customs(options.data_dir.empty() ? CustomMethodStore() : CustomMethodStore(options.data_dir / "custom_methods.json")),
          palettes(options.data_dir.empty() ? PaletteCatalog() : PaletteCatalog(options.data_dir / "palettes.json")) {
        if (!options.sample_dir.empty()) load_sample();
        routes();
    }

    void load_sample() {
        const auto manifest_path = options.sample_dir / "manifest.json";
        if (!std::filesystem::exists(manifest_path)) return;
        const auto m = nlohmann::json::parse(read_file(manifest_path.string()));
        const auto geo = read_file((options.sample_dir / m.at("geometry").get<std::string>()).string());
        auto d = api::load_dataset(read_file((options.sample_dir / m.at("attributes").get<std::string>()).string()),
                                   m.at("idColumn").get<std::string>(), geo, m.value("idProperty", ""));
        const auto attr = api::resolve_attribute(d, m.value("valueColumn", std::string()));
        registry.put(m.value("datasetId", "sample"), std::make_shared<DatasetEntry>(DatasetEntry{std::move(d), attr}));
    }

    // Resolves {datasetId, attribute} from a request body.
    std::pair<std::shared_ptr<const DatasetEntry>, FeatureSeries> series_of(const nlohmann::json& body) const {
        auto entry = registry.get(required_string(body, "datasetId"));
        auto attr = optional_string(body, "attribute");
        const auto name = attr ? api::resolve_attribute(entry->dataset, attr) : entry->default_attribute;
        auto series = entry->dataset.series(name);
        return {std::move(entry), std::move(series)};
    }

    static void send(httplib::Response& res, const ojson& doc, int status = 200) {
        res.status = status;
        res.set_content(dump(doc), kJson);
    }

    // Wraps a handler so engine and JSON errors become ApiError bodies.
    template <class F>
    auto guarded(F f) {
        return [f](const httplib::Request& req, httplib::Response& res) {
            try {
                f(req, res);
            } catch (const Error& e) {
                send(res, error_json(e.code(), e.message(), e.details()), api::http_status(e.code()));
            } catch (const nlohmann::json::exception& e) {
                send(res, error_json(ErrorCode::InvalidParameter, e.what()), 400);
            } catch (const std::exception& e) {
                send(res, error_json(ErrorCode::IoError, e.what()), 500);
            }
        };
    }

    void routes() {
        http.set_payload_max_length(options.max_body_bytes);
        http.set_default_headers({{"Access-Control-Allow-Origin", options.cors_origin},
                                  {"Access-Control-Allow-Headers", "Content-Type"},
                                  {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"}});
        http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

        http.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { send(res, {{"status", "ok"}}); });

        http.Get("/api/methods", guarded([this](const httplib::Request&, httplib::Response& res) {
                     send(res, api::methods(&customs));
                 }));

        http.Get("/api/datasets", guarded([this](const httplib::Request&, httplib::Response& res) {
                     send(res, {{"datasets", registry.ids()}});
                 }));

        http.Post("/api/datasets", guarded([this](const httplib::Request& req, httplib::Response& res) {
                      if (!req.is_multipart_form_data() || !req.has_file("attributes"))
                          throw Error(ErrorCode::InvalidParameter, "expected multipart form with an 'attributes' file");
                      const auto csv = req.get_file_value("attributes").content;
                      std::optional<std::string> geo;
                      if (req.has_file("geometry")) geo = req.get_file_value("geometry").content;
                      auto d = api::load_dataset(csv, form_field(req, "idColumn", "id"),
                                                 geo ? std::optional<std::string_view>(*geo) : std::nullopt,
                                                 form_field(req, "idProperty"));
                      const auto value = form_field(req, "valueColumn");
                      const auto attr =
                          api::resolve_attribute(d, value.empty() ? std::nullopt : std::optional<std::string>(value));
                      auto id = form_field(req, "datasetId");
                      if (id.empty()) id = "ds-" + std::to_string(next_dataset++);
                      auto entry = std::make_shared<DatasetEntry>(DatasetEntry{std::move(d), attr});
                      const auto summary = api::dataset_summary(id, entry->dataset, attr);
                      registry.put(id, std::move(entry));
                      send(res, summary, 201);
                  }));

        http.Post("/api/profile", guarded([this](const httplib::Request& req, httplib::Response& res) {
                      const auto body = parse_body(req);
                      const auto [entry, series] = series_of(body);
                      send(res, api::profile(series, int_field(body, "histogramBins", kDefaultHistogramBins),
                                             body.value("showMissing", true)));
                  }));

        http.Post("/api/bin", guarded([this](const httplib::Request& req, httplib::Response& res) {
                      const auto body = parse_body(req);
                      const auto [entry, series] = series_of(body);
                      send(res, api::bin(series, method_spec_from_json(body.at("spec")), &customs));
                  }));

        http.Post("/api/bin/all", guarded([this](const httplib::Request& req, httplib::Response& res) {
                      const auto body = parse_body(req);
                      const auto [entry, series] = series_of(body);
                      send(res, api::bin_all(series, int_field(body, "binCount", kDefaultBinCount), &customs));
                  }));

        http.Post("/api/compare", guarded([this](const httplib::Request& req, httplib::Response& res) {
                      const auto body = parse_body(req);
                      const auto [entry, series] = series_of(body);
                      std::vector<MethodSpec> specs;
                      for (const auto& s : body.at("specs")) specs.push_back(method_spec_from_json(s));
                      send(res, api::compare(series, specs, &customs));
                  }));

        http.Post("/api/combine", guarded([this](const httplib::Request& req, httplib::Response& res) {
                      const auto body = parse_body(req);
                      const auto [entry, series] = series_of(body);
                      std::vector<std::string> members;
                      if (body.contains("members")) members = body["members"].get<std::vector<std::string>>();
                      send(res, api::combine(series, members, int_field(body, "k", 6), &customs));
                  }));

        http.Post("/api/paint", guarded([this](const httplib::Request& req, httplib::Response& res) {
                      const auto body = parse_body(req);
                      const auto [entry, series] = series_of(body);
                      std::vector<PinConstraint> pins;
                      for (const auto& p : body.value("constraints", nlohmann::json::array()))
                          pins.push_back(pin_from_json(p));
                      send(res, api::paint(body.at("extents").get<std::vector<double>>(), pins, series));
                  }));

        http.Post("/api/export", guarded([this](const httplib::Request& req, httplib::Response& res) {
                      const auto body = parse_body(req);
                      const auto [entry, series] = series_of(body);
                      const auto target = parse_export_target(required_string(body, "target"));
                      const auto result = run_method(series, method_spec_from_json(body.at("spec")), &customs);
                      ExportOptions o;
                      if (const auto name = optional_string(body, "palette")) o.palette = palettes.get(*name);
                      o.reversed = body.value("reversed", false);
                      o.series = &series;
                      if (entry->dataset.geometry()) o.geometry = &*entry->dataset.geometry();
                      o.geometry_url = optional_string(body, "geometryUrl").value_or("");
                      res.set_content(export_result(result, target, o), content_type(target));
                  }));

        http.Get("/api/custom-methods", guarded([this](const httplib::Request&, httplib::Response& res) {
                     ojson list = ojson::array();
                     for (const auto& m : customs.list()) list.push_back(to_json(m));
                     send(res, {{"customMethods", std::move(list)}});
                 }));

        http.Post("/api/custom-methods", guarded([this](const httplib::Request& req, httplib::Response& res) {
                      const auto m = custom_method_from_json(parse_body(req));
                      send(res, to_json(customs.save(m.name, m.extents, m.provenance)), 201);
                  }));

        http.Delete(R"(/api/custom-methods/([^/]+))",
                    guarded([this](const httplib::Request& req, httplib::Response& res) {
                        const std::string name = req.matches[1];
                        if (!customs.remove(name))
                            throw Error(ErrorCode::UnknownMethod, "no custom method named '" + name + "'", name);
                        res.status = 204;
                    }));

        http.Get("/api/palettes", guarded([this](const httplib::Request& req, httplib::Response& res) {
                     const auto flag = [&](const char* name) {
                         return req.has_param(name) && req.get_param_value(name) != "0" &&
                                req.get_param_value(name) != "false";
                     };
                     PaletteFilter f{flag("web"), flag("colorblind"), flag("print"), std::nullopt};
                     if (req.has_param("scaleType")) f.scale_type = parse_scale_type(req.get_param_value("scaleType"));
                     ojson list = ojson::array();
                     for (const auto& p : palettes.list(f)) list.push_back(to_json(p));
                     send(res, {{"palettes", std::move(list)}});
                 }));

        http.Get(R"(/api/palettes/([^/]+)/colors)",
                 guarded([this](const httplib::Request& req, httplib::Response& res) {
                     const auto p = palettes.get(std::string(req.matches[1]));
                     int k = kDefaultBinCount;
                     if (req.has_param("k")) {
                         try {
                             k = std::stoi(req.get_param_value("k"));
                         } catch (const std::exception&) {
                             throw Error(ErrorCode::InvalidBinCount, "k must be an integer");
                         }
                     }
                     const bool reversed = req.has_param("reversed") && req.get_param_value("reversed") != "0" &&
                                           req.get_param_value("reversed") != "false";
                     send(res, {{"name", p.name()},
                                {"colors", p.colors(k, reversed)},
                                {"nodataColor", p.nodata_color()}});
                 }));

        http.Post("/api/palettes", guarded([this](const httplib::Request& req, httplib::Response& res) {
                      const auto body = parse_body(req);
                      const auto flags = body.value("flags", nlohmann::json::object());
                      const auto type = body.contains("scaleType")
                                            ? parse_scale_type(required_string(body, "scaleType"))
                                            : ScaleType::Categorical;
                      const auto p = palettes.add_custom(required_string(body, "name"),
                                                         body.at("colors").get<std::vector<std::string>>(),
                                                         {flags.value("web", false), flags.value("colorblind", false),
                                                          flags.value("print", false)},
                                                         type);
                      send(res, to_json(p), 201);
                  }));
    }
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
    if (port == 0) return impl_->http.bind_to_any_port(host);
    return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::listen() { return impl_->http.listen_after_bind(); }

void Server::stop() {
    if (impl_) impl_->http.stop();
}

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace binx
