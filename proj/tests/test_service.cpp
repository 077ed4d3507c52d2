#include "harness.hpp"
#include "test_util.hpp"

#include "binx/reclassify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

binx::ServerOptions sample_options(const fs::path& data_dir = {}) {
    binx::ServerOptions o;
    o.sample_dir = fs::path(BINX_DATA_DIR) / "samples";
    o.data_dir = data_dir;
    return o;
}

json body_of(const httplib::Result& r) {
    REQUIRE(r);
    return json::parse(r->body);
}

std::string error_code(const httplib::Result& r) { return body_of(r).at("code").get<std::string>(); }

}  // namespace

TEST_CASE("health, methods and the preloaded sample") {
    harness::LiveServer server(sample_options());
    auto c = server.client();
    const auto health = c.Get("/healthz");
    REQUIRE(health);
    CHECK(health->status == 200);
    CHECK(health->get_header_value("Access-Control-Allow-Origin") == "*");

    const auto methods = body_of(c.Get("/api/methods")).at("methods");
    CHECK(methods.size() == 16u);
    CHECK(body_of(c.Get("/api/datasets")).at("datasets") == json::array({"sample"}));

    const auto opt = c.Options("/api/bin");
    REQUIRE(opt);
    CHECK(opt->status == 204);

    const auto manifest = json::parse(harness::slurp(fs::path(BINX_DATA_DIR) / "samples" / "manifest.json"));
    const auto p = body_of(server.post("/api/profile", {{"datasetId", "sample"}}));
    CHECK(p.at("attribute") == manifest.at("valueColumn"));
    CHECK(p.at("validCount").get<int>() == manifest.at("matched").get<int>() - manifest.at("naRows").get<int>());
}

TEST_CASE("Scott County consensus row over the service") {
    harness::LiveServer server(sample_options());
    const auto r = server.post("/api/combine", {{"datasetId", "sample"}, {"k", 6}});
    REQUIRE(r);
    REQUIRE(r->status == 200);
    const auto doc = json::parse(r->body);
    const auto& row = doc.at("matrix").at("features").at("20171");
    CHECK(row.at("bins") == json::array({4, 6, 2, 5, 5, 4, 4, 5}));
    CHECK(row.at("majorityBin") == 4);
    CHECK(row.at("majorityFrequency") == 3);
}

TEST_CASE("error kinds map to status codes") {
    harness::LiveServer server(sample_options());
    auto c = server.client();

    auto r = server.post("/api/bin", {{"datasetId", "sample"}, {"spec", {{"method", "nope"}}}});
    CHECK(r->status == 400);
    CHECK(error_code(r) == "UnknownMethod");

    r = server.post("/api/bin", {{"datasetId", "missing"}, {"spec", {{"method", "quantile"}}}});
    CHECK(r->status == 400);
    CHECK(error_code(r) == "UnknownDataset");

    r = c.Post("/api/bin", "{not json", "application/json");
    CHECK(r->status == 400);

    r = server.post("/api/bin", {{"datasetId", "sample"}, {"spec", {{"method", "quantile"}, {"binCount", 0}}}});
    CHECK(r->status == 400);

    r = server.post("/api/paint", {{"datasetId", "sample"},
                                   {"extents", {60, 70, 80, 95}},
                                   {"constraints", {{{"value", 75}, {"targetBin", 1}}, {{"value", 65}, {"targetBin", 3}}}}});
    CHECK(r->status == 422);
    CHECK(error_code(r) == "InfeasibleConstraints");

    r = server.post("/api/export", {{"datasetId", "sample"}, {"target", "pdf"}, {"spec", {{"method", "quantile"}}}});
    CHECK(r->status == 400);
    CHECK(error_code(r) == "UnsupportedTarget");
}

TEST_CASE("paint responses carry the warning verbatim") {
    harness::LiveServer server(sample_options());
    const auto r = server.post("/api/paint", {{"datasetId", "sample"},
                                              {"extents", {60, 70, 80, 95}},
                                              {"constraints", {{{"featureId", "37113"}, {"targetBin", 1}}}}});
    REQUIRE(r->status == 200);
    const auto doc = json::parse(r->body);
    CHECK(doc.at("warning") == std::string(binx::misuse_warning()));
    CHECK(doc.at("extents")[1].get<double>() > 78.12);
}

TEST_CASE("uploads report the join") {
    harness::LiveServer server;
    auto r = server.upload("", "parity.csv", "parity.geojson", "geoid", "rate");
    REQUIRE(r);
    CHECK(r->status == 201);
    auto doc = json::parse(r->body);
    CHECK(doc.at("datasetId") == "ds-1");
    CHECK(doc.at("joinReport").at("matched") == 40);
    CHECK(doc.at("profile").at("missingCount") == 1);

    r = server.upload("bad", "parity.csv", "", "no_such_column", "rate");
    CHECK(r->status == 400);

    httplib::MultipartFormDataItems nothing = {{"idColumn", "geoid", "", ""}};
    r = server.client().Post("/api/datasets", nothing);
    CHECK(r->status == 400);
}

TEST_CASE("custom methods persist and conflict on duplicate names") {
    const auto dir = testutil::temp_file("service-store");
    const json method = {{"name", "teach"},
                         {"extents", {60, 72, 78, 95}},
                         {"provenance", {{"seedMethodId", "quantile"}, {"constraintLog", json::array()}}}};
    {
        harness::LiveServer server(sample_options(dir));
        auto r = server.post("/api/custom-methods", method);
        CHECK(r->status == 201);
        r = server.post("/api/custom-methods", method);
        CHECK(r->status == 409);
        CHECK(error_code(r) == "DuplicateName");
    }
    harness::LiveServer server(sample_options(dir));
    auto c = server.client();
    CHECK(body_of(c.Get("/api/custom-methods")).at("customMethods").size() == 1u);
    CHECK(body_of(c.Get("/api/methods")).at("methods").size() == 17u);

    const auto bin = server.post("/api/bin", {{"datasetId", "sample"}, {"spec", {{"method", "custom:teach"}}}});
    REQUIRE(bin->status == 200);
    CHECK(json::parse(bin->body).at("extents") == json::array({60, 72, 78, 95}));

    auto del = c.Delete("/api/custom-methods/teach");
    CHECK(del->status == 204);
    del = c.Delete("/api/custom-methods/teach");
    CHECK(del->status == 400);
    CHECK(body_of(c.Get("/api/custom-methods")).at("customMethods").empty());
}

TEST_CASE("palette endpoints") {
    harness::LiveServer server(sample_options(testutil::temp_file("service-palettes")));
    auto c = server.client();
    const auto all = body_of(c.Get("/api/palettes")).at("palettes");
    const auto cb = body_of(c.Get("/api/palettes?colorblind=1")).at("palettes");
    CHECK(cb.size() < all.size());
    for (const auto& p : cb) CHECK(p.at("flags").at("colorblind") == true);
    for (const auto& p : body_of(c.Get("/api/palettes?scaleType=diverging")).at("palettes"))
        CHECK(p.at("scaleType") == "diverging");

    const auto blues = body_of(c.Get("/api/palettes/Blues/colors?k=5"));
    CHECK(blues.at("colors") == json::array({"#eff3ff", "#bdd7e7", "#6baed6", "#3182bd", "#08519c"}));
    const auto rev = body_of(c.Get("/api/palettes/Blues/colors?k=5&reversed=1"));
    CHECK(rev.at("colors")[0] == "#08519c");
    CHECK(c.Get("/api/palettes/Blues/colors?k=40")->status == 400);
    CHECK(c.Get("/api/palettes/NoSuch/colors")->status == 400);

    auto r = server.post("/api/palettes", {{"name", "brand"}, {"colors", {"#112233", "#445566", "#778899"}},
                                           {"scaleType", "sequential_multi_hue"}});
    CHECK(r->status == 201);
    CHECK(body_of(c.Get("/api/palettes/brand/colors?k=3")).at("colors").size() == 3u);
    r = server.post("/api/palettes", {{"name", "broken"}, {"colors", {"red"}}});
    CHECK(r->status == 400);
}

TEST_CASE("concurrent requests see consistent results") {
    harness::LiveServer server(sample_options());
    const json req = {{"datasetId", "sample"}, {"spec", {{"method", "ckmeans"}, {"binCount", 6}}}};
    const auto expected = server.post("/api/bin", req)->body;
    std::vector<std::thread> workers;
    std::atomic<int> same{0};
    for (int i = 0; i < 8; ++i)
        workers.emplace_back([&] {
            const auto r = server.post("/api/bin", req);
            if (r && r->body == expected) ++same;
        });
    for (auto& t : workers) t.join();
    CHECK(same == 8);
}
