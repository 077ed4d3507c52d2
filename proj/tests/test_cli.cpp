#include "harness.hpp"
#include "test_util.hpp"

#include "binx/export.hpp"
#include "binx/reclassify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> with_input(std::vector<std::string> args) {
    args.insert(args.end(), {"--data", harness::fixture("parity.csv"), "--geo", harness::fixture("parity.geojson"),
                             "--id-col", "geoid", "--value-col", "rate"});
    return args;
}

json run_json(const std::vector<std::string>& args, const std::string& stem) {
    const auto out = testutil::temp_file(stem);
    const auto r = harness::run_cli(with_input(args), out);
    CAPTURE(r.err);
    REQUIRE(r.status == 0);
    return json::parse(harness::slurp(out));
}

}  // namespace

TEST_CASE("exit codes follow the error kind") {
    CHECK(harness::run_cli(with_input({"bin", "--method", "jenks_caspall"})).status == 2);
    CHECK(harness::run_cli(with_input({"bin", "--bins", "0"})).status == 2);
    CHECK(harness::run_cli(with_input({"bin", "--no-such-flag"})).status == 2);
    CHECK(harness::run_cli({"bin", "--data", "/nonexistent/x.csv"}).status == 2);
    CHECK(harness::run_cli({"bin", "--data", harness::fixture("parity.csv"), "--id-col", "geoid", "--value-col", "label"})
              .status == 2);
    CHECK(harness::run_cli({"bin", "--data", harness::fixture("parity.csv"), "--id-col", "geoid", "--value-col", "nope"})
              .status == 2);
    CHECK(harness::run_cli({}).status == 2);

    const auto infeasible = harness::run_cli(
        with_input({"paint", "--breaks", "10,30,50,70,100", "--pin", "60:1", "--pin", "20:3"}));
    CHECK(infeasible.status == 3);
    CHECK(infeasible.err.find("InfeasibleConstraints") != std::string::npos);
    CHECK(harness::run_cli(with_input({"paint", "--breaks", "10,50,100", "--pin", "abc"})).status == 2);
}

TEST_CASE("fixed-count methods warn when --bins is given") {
    const auto warned = harness::run_cli(with_input({"bin", "--method", "percentile", "--bins", "4"}));
    CHECK(warned.status == 0);
    CHECK(warned.err.find("percentile always uses 6 bins") != std::string::npos);
    const auto quiet = harness::run_cli(with_input({"bin", "--method", "percentile"}));
    CHECK(quiet.err.empty());
    const auto r = run_json({"bin", "--method", "box_plot", "--bins", "3"}, "box.json");
    CHECK(r.at("extents").size() <= 7u);
}

TEST_CASE("paint always prints the misuse warning") {
    const std::string warning(binx::misuse_warning());
    const auto ok = harness::run_cli(with_input({"paint", "--breaks", "10,50,100", "--pin", "60:1"}));
    CHECK(ok.status == 0);
    CHECK(ok.err.find(warning) != std::string::npos);
    const auto doc = run_json({"paint", "--breaks", "10,50,100", "--pin", "60:1"}, "paint.json");
    CHECK(doc.at("warning") == warning);
    CHECK(doc.at("extents")[1].get<double>() > 60.0);
    const auto bad = harness::run_cli(with_input({"paint", "--breaks", "10,50,100", "--pin", "60:1", "--pin", "20:2"}));
    CHECK(bad.err.find(warning) != std::string::npos);
}

TEST_CASE("exported breaks import back to the same result") {
    const auto dir = testutil::temp_file("roundtrip");
    REQUIRE(harness::run_cli(with_input({"export", "--method", "natural_breaks", "--bins", "5", "--out", dir.string()}))
                .status == 0);
    for (const char* f : {"breaks.json", "mapspec.vl.json", "legend.svg"}) CHECK(fs::exists(dir / f));
    CHECK_FALSE(fs::exists(dir / "rebin.cpp"));

    const auto original = run_json({"bin", "--method", "natural_breaks", "--bins", "5"}, "nb.json");
    const auto reimported =
        run_json({"bin", "--method", "manual_interval", "--breaks", "@" + (dir / "breaks.json").string()}, "mi.json");
    CHECK(reimported.at("extents") == original.at("extents"));
    CHECK(reimported.at("assignments") == original.at("assignments"));
    CHECK(reimported.at("binSizes") == original.at("binSizes"));
}

TEST_CASE("bin --all writes one file per built-in method") {
    const auto dir = testutil::temp_file("all");
    REQUIRE(harness::run_cli(with_input({"bin", "--all", "--bins", "4", "--out", dir.string()})).status == 0);
    int files = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        ++files;
        const auto doc = json::parse(harness::slurp(entry.path()));
        CHECK((doc.contains("extents") || doc.contains("error")));
    }
    CHECK(files == 16);
}

TEST_CASE("config files supply defaults and flags override them") {
    const auto cfg = testutil::temp_file("cfg.json");
    std::ofstream(cfg) << R"({"method": "quantile", "bins": 3, "id-col": "geoid", "value-col": "rate"})";
    const auto from_cfg = run_json({"bin", "--config", cfg.string()}, "cfg-out.json");
    CHECK(from_cfg.at("method").at("method") == "quantile");
    CHECK(from_cfg.at("extents").size() == 4u);
    const auto overridden = run_json({"bin", "--config", cfg.string(), "--bins", "4"}, "cfg-out2.json");
    CHECK(overridden.at("extents").size() == 5u);

    std::ofstream(cfg) << "not json";
    CHECK(harness::run_cli(with_input({"bin", "--config", cfg.string()})).status == 2);
}

TEST_CASE("paint --save-as stores a reusable custom method") {
    const auto store = testutil::temp_file("store.json");
    REQUIRE(harness::run_cli(with_input({"paint", "--method", "quantile", "--bins", "4", "--pin", "id:01003:2",
                                         "--save-as", "teaching", "--store", store.string()}))
                .status == 0);
    const auto saved = json::parse(harness::slurp(store));
    REQUIRE(saved.at("methods").size() == 1);
    CHECK(saved["methods"][0]["provenance"]["seedMethodId"] == "quantile");

    const auto reused = run_json({"bin", "--method", "custom:teaching", "--store", store.string()}, "reuse.json");
    CHECK(reused.at("extents") == saved["methods"][0]["extents"]);
    CHECK(reused.at("assignments").at("01003") == 2);

    CHECK(harness::run_cli(with_input({"paint", "--method", "quantile", "--pin", "50:1", "--save-as", "teaching",
                                       "--store", store.string()}))
              .status == 2);
    CHECK(harness::run_cli(with_input({"paint", "--method", "quantile", "--pin", "50:1", "--save-as", "x"})).status == 2);
}

TEST_CASE("profile and compare formats") {
    const auto table = testutil::temp_file("profile.txt");
    REQUIRE(harness::run_cli(with_input({"profile", "--format", "table"}), table).status == 0);
    const auto text = harness::slurp(table);
    CHECK(text.find("missing       1") != std::string::npos);
    CHECK(text.find("histogram") != std::string::npos);

    const auto hidden = run_json({"profile", "--hide-missing", "--hist-bins", "7"}, "profile.json");
    CHECK(hidden.at("showMissing") == false);
    CHECK(hidden.at("histogram").at("counts").size() == 7u);
    CHECK(hidden.at("validCount") == 39);

    const auto csv = testutil::temp_file("compare.csv");
    REQUIRE(harness::run_cli(with_input({"compare", "--method", "quantile,equal_interval", "--bins", "3", "--format",
                                         "csv"}),
                             csv)
                .status == 0);
    const auto body = harness::slurp(csv);
    CHECK(body.starts_with("method,binCount,bin,lower,upper,width,size\n"));
    CHECK(std::count(body.begin(), body.end(), '\n') == 7);
}
