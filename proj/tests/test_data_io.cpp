#include <doctest.h>

#include <charconv>
#include <cmath>
#include <json.hpp>
#include <random>

#include "binx/dataset.hpp"
#include "binx/export.hpp"
#include "binx/methods.hpp"
#include "binx/profile.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace binx;
using testutil::code_of;

namespace {

const char* kSquares = R"({"type":"FeatureCollection","features":[
 {"type":"Feature","properties":{"fips":"01001"},"geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1],[0,0]]]}},
 {"type":"Feature","properties":{"fips":"01003"},"geometry":{"type":"MultiPolygon","coordinates":[[[[1,0],[2,0],[2,1],[1,1],[1,0]]]]}},
 {"type":"Feature","properties":{"fips":"01005"},"geometry":{"type":"Polygon","coordinates":[[[2,0],[3,0],[3,1],[2,1],[2,0]]]}}
]})";

std::size_t valid_in(const FeatureSeries& s) { return s.valid_count(); }

}  // namespace

TEST_CASE("parse_attributes") {
    const auto t = parse_attributes("fips,le\n01001,75.2\n01003,NA\n", "fips");
    CHECK(t.row_count() == 2);
    CHECK(t.ids() == std::vector<FeatureId>{"01001", "01003"});
    const auto v = t.numeric_column("le");
    CHECK(v[0] == 75.2);
    CHECK(std::isnan(v[1]));

    SUBCASE("missing tokens") {
        const auto m = parse_attributes("id,x\na,\nb,nan\nc,NULL\nd,na\ne,-1e3\n", "id");
        const auto x = m.numeric_column("x");
        CHECK(std::count_if(x.begin(), x.end(), [](double d) { return std::isnan(d); }) == 4);
        CHECK(x[4] == -1000.0);
    }
    SUBCASE("quoting, CRLF and BOM") {
        const auto q = parse_attributes("\xEF\xBB\xBF\"id\",\"name, full\",x\r\n\"a\",\"say \"\"hi\"\"\",1.5\r\n", "id");
        CHECK(q.has_column("name, full"));
        CHECK(q.numeric_column("x")[0] == 1.5);
        CHECK(q.numeric_columns() == std::vector<std::string>{"x"});
    }
    SUBCASE("errors") {
        CHECK(code_of([] { parse_attributes("a,b\n1,2\n", "fips"); }) == ErrorCode::MissingColumn);
        CHECK(code_of([] { parse_attributes("id,x\n1,2\n1,3\n", "id"); }) == ErrorCode::DuplicateId);
        CHECK(code_of([] { parse_attributes("id,x\n1,2\n2\n", "id"); }) == ErrorCode::UnparseableRow);
        CHECK(code_of([] { parse_attributes("id,x\n1,\"open\n", "id"); }) == ErrorCode::UnparseableRow);
        const auto bad = parse_attributes("id,x\n1,2\n2,abc\n", "id");
        CHECK(code_of([&] { bad.numeric_column("x"); }) == ErrorCode::UnparseableRow);
        CHECK(code_of([&] { bad.numeric_column("y"); }) == ErrorCode::MissingColumn);
        try {
            bad.numeric_column("x");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("row 3") != std::string::npos);
        }
    }
}

TEST_CASE("parse_geometry") {
    const auto g = parse_geometry(kSquares, "fips");
    CHECK(g.ids == std::vector<FeatureId>{"01001", "01003", "01005"});

    const auto by_id = parse_geometry(
        R"({"type":"FeatureCollection","features":[{"type":"Feature","id":7,"properties":{},"geometry":{"type":"Polygon","coordinates":[]}},{"type":"Feature","id":"x","properties":null,"geometry":{"type":"Polygon","coordinates":[]}}]})");
    CHECK(by_id.ids == std::vector<FeatureId>{"7", "x"});

    CHECK(code_of([] { parse_geometry("{", "fips"); }) == ErrorCode::InvalidGeoJson);
    CHECK(code_of([] { parse_geometry(R"({"type":"Feature"})", "fips"); }) == ErrorCode::InvalidGeoJson);
    CHECK(code_of([] {
              parse_geometry(R"({"type":"FeatureCollection","features":[{"type":"Feature","properties":{},"geometry":{"type":"Polygon","coordinates":[]}}]})",
                             "fips");
          }) == ErrorCode::MissingIdProperty);
    CHECK(code_of([] {
              parse_geometry(R"({"type":"FeatureCollection","features":[{"type":"Feature","properties":{"fips":"1"},"geometry":{"type":"Point","coordinates":[0,0]}}]})",
                             "fips");
          }) == ErrorCode::InvalidGeoJson);
    CHECK(code_of([] {
              parse_geometry(R"({"type":"FeatureCollection","features":[
                {"type":"Feature","properties":{"fips":"1"},"geometry":{"type":"Polygon","coordinates":[]}},
                {"type":"Feature","properties":{"fips":"1"},"geometry":{"type":"Polygon","coordinates":[]}}]})",
                             "fips");
          }) == ErrorCode::DuplicateId);
}

TEST_CASE("join") {
    SUBCASE("full match") {
        const auto d = join(parse_attributes("fips,le\n01005,3\n01001,1\n01003,2\n", "fips"), parse_geometry(kSquares, "fips"));
        CHECK(d.join_report().matched == 3);
        CHECK(d.join_report().unmatched_geometry_ids.empty());
        CHECK(d.join_report().unmatched_attribute_ids.empty());
        const auto s = d.series("le");
        CHECK(s.feature_ids() == std::vector<FeatureId>{"01001", "01003", "01005"});
        CHECK(s.values() == std::vector<double>{1, 2, 3});
    }
    SUBCASE("orphans on both sides") {
        const auto d = join(parse_attributes("fips,le\n01001,1\n01003,2\n99999,9\n", "fips"), parse_geometry(kSquares, "fips"));
        const auto& r = d.join_report();
        CHECK(r.matched == 2);
        CHECK(r.unmatched_geometry_ids == std::vector<FeatureId>{"01005"});
        CHECK(r.unmatched_attribute_ids == std::vector<FeatureId>{"99999"});
        const auto s = d.series("le");
        CHECK(s.size() == 3);
        CHECK(s.is_missing(2));
        CHECK(code_of([&] { d.series("nope"); }) == ErrorCode::UnknownAttribute);
    }
    SUBCASE("no geometry keeps table order") {
        const auto d = join(parse_attributes("fips,le\nb,1\na,2\n", "fips"), std::nullopt);
        CHECK(d.series("le").feature_ids() == std::vector<FeatureId>{"b", "a"});
    }
    CHECK(code_of([] { join(parse_attributes("fips,le\nzz,1\n", "fips"), parse_geometry(kSquares, "fips")); }) ==
          ErrorCode::EmptyJoin);
}

TEST_CASE("read_file") {
    CHECK(code_of([] { read_file("/nonexistent/file.csv"); }) == ErrorCode::FileNotFound);
}

TEST_CASE("lossless parse of 17-digit reals") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    std::string csv = "id,v\n";
    std::vector<double> truth;
    for (int i = 0; i < 2000; ++i) {
        const double v = dist(rng) * std::pow(10.0, i % 7 - 3);
        truth.push_back(v);
        char buf[64];
        const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
        csv += "f" + std::to_string(i) + "," + std::string(buf, r.ptr) + "\n";
    }
    const auto d = join(parse_attributes(csv, "id"), std::nullopt);
    CHECK(d.series("v").values() == truth);
}

TEST_CASE("profile textbook set") {
    const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
    const auto p = profile(FeatureSeries::from_values(v));
    CHECK(p.mean == 5.0);
    CHECK(p.std_dev == 2.0);
    CHECK(p.median == 4.5);
    CHECK(p.min == 2.0);
    CHECK(p.max == 9.0);
    CHECK(p.count == 8);
    CHECK(p.missing_count == 0);
    // population skewness: m3 / m2^1.5 = (42/8) / 8
    CHECK(p.skewness == doctest::Approx(0.65625).epsilon(1e-12));
}

TEST_CASE("profile missing values and errors") {
    const auto s = FeatureSeries::from_optional({"a", "b", "c", "d"}, {1.0, std::nullopt, 3.0, std::nullopt});
    const auto shown = profile(s, 4, true);
    const auto hidden = profile(s, 4, false);
    CHECK(shown.count == 4);
    CHECK(shown.missing_count == 2);
    CHECK(shown.valid_count + shown.missing_count == shown.count);
    CHECK(!hidden.show_missing);
    CHECK(hidden.mean == shown.mean);
    CHECK(hidden.kde.density == shown.kde.density);

    const auto empty = FeatureSeries::from_optional({"a"}, {std::nullopt});
    CHECK(code_of([&] { profile(empty); }) == ErrorCode::EmptySeries);
    CHECK(code_of([&] { profile(s, 0); }) == ErrorCode::InvalidBinCount);
}

TEST_CASE("profile against naive reference") {
    const auto v = oracle::uniform(10000, -50, 150, 5);
    const auto p = profile(FeatureSeries::from_values(v), 25);
    long double sum = 0;
    for (const double x : v) sum += x;
    const long double mean = sum / v.size();
    long double m2 = 0, m3 = 0;
    for (const double x : v) {
        m2 += (x - mean) * (x - mean);
        m3 += (x - mean) * (x - mean) * (x - mean);
    }
    m2 /= v.size();
    m3 /= v.size();
    CHECK(p.mean == doctest::Approx(static_cast<double>(mean)).epsilon(1e-12));
    CHECK(p.std_dev == doctest::Approx(static_cast<double>(std::sqrt(m2))).epsilon(1e-12));
    CHECK(p.skewness == doctest::Approx(static_cast<double>(m3 / std::pow(m2, 1.5L))).epsilon(1e-9));
    CHECK(p.median == oracle::quantile7(v, 0.5));

    std::size_t total = 0;
    for (const auto c : p.histogram.counts) total += c;
    CHECK(total == v.size());
    CHECK(p.histogram.counts.size() == 25);

    auto shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937(3));
    CHECK(profile(FeatureSeries::from_values(shuffled), 25).histogram.counts == p.histogram.counts);

    double integral = 0;
    for (std::size_t i = 1; i < p.kde.grid.size(); ++i)
        integral += 0.5 * (p.kde.density[i] + p.kde.density[i - 1]) * (p.kde.grid[i] - p.kde.grid[i - 1]);
    CHECK(std::abs(integral - 1.0) < 1e-3);
    for (const double d : p.kde.density) CHECK(d >= 0.0);
}

TEST_CASE("profile of a constant series") {
    const std::vector<double> v(5, 3.0);
    const auto p = profile(FeatureSeries::from_values(v));
    CHECK(p.std_dev == 0.0);
    CHECK(p.skewness == 0.0);
    CHECK(p.histogram.counts == std::vector<std::size_t>{5});
    CHECK(p.kde.bandwidth > 0.0);
}

TEST_CASE("export targets") {
    CHECK(parse_export_target("legend_svg") == ExportTarget::LegendSvg);
    CHECK(code_of([] { parse_export_target("pdf"); }) == ErrorCode::UnsupportedTarget);
    for (const auto t : {ExportTarget::Breaks, ExportTarget::Sizes, ExportTarget::MapSpec, ExportTarget::LegendSvg,
                         ExportTarget::CodeStub})
        CHECK(parse_export_target(to_string(t)) == t);
}

TEST_CASE("breaks export round-trips through manual_interval") {
    const auto v = oracle::pareto(500, 1.3, 9);
    const auto s = FeatureSeries::from_values(v);
    for (const auto m : builtin_methods()) {
        if (m == Method::Custom || m == Method::ManualInterval) continue;
        auto spec = MethodSpec::of(m, 6);
        if (m == Method::DefinedInterval) spec.defined_interval_size = 2.5;
        // box_plot drops its lower fence on this tail, so it cannot vote at k = 6
        if (m == Method::Resiliency) spec.member_methods = {"quantile", "equal_interval", "ckmeans"};
        const auto r = run_method(s, spec);
        const auto text = export_result(r, ExportTarget::Breaks);
        const auto j = nlohmann::json::parse(text);
        CHECK(j["schema_version"] == 1);
        const auto back = manual_interval(s, parse_breaks(text));
        CHECK(back.extents == r.extents);
        CHECK(back.assignments == r.assignments);
    }
}

TEST_CASE("sizes export") {
    const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const auto r = quantile(FeatureSeries::from_values(v), 5);
    const auto j = nlohmann::json::parse(export_result(r, ExportTarget::Sizes));
    CHECK(j["binSizes"] == nlohmann::json::array({2, 2, 2, 2, 2}));
    CHECK(j["method"] == "quantile");
}

TEST_CASE("legend svg") {
    const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const auto r = equal_interval(FeatureSeries::from_values(v), 5);
    const auto svg = export_result(r, ExportTarget::LegendSvg);
    const auto count = [&](std::string_view needle) {
        std::size_t n = 0;
        for (auto p = svg.find(needle); p != std::string::npos; p = svg.find(needle, p + 1)) ++n;
        return n;
    };
    CHECK(count("class=\"swatch\"") == 5);
    CHECK(count("class=\"nodata\"") == 1);
    CHECK(count("<rect") == 6);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);
    CHECK(svg.find("#440154") != std::string::npos);
    CHECK(svg.find("[8.2, 10]") != std::string::npos);
    CHECK(svg.find("#cccccc") != std::string::npos);
}

TEST_CASE("code stub") {
    const std::vector<double> v{1, 2, 3, 4, 10};
    const auto r = equal_interval(FeatureSeries::from_values(v), 3);
    const auto stub = export_result(r, ExportTarget::CodeStub);
    CHECK(stub.find("binx::manual_interval(series, breaks)") != std::string::npos);
    CHECK(stub.find("{1, 4, 7, 10}") != std::string::npos);
}

TEST_CASE("mapspec") {
    const auto d = join(parse_attributes("fips,le\n01001,1\n01003,NA\n01005,3\n", "fips"), parse_geometry(kSquares, "fips"));
    const auto s = d.series("le");
    const auto r = equal_interval(s, 2);
    ExportOptions o;
    o.series = &s;
    o.geometry = &*d.geometry();
    const auto j = nlohmann::json::parse(export_result(r, ExportTarget::MapSpec, o));
    CHECK(j["$schema"] == "https://vega.github.io/schema/vega-lite/v5.json");
    CHECK(j["data"]["values"].size() == 3);
    CHECK(j["transform"][0]["lookup"] == "properties.fips");
    CHECK(j["encoding"]["color"]["scale"]["domain"] == nlohmann::json::array({2.0}));
    CHECK(j["encoding"]["color"]["scale"]["range"].size() == 2);
    CHECK(j["encoding"]["color"]["condition"]["value"] == "#cccccc");
    CHECK(j["transform"][0]["from"]["data"]["values"][1]["value"].is_null());
    CHECK(j["usermeta"]["schema_version"] == 1);

    o.geometry_url = "counties.geojson";
    const auto u = nlohmann::json::parse(export_result(r, ExportTarget::MapSpec, o));
    CHECK(u["data"]["url"] == "counties.geojson");
    CHECK(!u["data"].contains("values"));

    ExportOptions none;
    CHECK(code_of([&] { export_result(r, ExportTarget::MapSpec, none); }) == ErrorCode::InvalidParameter);
    none.series = &s;
    CHECK(code_of([&] { export_result(r, ExportTarget::MapSpec, none); }) == ErrorCode::InvalidParameter);
    CHECK(valid_in(s) == 2);
}
