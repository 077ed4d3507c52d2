#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <set>

#include "binx/api.hpp"
#include "binx/consensus.hpp"
#include "binx/profile.hpp"

using namespace binx;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::path(BINX_DATA_DIR) / "samples";

nlohmann::json manifest() { return nlohmann::json::parse(read_file((kDir / "manifest.json").string())); }

Dataset load() {
    const auto m = manifest();
    return api::load_dataset(read_file((kDir / m.at("attributes").get<std::string>()).string()),
                             m.at("idColumn").get<std::string>(),
                             read_file((kDir / m.at("geometry").get<std::string>()).string()),
                             m.at("idProperty").get<std::string>());
}

}  // namespace

TEST_CASE("bundled sample matches its manifest") {
    const auto m = manifest();
    const auto d = load();
    const auto& report = d.join_report();
    CHECK(static_cast<int>(report.matched) == m.at("matched").get<int>());
    CHECK(report.unmatched_geometry_ids == m.at("unmatchedGeometryIds").get<std::vector<std::string>>());
    CHECK(report.unmatched_attribute_ids == m.at("unmatchedAttributeIds").get<std::vector<std::string>>());
    REQUIRE(d.geometry().has_value());
    CHECK(static_cast<int>(d.geometry()->ids.size()) == m.at("geometryFeatures").get<int>());

    const auto s = d.series(m.at("valueColumn").get<std::string>());
    std::set<std::string> unique(s.feature_ids().begin(), s.feature_ids().end());
    CHECK(unique.size() == s.size());
    CHECK(unique.size() > 3000);
    CHECK(static_cast<int>(s.valid_count()) == m.at("matched").get<int>() - m.at("naRows").get<int>());
    CHECK(d.attributes().row_count() == static_cast<std::size_t>(m.at("rows").get<int>()));
}

TEST_CASE("sample profile is sane") {
    const auto d = load();
    const auto s = d.series("life_expectancy");
    const auto p = profile(s);
    CHECK(p.valid_count == s.valid_count());
    CHECK(p.min == 62.44);
    CHECK(p.max == 93.58);
    CHECK(p.skewness != 0.0);
    double integral = 0.0;
    for (std::size_t i = 1; i < p.kde.grid.size(); ++i)
        integral += 0.5 * (p.kde.density[i] + p.kde.density[i - 1]) * (p.kde.grid[i] - p.kde.grid[i - 1]);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
    std::size_t total = 0;
    for (auto c : p.histogram.counts) total += c;
    CHECK(total == s.valid_count());
}

TEST_CASE("named counties keep their consensus rows") {
    const auto d = load();
    const auto s = d.series("life_expectancy");
    const auto matrix = build_matrix(s, member_specs(default_consensus_members(6), 6), 6);
    const auto row = [&](const std::string& id) {
        const auto it = std::find(matrix.feature_ids.begin(), matrix.feature_ids.end(), id);
        REQUIRE(it != matrix.feature_ids.end());
        return static_cast<std::size_t>(it - matrix.feature_ids.begin());
    };
    const auto scott = row("20171");
    CHECK(matrix.bins[scott] == std::vector<int>{4, 6, 2, 5, 5, 4, 4, 5});
    CHECK(matrix.majority_bin[scott] == 4);
    CHECK(matrix.majority_frequency[scott] == 3);
    CHECK(matrix.bins[row("46102")] == std::vector<int>(8, 1));
    // Macon and DeKalb sit in different natural_breaks bins before any painting
    CHECK(matrix.bins[row("37113")][3] != matrix.bins[row("13089")][3]);
}
