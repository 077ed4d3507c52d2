#include <doctest.h>

#include <algorithm>
#include <set>

#include "binx/palette.hpp"
#include "test_util.hpp"

using namespace binx;
using testutil::code_of;
using testutil::temp_file;

using Colors = std::vector<std::string>;

TEST_CASE("builtin catalog") {
    const auto& all = builtin_palettes();
    CHECK(all.size() >= 40);
    std::set<std::string> names;
    for (const auto& p : all) {
        CHECK(names.insert(p.name()).second);
        CHECK(p.capacity() >= 3);
        CHECK(valid_hex(p.nodata_color()));
    }
    CHECK(default_palette().name() == "viridis");
    CHECK(default_palette().interpolated());
}

TEST_CASE("ColorBrewer lookups are verbatim") {
    PaletteCatalog cat;
    CHECK(cat.get("Blues").colors(5) == Colors{"#eff3ff", "#bdd7e7", "#6baed6", "#3182bd", "#08519c"});
    CHECK(cat.get("Blues").capacity() == 9);
    CHECK(cat.get("Set1").scale_type() == ScaleType::Categorical);
    CHECK(cat.get("RdBu").scale_type() == ScaleType::Diverging);
    CHECK(cat.get("Greys").scale_type() == ScaleType::SequentialSingleHue);
    CHECK(cat.get("YlGnBu").scale_type() == ScaleType::SequentialMultiHue);
    CHECK(cat.get("twilight").scale_type() == ScaleType::Cyclical);
}

TEST_CASE("viridis k=5") {
    // linear interpolation of the 256-entry matplotlib table at t = i/4
    CHECK(default_palette().colors(5) == Colors{"#440154", "#3b528b", "#21918d", "#5dc863", "#fde725"});
}

TEST_CASE("colors(k) shape") {
    for (const auto& p : builtin_palettes()) {
        for (int k = 1; k <= std::min(p.capacity(), 12); ++k) {
            const auto c = p.colors(k);
            REQUIRE(c.size() == static_cast<std::size_t>(k));
            CHECK(std::set<std::string>(c.begin(), c.end()).size() == c.size());
            CHECK(std::find(c.begin(), c.end(), p.nodata_color()) == c.end());
            for (const auto& h : c) CHECK(valid_hex(h));
            auto twice = p.colors(k, true);
            std::reverse(twice.begin(), twice.end());
            CHECK(twice == c);
        }
        CHECK(code_of([&] { p.colors(p.capacity() + 1); }) == ErrorCode::BinCountExceedsPalette);
        CHECK(code_of([&] { p.colors(0); }) == ErrorCode::InvalidBinCount);
    }
}

TEST_CASE("ramp capacity is the distinctness limit") {
    const auto& v = default_palette();
    const auto c = v.colors(v.capacity());
    CHECK(std::set<std::string>(c.begin(), c.end()).size() == c.size());
    // 8-bit rounding of neighbouring samples collides past this point
    CHECK(v.capacity() > 100);
    CHECK(v.capacity() <= 256);
}

TEST_CASE("nodata avoids palette colors") {
    PaletteCatalog cat;
    CHECK(cat.get("viridis").nodata_color() == "#cccccc");
    // Greys and Pastel2 both contain #cccccc
    CHECK(cat.get("Greys").nodata_color() != "#cccccc");
    CHECK(cat.get("Pastel2").nodata_color() != "#cccccc");
}

TEST_CASE("flag filters") {
    PaletteCatalog cat;
    CHECK(cat.list().size() == builtin_palettes().size());
    const auto cb = cat.list({.colorblind = true});
    CHECK(!cb.empty());
    for (const auto& p : cb) CHECK(p.flags().colorblind);
    CHECK(std::none_of(cb.begin(), cb.end(), [](const Palette& p) { return p.name() == "Set1"; }));
    const auto div = cat.list({.colorblind = true, .print = true, .scale_type = ScaleType::Diverging});
    CHECK(!div.empty());
    for (const auto& p : div) CHECK(p.scale_type() == ScaleType::Diverging);
    CHECK(cat.list({.colorblind = true, .scale_type = ScaleType::Cyclical}).empty());
}

TEST_CASE("custom palettes") {
    const auto file = temp_file("palettes.json");
    {
        PaletteCatalog cat(file);
        const auto p = cat.add_custom("mine", {"#FF0000", "#00ff00", "#0000ff"}, {true, false, true},
                                      ScaleType::SequentialMultiHue);
        CHECK(p.colors(3) == Colors{"#ff0000", "#00ff00", "#0000ff"});
        CHECK(p.colors(2) == Colors{"#ff0000", "#0000ff"});
        CHECK(p.nodata_color() == "#cccccc");
        CHECK(code_of([&] { cat.add_custom("mine", {"#000000"}, {}); }) == ErrorCode::DuplicateName);
        CHECK(code_of([&] { cat.add_custom("viridis", {"#000000"}, {}); }) == ErrorCode::DuplicateName);
        CHECK(code_of([&] { cat.add_custom("bad", {"#12345"}, {}); }) == ErrorCode::InvalidHex);
        CHECK(code_of([&] { cat.add_custom("bad", {"red"}, {}); }) == ErrorCode::InvalidHex);
        CHECK(code_of([&] { cat.add_custom("dup", {"#000000", "#000000"}, {}); }) == ErrorCode::InvalidParameter);
        CHECK(code_of([&] { cat.add_custom("", {"#000000"}, {}); }) == ErrorCode::InvalidParameter);
    }
    PaletteCatalog reloaded(file);
    const auto p = reloaded.get("mine");
    CHECK(p.scale_type() == ScaleType::SequentialMultiHue);
    CHECK(p.flags() == PaletteFlags{true, false, true});
    CHECK(reloaded.list({.web = true}).back().name() == "mine");
    CHECK(reloaded.list({.colorblind = true}).back().name() != "mine");
    CHECK(code_of([&] { reloaded.get("nope"); }) == ErrorCode::UnknownPalette);

    PaletteCatalog memory;
    memory.add_custom("grey", {"#cccccc", "#000000"}, {});
    CHECK(memory.get("grey").nodata_color() == "#bdbdbd");
}

TEST_CASE("scale type names") {
    for (const auto t : {ScaleType::Categorical, ScaleType::SequentialSingleHue, ScaleType::SequentialMultiHue,
                         ScaleType::Diverging, ScaleType::Cyclical})
        CHECK(parse_scale_type(to_string(t)) == t);
    CHECK(code_of([] { parse_scale_type("rainbow"); }) == ErrorCode::InvalidParameter);
}
