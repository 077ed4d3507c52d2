#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace binx {

enum class ScaleType { Categorical, SequentialSingleHue, SequentialMultiHue, Diverging, Cyclical };

std::string_view to_string(ScaleType t);
/// Throws InvalidParameter.
ScaleType parse_scale_type(std::string_view s);

struct PaletteFlags {
    bool web = false;
    bool colorblind = false;
    bool print = false;
    bool operator==(const PaletteFlags&) const = default;
};

inline constexpr std::string_view kDefaultPalette = "viridis";
inline constexpr std::string_view kDefaultNodata = "#cccccc";

class Palette {
public:
    /// Lookup palette: one fixed swatch list per supported class count.
    static Palette lookup(std::string name, ScaleType type, PaletteFlags flags,
                          std::map<int, std::vector<std::string>> swatches);
    /// Interpolated palette: colors are sampled from a ramp of stops.
    static Palette ramp(std::string name, ScaleType type, PaletteFlags flags, std::vector<std::string> stops);

    const std::string& name() const noexcept { return name_; }
    ScaleType scale_type() const noexcept { return type_; }
    const PaletteFlags& flags() const noexcept { return flags_; }
    const std::string& nodata_color() const noexcept { return nodata_; }
    bool interpolated() const noexcept { return swatches_.empty(); }
    const std::map<int, std::vector<std::string>>& swatches() const noexcept { return swatches_; }
    const std::vector<std::string>& stops() const noexcept { return stops_; }
    int capacity() const noexcept;

    /// Exactly k colors; throws BinCountExceedsPalette / InvalidBinCount.
    std::vector<std::string> colors(int k, bool reversed = false) const;

private:
    Palette() = default;
    void choose_nodata();

    std::string name_;
    ScaleType type_ = ScaleType::SequentialMultiHue;
    PaletteFlags flags_;
    std::string nodata_{kDefaultNodata};
    std::map<int, std::vector<std::string>> swatches_;
    std::vector<std::string> stops_;
    int ramp_capacity_ = 0;
};

/// True for "#rrggbb" (either case).
bool valid_hex(std::string_view s);

struct PaletteFilter {
    bool web = false;
    bool colorblind = false;
    bool print = false;
    std::optional<ScaleType> scale_type;
};

/// Built-in catalog plus custom palettes, optionally persisted to one JSON
/// file that is atomically replaced on every write.
class PaletteCatalog {
public:
    PaletteCatalog();
    explicit PaletteCatalog(std::filesystem::path custom_file);

    /// Conjunctive filter; built-ins first, then customs in insertion order.
    std::vector<Palette> list(const PaletteFilter& filter = {}) const;
    /// Throws UnknownPalette.
    Palette get(std::string_view name) const;
    /// Throws DuplicateName, InvalidHex, InvalidParameter.
    Palette add_custom(std::string name, std::vector<std::string> colors, PaletteFlags flags,
                       ScaleType type = ScaleType::Categorical);

private:
    void persist() const;

    std::vector<Palette> builtin_;
    std::filesystem::path file_;
    mutable std::shared_mutex mutex_;
    std::vector<Palette> custom_;
};

/// The built-in palettes parsed from the embedded data file.
const std::vector<Palette>& builtin_palettes();
/// The built-in named by kDefaultPalette.
const Palette& default_palette();

}  // namespace binx
