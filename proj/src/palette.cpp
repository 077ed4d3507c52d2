#include "binx/palette.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <set>

#include "binx/error.hpp"

namespace binx {

namespace detail {
extern const std::string_view kBuiltinPaletteJson;
}

namespace {

constexpr std::array<std::pair<ScaleType, std::string_view>, 5> kScaleNames{{
    {ScaleType::Categorical, "categorical"},
    {ScaleType::SequentialSingleHue, "sequential_single_hue"},
    {ScaleType::SequentialMultiHue, "sequential_multi_hue"},
    {ScaleType::Diverging, "diverging"},
    {ScaleType::Cyclical, "cyclical"},
}};

// Largest k tried when measuring how many distinct colors a ramp yields.
constexpr int kMaxRampCapacity = 256;

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::array<int, 3> rgb(std::string_view hex) {
    std::array<int, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) out[i] = hex_digit(hex[1 + 2 * i]) * 16 + hex_digit(hex[2 + 2 * i]);
    return out;
}

std::string to_hex(const std::array<double, 3>& c) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out = "#";
    for (const double x : c) {
        const int v = std::clamp(static_cast<int>(std::lround(x)), 0, 255);
        out += digits[v / 16];
        out += digits[v % 16];
    }
    return out;
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string sample(const std::vector<std::string>& stops, double t) {
    const double pos = t * static_cast<double>(stops.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(pos), stops.size() - 1);
    const auto j = std::min(i + 1, stops.size() - 1);
    const double f = pos - static_cast<double>(i);
    const auto a = rgb(stops[i]), b = rgb(stops[j]);
    std::array<double, 3> c{};
    for (std::size_t ch = 0; ch < 3; ++ch) c[ch] = a[ch] + f * (b[ch] - a[ch]);
    return to_hex(c);
}

bool all_distinct(const std::vector<std::string>& colors) {
    return std::set<std::string>(colors.begin(), colors.end()).size() == colors.size();
}

}  // namespace

std::string_view to_string(ScaleType t) {
    for (const auto& [type, name] : kScaleNames)
        if (type == t) return name;
    return "categorical";
}

ScaleType parse_scale_type(std::string_view s) {
    for (const auto& [type, name] : kScaleNames)
        if (name == s) return type;
    throw Error(ErrorCode::InvalidParameter, "unknown scale type '" + std::string(s) + "'");
}

bool valid_hex(std::string_view s) {
    return s.size() == 7 && s[0] == '#' &&
           std::all_of(s.begin() + 1, s.end(), [](char c) { return hex_digit(c) >= 0; });
}

Palette Palette::lookup(std::string name, ScaleType type, PaletteFlags flags,
                        std::map<int, std::vector<std::string>> swatches) {
    Palette p;
    p.name_ = std::move(name);
    p.type_ = type;
    p.flags_ = flags;
    for (auto& [k, colors] : swatches)
        for (auto& c : colors) c = lower(c);
    p.swatches_ = std::move(swatches);
    p.choose_nodata();
    return p;
}

Palette Palette::ramp(std::string name, ScaleType type, PaletteFlags flags, std::vector<std::string> stops) {
    Palette p;
    p.name_ = std::move(name);
    p.type_ = type;
    p.flags_ = flags;
    for (auto& c : stops) c = lower(c);
    p.stops_ = std::move(stops);
    p.ramp_capacity_ = 1;
    for (int k = 2; k <= kMaxRampCapacity; ++k) {
        p.ramp_capacity_ = k;
        if (!all_distinct(p.colors(k))) {
            p.ramp_capacity_ = k - 1;
            break;
        }
    }
    p.choose_nodata();
    return p;
}

int Palette::capacity() const noexcept {
    return swatches_.empty() ? ramp_capacity_ : swatches_.rbegin()->first;
}

std::vector<std::string> Palette::colors(int k, bool reversed) const {
    if (k < 1) throw Error(ErrorCode::InvalidBinCount, "bin count must be at least 1");
    if (k > capacity())
        throw Error(ErrorCode::BinCountExceedsPalette, "palette " + name_ + " supports at most " +
                                                           std::to_string(capacity()) + " colors, " +
                                                           std::to_string(k) + " requested");
    std::vector<std::string> out;
    if (!swatches_.empty()) {
        const auto exact = swatches_.find(k);
        const auto& base = exact != swatches_.end() ? exact->second : swatches_.lower_bound(k)->second;
        if (exact != swatches_.end()) {
            out = base;
        } else if (k == 1) {
            out = {base[(base.size() - 1) / 2]};
        } else if (type_ == ScaleType::Categorical) {
            out.assign(base.begin(), base.begin() + k);
        } else {
            const auto n = base.size();
            for (int i = 0; i < k; ++i) {
                const auto idx = static_cast<std::size_t>(std::lround(static_cast<double>(i) * (n - 1) / (k - 1)));
                out.push_back(base[idx]);
            }
        }
    } else if (k == 1) {
        out = {sample(stops_, 0.5)};
    } else {
        for (int i = 0; i < k; ++i) {
            const double t = type_ == ScaleType::Cyclical ? static_cast<double>(i) / k
                                                          : static_cast<double>(i) / (k - 1);
            out.push_back(sample(stops_, t));
        }
    }
    if (reversed) std::reverse(out.begin(), out.end());
    return out;
}

void Palette::choose_nodata() {
    std::set<std::string> used;
    for (int k = 1; k <= capacity(); ++k)
        for (auto& c : colors(k)) used.insert(c);
    for (const char* candidate : {"#cccccc", "#bdbdbd", "#999999", "#ff00ff", "#00ff00"}) {
        if (!used.count(candidate)) {
            nodata_ = candidate;
            return;
        }
    }
}

namespace {

PaletteFlags flags_from(const nlohmann::json& j) {
    return {j.value("web", false), j.value("colorblind", false), j.value("print", false)};
}

Palette palette_from_json(const nlohmann::json& j) {
    const auto name = j.at("name").get<std::string>();
    const auto type = parse_scale_type(j.at("scaleType").get<std::string>());
    const auto flags = flags_from(j.value("flags", nlohmann::json::object()));
    if (j.contains("interpolator"))
        return Palette::ramp(name, type, flags, j["interpolator"].at("stops").get<std::vector<std::string>>());
    std::map<int, std::vector<std::string>> swatches;
    for (const auto& [k, colors] : j.at("colors").items())
        swatches[std::stoi(k)] = colors.get<std::vector<std::string>>();
    return Palette::lookup(name, type, flags, std::move(swatches));
}

nlohmann::ordered_json palette_to_store(const Palette& p) {
    nlohmann::ordered_json j;
    j["name"] = p.name();
    j["scaleType"] = to_string(p.scale_type());
    j["flags"] = {{"web", p.flags().web}, {"colorblind", p.flags().colorblind}, {"print", p.flags().print}};
    nlohmann::ordered_json colors;
    for (const auto& [k, c] : p.swatches()) colors[std::to_string(k)] = c;
    j["colors"] = colors;
    return j;
}

}  // namespace

const std::vector<Palette>& builtin_palettes() {
    static const std::vector<Palette> palettes = [] {
        std::vector<Palette> out;
        const auto doc = nlohmann::json::parse(detail::kBuiltinPaletteJson);
        for (const auto& p : doc.at("palettes")) out.push_back(palette_from_json(p));
        return out;
    }();
    return palettes;
}

const Palette& default_palette() {
    static const Palette& p = *std::find_if(builtin_palettes().begin(), builtin_palettes().end(),
                                            [](const Palette& x) { return x.name() == kDefaultPalette; });
    return p;
}

PaletteCatalog::PaletteCatalog() : builtin_(builtin_palettes()) {}

PaletteCatalog::PaletteCatalog(std::filesystem::path custom_file)
    : builtin_(builtin_palettes()), file_(std::move(custom_file)) {
    if (!std::filesystem::exists(file_)) {
        std::error_code ec;
        if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path(), ec);
        return;
    }
    std::ifstream in(file_);
    try {
        const auto doc = nlohmann::json::parse(in);
        for (const auto& p : doc.at("palettes")) custom_.push_back(palette_from_json(p));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::IoError, "corrupt palette store " + file_.string() + ": " + e.what());
    }
}

std::vector<Palette> PaletteCatalog::list(const PaletteFilter& f) const {
    const auto keep = [&](const Palette& p) {
        return (!f.web || p.flags().web) && (!f.colorblind || p.flags().colorblind) && (!f.print || p.flags().print) &&
               (!f.scale_type || p.scale_type() == *f.scale_type);
    };
    std::vector<Palette> out;
    for (const auto& p : builtin_)
        if (keep(p)) out.push_back(p);
    std::shared_lock lock(mutex_);
    for (const auto& p : custom_)
        if (keep(p)) out.push_back(p);
    return out;
}

Palette PaletteCatalog::get(std::string_view name) const {
    for (const auto& p : builtin_)
        if (p.name() == name) return p;
    std::shared_lock lock(mutex_);
    for (const auto& p : custom_)
        if (p.name() == name) return p;
    throw Error(ErrorCode::UnknownPalette, "no palette named '" + std::string(name) + "'", std::string(name));
}

Palette PaletteCatalog::add_custom(std::string name, std::vector<std::string> colors, PaletteFlags flags,
                                   ScaleType type) {
    if (name.empty()) throw Error(ErrorCode::InvalidParameter, "palette name must not be empty");
    if (colors.empty()) throw Error(ErrorCode::InvalidParameter, "a palette needs at least one color");
    for (const auto& c : colors)
        if (!valid_hex(c)) throw Error(ErrorCode::InvalidHex, "'" + c + "' is not a #rrggbb color", c);
    for (auto& c : colors) c = lower(c);
    if (!all_distinct(colors)) throw Error(ErrorCode::InvalidParameter, "palette colors must be distinct");

    std::unique_lock lock(mutex_);
    const auto taken = [&](const Palette& p) { return p.name() == name; };
    if (std::any_of(builtin_.begin(), builtin_.end(), taken) || std::any_of(custom_.begin(), custom_.end(), taken))
        throw Error(ErrorCode::DuplicateName, "a palette named '" + name + "' exists", name);
    const int n = static_cast<int>(colors.size());
    auto p = Palette::lookup(std::move(name), type, flags, {{n, std::move(colors)}});
    custom_.push_back(p);
    try {
        persist();
    } catch (...) {
        custom_.pop_back();
        throw;
    }
    return p;
}

void PaletteCatalog::persist() const {
    if (file_.empty()) return;
    nlohmann::ordered_json doc;
    doc["palettes"] = nlohmann::ordered_json::array();
    for (const auto& p : custom_) doc["palettes"].push_back(palette_to_store(p));
    auto tmp = file_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << doc.dump(2) << '\n';
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, file_, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot replace " + file_.string() + ": " + ec.message());
}

}  // namespace binx
