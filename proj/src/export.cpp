#include "binx/export.hpp"

#include <array>
#include <json.hpp>
#include <sstream>

#include "binx/error.hpp"
#include "method_support.hpp"

namespace binx {

using detail::format_number;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<ExportTarget, std::string_view>, 5> kTargets{{
    {ExportTarget::Breaks, "breaks"},
    {ExportTarget::Sizes, "sizes"},
    {ExportTarget::MapSpec, "mapspec"},
    {ExportTarget::LegendSvg, "legend_svg"},
    {ExportTarget::CodeStub, "code_stub"},
}};

constexpr int kSwatch = 18;
constexpr int kRow = 24;
constexpr int kLegendWidth = 280;

std::string xml_escape(std::string_view s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string dump(const ojson& doc) { return doc.dump(2) + "\n"; }

ojson header(const BinningResult& r) {
    ojson j;
    j["schema_version"] = kExportSchemaVersion;
    j["method"] = method_id(r.method);
    j["binCount"] = r.bin_count();
    return j;
}

std::string range_label(const BinningResult& r, int bin) {
    const auto& e = r.extents;
    const bool top = bin == r.bin_count();
    return "[" + format_number(e[bin - 1]) + ", " + format_number(e[bin]) + (top ? "]" : ")");
}

std::string legend_svg(const BinningResult& r, const ExportOptions& o) {
    const int k = r.bin_count();
    const auto colors = o.palette.colors(k, o.reversed);
    const int height = kRow * (k + 1) + 8;
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kLegendWidth << "\" height=\""
      << height << "\" viewBox=\"0 0 " << kLegendWidth << ' ' << height << "\">\n"
      << "  <title>" << xml_escape(method_id(r.method)) << "</title>\n"
      << "  <g font-family=\"sans-serif\" font-size=\"12\">\n";
    const auto row = [&](int i, const std::string& color, const std::string& label, const char* cls) {
        const int y = 4 + i * kRow;
        s << "    <g class=\"" << cls << "\">\n"
          << "      <rect x=\"4\" y=\"" << y << "\" width=\"" << kSwatch << "\" height=\"" << kSwatch << "\" fill=\""
          << color << "\" stroke=\"#666666\" stroke-width=\"0.5\"/>\n"
          << "      <text x=\"" << kSwatch + 12 << "\" y=\"" << y + kSwatch - 5 << "\">" << xml_escape(label)
          << "</text>\n"
          << "    </g>\n";
    };
    for (int b = 1; b <= k; ++b) row(b - 1, colors[b - 1], range_label(r, b), "swatch");
    row(k, o.palette.nodata_color(), "No data", "nodata");
    s << "  </g>\n</svg>\n";
    return s.str();
}

std::string code_stub(const BinningResult& r) {
    std::ostringstream s;
    s << "// " << method_id(r.method) << ", " << r.bin_count() << " bins\n"
      << "#include <binx/methods.hpp>\n\n"
      << "binx::BinningResult rebin(const binx::FeatureSeries& series) {\n"
      << "    const std::vector<double> breaks{";
    for (std::size_t i = 0; i < r.extents.size(); ++i) s << (i ? ", " : "") << format_number(r.extents[i]);
    s << "};\n"
      << "    return binx::manual_interval(series, breaks);\n"
      << "}\n";
    return s.str();
}

// Key path of the feature id inside each geometry datum.
std::string id_path(const GeometryCollection* g) {
    return g && !g->id_property.empty() ? "properties." + g->id_property : "id";
}

std::string mapspec(const BinningResult& r, const ExportOptions& o) {
    if (!o.series) throw Error(ErrorCode::InvalidParameter, "mapspec export needs the binned series");
    if (!o.geometry && o.geometry_url.empty())
        throw Error(ErrorCode::InvalidParameter, "mapspec export needs geometry or a geometry url");
    const auto& series = *o.series;
    if (series.feature_ids() != r.feature_ids)
        throw Error(ErrorCode::MismatchedInputs, "result was not produced from this series");
    const int k = r.bin_count();

    ojson values = ojson::array();
    for (std::size_t i = 0; i < series.size(); ++i) {
        ojson row;
        row["id"] = series.feature_ids()[i];
        row["value"] = series.is_missing(i) ? ojson(nullptr) : ojson(series.values()[i]);
        values.push_back(std::move(row));
    }

    ojson data;
    if (!o.geometry_url.empty()) {
        data["url"] = o.geometry_url;
        data["format"] = {{"type", "json"}, {"property", "features"}};
    } else {
        // Ids are written as strings so they match the lookup table keys.
        ojson features = ojson::array();
        const auto& src = o.geometry->collection.at("features");
        for (std::size_t i = 0; i < src.size(); ++i) {
            auto f = ojson::parse(src[i].dump());
            if (o.geometry->id_property.empty())
                f["id"] = o.geometry->ids[i];
            else
                f["properties"][o.geometry->id_property] = o.geometry->ids[i];
            features.push_back(std::move(f));
        }
        data["values"] = std::move(features);
    }

    ojson meta = header(r);
    meta["extents"] = r.extents;
    meta["palette"] = o.palette.name();
    meta["reversed"] = o.reversed;

    ojson color;
    color["condition"] = {{"test", "!isValid(datum.value)"}, {"value", o.palette.nodata_color()}};
    color["field"] = "value";
    color["type"] = "quantitative";
    color["title"] = series.attribute_name().empty() ? "value" : series.attribute_name();
    color["scale"] = {{"type", "threshold"},
                      {"domain", std::vector<double>(r.extents.begin() + 1, r.extents.end() - 1)},
                      {"range", o.palette.colors(k, o.reversed)}};

    ojson spec;
    spec["$schema"] = "https://vega.github.io/schema/vega-lite/v5.json";
    spec["description"] = method_id(r.method) + " choropleth, " + std::to_string(k) + " bins";
    spec["usermeta"] = std::move(meta);
    spec["width"] = o.width;
    spec["height"] = o.height;
    spec["data"] = std::move(data);
    spec["transform"] = ojson::array({{{"lookup", id_path(o.geometry)},
                                       {"from", {{"data", {{"values", std::move(values)}}},
                                                 {"key", "id"},
                                                 {"fields", ojson::array({"value"})}}}}});
    spec["projection"] = {{"type", o.projection}};
    spec["mark"] = {{"type", "geoshape"}, {"stroke", "#ffffff"}, {"strokeWidth", 0.5}};
    spec["encoding"] = {{"color", std::move(color)}};
    return dump(spec);
}

}  // namespace

std::string_view to_string(ExportTarget t) {
    for (const auto& [target, name] : kTargets)
        if (target == t) return name;
    return "breaks";
}

ExportTarget parse_export_target(std::string_view s) {
    for (const auto& [target, name] : kTargets)
        if (name == s) return target;
    throw Error(ErrorCode::UnsupportedTarget,
                "unknown export target '" + std::string(s) + "' (breaks, sizes, mapspec, legend_svg, code_stub)",
                std::string(s));
}

std::string_view default_file_name(ExportTarget t) {
    switch (t) {
        case ExportTarget::Breaks: return "breaks.json";
        case ExportTarget::Sizes: return "sizes.json";
        case ExportTarget::MapSpec: return "mapspec.vl.json";
        case ExportTarget::LegendSvg: return "legend.svg";
        case ExportTarget::CodeStub: return "rebin.cpp";
    }
    return "export.txt";
}

std::string export_result(const BinningResult& result, ExportTarget target, const ExportOptions& options) {
    if (result.extents.size() < 2 || !strictly_increasing(result.extents))
        throw Error(ErrorCode::NonMonotoneExtents, "cannot export a result without increasing extents");
    switch (target) {
        case ExportTarget::Breaks: {
            auto j = header(result);
            j["extents"] = result.extents;
            return dump(j);
        }
        case ExportTarget::Sizes: {
            auto j = header(result);
            j["binSizes"] = result.bin_sizes;
            return dump(j);
        }
        case ExportTarget::MapSpec: return mapspec(result, options);
        case ExportTarget::LegendSvg: return legend_svg(result, options);
        case ExportTarget::CodeStub: return code_stub(result);
    }
    throw Error(ErrorCode::UnsupportedTarget, "unknown export target");
}

std::vector<double> parse_breaks(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        const auto& arr = j.is_array() ? j : j.at("extents");
        return arr.get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidParameter, std::string("not a breaks document: ") + e.what());
    }
}

}  // namespace binx
