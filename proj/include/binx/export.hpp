#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binx/binning.hpp"
#include "binx/dataset.hpp"
#include "binx/palette.hpp"
#include "binx/series.hpp"

namespace binx {

enum class ExportTarget { Breaks, Sizes, MapSpec, LegendSvg, CodeStub };

inline constexpr int kExportSchemaVersion = 1;

std::string_view to_string(ExportTarget t);
/// Throws UnsupportedTarget.
ExportTarget parse_export_target(std::string_view s);
/// File name used by the CLI for each target, e.g. "breaks.json".
std::string_view default_file_name(ExportTarget t);

struct ExportOptions {
    Palette palette = default_palette();
    bool reversed = false;
    // mapspec only
    const FeatureSeries* series = nullptr;
    const GeometryCollection* geometry = nullptr;
    std::string geometry_url;  // referenced instead of inlining `geometry` when set
    std::string projection = "mercator";
    int width = 800;
    int height = 500;
};

/// Serialized artifact for one target. mapspec needs `series` plus either
/// `geometry` or `geometry_url` (InvalidParameter otherwise).
std::string export_result(const BinningResult& result, ExportTarget target, const ExportOptions& options = {});

/// Reads extents back from a breaks export, or from a bare JSON array.
/// Throws InvalidParameter.
std::vector<double> parse_breaks(std::string_view text);

}  // namespace binx
