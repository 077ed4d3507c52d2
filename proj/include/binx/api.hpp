#pragma once

// Request handlers shared by the CLI and the HTTP service. Each returns the
// exact document both front-ends emit, so their outputs stay byte-identical.

#include <optional>
#include <string>
#include <vector>

#include "binx/dataset.hpp"
#include "binx/export.hpp"
#include "binx/json_io.hpp"
#include "binx/palette.hpp"
#include "binx/reclassify.hpp"

namespace binx::api {

/// Parses and joins uploaded text. Geometry ids come from
/// properties[id_property]; an empty id_property falls back to
/// properties[id_column] when present, else the feature "id".
Dataset load_dataset(std::string_view csv, const std::string& id_column, std::optional<std::string_view> geojson,
                     std::string id_property = {});

/// Value column when given, otherwise the first numeric column.
/// Throws UnknownAttribute.
std::string resolve_attribute(const Dataset& dataset, const std::optional<std::string>& attribute);

ojson profile(const FeatureSeries& series, int histogram_bins, bool show_missing);

/// {datasetId, joinReport, attributes, profile}
ojson dataset_summary(const std::string& dataset_id, const Dataset& dataset, const std::string& attribute);

ojson methods(const CustomMethodStore* customs);

/// Result plus its rules lint under "lint".
ojson bin(const FeatureSeries& series, const MethodSpec& spec, const CustomMethodSource* customs);

/// All sixteen built-ins at bin count k keyed by method id. A method that
/// cannot run on this series reports {"error": {...}} in its slot.
ojson bin_all(const FeatureSeries& series, int k, const CustomMethodSource* customs);

/// One row per spec: method, bin count, extents, widths, sizes.
ojson compare(const FeatureSeries& series, const std::vector<MethodSpec>& specs, const CustomMethodSource* customs);

/// Same rows flattened to CSV (one line per bin).
std::string compare_csv(const ojson& table);

/// {matrix, resiliency}; empty `members` selects the defaults for k.
ojson combine(const FeatureSeries& series, std::vector<std::string> members, int k,
              const CustomMethodSource* customs);

ojson paint(const std::vector<double>& extents, const std::vector<PinConstraint>& pins, const FeatureSeries& series);

/// Parses "value:bin" or "id:<feature>:bin". Throws InvalidPin.
PinConstraint parse_pin(std::string_view text);

/// Text for "--bins given but ignored" cases, e.g. percentile.
std::optional<std::string> fixed_count_warning(const MethodSpec& spec, bool bins_given);

/// HTTP status for an engine error.
int http_status(ErrorCode code);
/// Process exit code for an engine error.
int exit_code(ErrorCode code);

}  // namespace binx::api
