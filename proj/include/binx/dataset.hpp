#pragma once

#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binx/series.hpp"

namespace binx {

/// A parsed CSV file: header names plus raw cell text, one row per feature.
class AttributeTable {
public:
    AttributeTable(std::string id_column, std::vector<std::string> header, std::vector<std::vector<std::string>> rows);

    const std::string& id_column() const noexcept { return id_column_; }
    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<FeatureId>& ids() const noexcept { return ids_; }
    std::size_t row_count() const noexcept { return rows_.size(); }

    bool has_column(std::string_view name) const;
    /// Cells converted to reals; blanks, NA, NaN and null become missing.
    /// Throws MissingColumn, UnparseableRow.
    std::vector<double> numeric_column(std::string_view name) const;
    /// Columns (other than the id) whose every cell is a number or missing.
    std::vector<std::string> numeric_columns() const;

private:
    std::size_t column_index(std::string_view name) const;

    std::string id_column_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<FeatureId> ids_;
};

/// RFC 4180 CSV with a header row. Throws MissingColumn, UnparseableRow,
/// DuplicateId.
AttributeTable parse_attributes(std::string_view csv, const std::string& id_column);

/// True for cells treated as missing: "", NA, NaN, null (any case).
bool is_missing_token(std::string_view cell);

/// GeoJSON FeatureCollection restricted to (Multi)Polygon features.
struct GeometryCollection {
    std::vector<FeatureId> ids;
    nlohmann::json collection;
    // Empty when ids come from each feature's top-level "id".
    std::string id_property;
};

/// Ids come from properties[id_property] when given, else the feature's
/// "id". Throws InvalidGeoJson, MissingIdProperty, DuplicateId.
GeometryCollection parse_geometry(std::string_view geojson, const std::string& id_property = {});

struct JoinReport {
    std::size_t matched = 0;
    std::vector<FeatureId> unmatched_geometry_ids;
    std::vector<FeatureId> unmatched_attribute_ids;
};

/// Attributes, optionally joined to geometry. Series follow geometry order
/// when geometry is present (unmatched geometry features are missing), and
/// table order otherwise.
class Dataset {
public:
    Dataset(AttributeTable attributes, std::optional<GeometryCollection> geometry);

    const AttributeTable& attributes() const noexcept { return attributes_; }
    const std::optional<GeometryCollection>& geometry() const noexcept { return geometry_; }
    const JoinReport& join_report() const noexcept { return report_; }

    /// Throws UnknownAttribute, UnparseableRow.
    FeatureSeries series(const std::string& attribute) const;

private:
    AttributeTable attributes_;
    std::optional<GeometryCollection> geometry_;
    JoinReport report_;
};

/// Throws EmptyJoin when geometry is given and no id matches.
Dataset join(AttributeTable attributes, std::optional<GeometryCollection> geometry);

std::string read_file(const std::string& path);

}  // namespace binx
