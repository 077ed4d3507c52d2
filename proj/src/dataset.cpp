#include "binx/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "binx/error.hpp"

namespace binx {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

std::optional<double> parse_real(std::string_view cell) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

// Splits CSV text into records of fields; quoted fields may hold commas,
// doubled quotes and line breaks.
std::vector<std::vector<std::string>> split_csv(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false, field_started = false;
    std::size_t line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!trim(field).empty())
                    throw Error(ErrorCode::UnparseableRow, "stray quote on line " + std::to_string(line));
                field.clear();
                quoted = true;
                field_started = true;
                break;
            case ',':
                record.push_back(std::move(field));
                field.clear();
                field_started = true;
                break;
            case '\r':
                break;
            case '\n':
                if (field_started || !field.empty() || !record.empty()) {
                    record.push_back(std::move(field));
                    records.push_back(std::move(record));
                }
                record.clear();
                field.clear();
                field_started = false;
                ++line;
                break;
            default:
                field += c;
                field_started = true;
        }
    }
    if (quoted) throw Error(ErrorCode::UnparseableRow, "unterminated quoted field");
    if (field_started || !field.empty() || !record.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace

bool is_missing_token(std::string_view cell) {
    cell = trim(cell);
    return cell.empty() || iequals(cell, "NA") || iequals(cell, "NaN") || iequals(cell, "null");
}

AttributeTable::AttributeTable(std::string id_column, std::vector<std::string> header,
                               std::vector<std::vector<std::string>> rows)
    : id_column_(std::move(id_column)), header_(std::move(header)), rows_(std::move(rows)) {
    const auto id = column_index(id_column_);
    std::unordered_set<std::string> seen;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].size() != header_.size())
            throw Error(ErrorCode::UnparseableRow, "row " + std::to_string(r + 2) + " has " +
                                                       std::to_string(rows_[r].size()) + " fields, expected " +
                                                       std::to_string(header_.size()));
        std::string key(trim(rows_[r][id]));
        if (key.empty()) throw Error(ErrorCode::UnparseableRow, "row " + std::to_string(r + 2) + " has an empty id");
        if (!seen.insert(key).second) throw Error(ErrorCode::DuplicateId, "duplicate feature id " + key, key);
        ids_.push_back(std::move(key));
    }
}

std::size_t AttributeTable::column_index(std::string_view name) const {
    const auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) throw Error(ErrorCode::MissingColumn, "no column named '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header_.begin());
}

bool AttributeTable::has_column(std::string_view name) const {
    return std::find(header_.begin(), header_.end(), name) != header_.end();
}

std::vector<double> AttributeTable::numeric_column(std::string_view name) const {
    const auto c = column_index(name);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const auto& cell = rows_[r][c];
        if (is_missing_token(cell)) {
            out.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        const auto v = parse_real(cell);
        if (!v)
            throw Error(ErrorCode::UnparseableRow, "row " + std::to_string(r + 2) + ", column '" + std::string(name) +
                                                       "': '" + cell + "' is not a number");
        out.push_back(*v);
    }
    return out;
}

std::vector<std::string> AttributeTable::numeric_columns() const {
    std::vector<std::string> out;
    for (std::size_t c = 0; c < header_.size(); ++c) {
        if (header_[c] == id_column_) continue;
        const bool numeric = std::all_of(rows_.begin(), rows_.end(), [&](const auto& row) {
            return is_missing_token(row[c]) || parse_real(row[c]).has_value();
        });
        if (numeric) out.push_back(header_[c]);
    }
    return out;
}

AttributeTable parse_attributes(std::string_view csv, const std::string& id_column) {
    auto records = split_csv(csv);
    if (records.empty()) throw Error(ErrorCode::UnparseableRow, "CSV has no header row");
    std::vector<std::string> header;
    for (auto& h : records.front()) header.emplace_back(trim(h));
    records.erase(records.begin());
    return AttributeTable(id_column, std::move(header), std::move(records));
}

namespace {

std::string id_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    return {};
}

}  // namespace

GeometryCollection parse_geometry(std::string_view geojson, const std::string& id_property) {
    GeometryCollection out;
    out.id_property = id_property;
    try {
        out.collection = nlohmann::json::parse(geojson);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidGeoJson, std::string("not valid JSON: ") + e.what());
    }
    const auto& c = out.collection;
    if (!c.is_object() || c.value("type", "") != "FeatureCollection" || !c.contains("features") ||
        !c["features"].is_array())
        throw Error(ErrorCode::InvalidGeoJson, "expected a FeatureCollection with a features array");

    std::unordered_set<std::string> seen;
    std::size_t index = 0;
    for (const auto& f : c["features"]) {
        const auto where = "feature " + std::to_string(index++);
        if (!f.is_object() || f.value("type", "") != "Feature")
            throw Error(ErrorCode::InvalidGeoJson, where + " is not a Feature");
        const auto& g = f.contains("geometry") ? f["geometry"] : nlohmann::json();
        const auto gtype = g.is_object() ? g.value("type", "") : std::string();
        if (gtype != "Polygon" && gtype != "MultiPolygon")
            throw Error(ErrorCode::InvalidGeoJson, where + " must be a Polygon or MultiPolygon");
        if (!g.contains("coordinates") || !g["coordinates"].is_array())
            throw Error(ErrorCode::InvalidGeoJson, where + " has no coordinates");

        std::string id;
        if (!id_property.empty()) {
            if (f.contains("properties") && f["properties"].is_object() && f["properties"].contains(id_property))
                id = id_text(f["properties"][id_property]);
        } else if (f.contains("id")) {
            id = id_text(f["id"]);
        }
        if (id.empty())
            throw Error(ErrorCode::MissingIdProperty,
                        where + (id_property.empty() ? " has no id" : " lacks property '" + id_property + "'"));
        if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, "duplicate feature id " + id, id);
        out.ids.push_back(std::move(id));
    }
    return out;
}

Dataset::Dataset(AttributeTable attributes, std::optional<GeometryCollection> geometry)
    : attributes_(std::move(attributes)), geometry_(std::move(geometry)) {
    if (!geometry_) {
        report_.matched = attributes_.row_count();
        return;
    }
    const std::unordered_set<std::string> attr_ids(attributes_.ids().begin(), attributes_.ids().end());
    const std::unordered_set<std::string> geo_ids(geometry_->ids.begin(), geometry_->ids.end());
    for (const auto& id : geometry_->ids) {
        if (attr_ids.count(id))
            ++report_.matched;
        else
            report_.unmatched_geometry_ids.push_back(id);
    }
    for (const auto& id : attributes_.ids())
        if (!geo_ids.count(id)) report_.unmatched_attribute_ids.push_back(id);
}

FeatureSeries Dataset::series(const std::string& attribute) const {
    if (attribute == attributes_.id_column() || !attributes_.has_column(attribute))
        throw Error(ErrorCode::UnknownAttribute, "no attribute named '" + attribute + "'", attribute);
    const auto values = attributes_.numeric_column(attribute);
    if (!geometry_) return FeatureSeries(attributes_.ids(), values, attribute);

    std::unordered_map<std::string, double> by_id;
    for (std::size_t r = 0; r < values.size(); ++r) by_id.emplace(attributes_.ids()[r], values[r]);
    std::vector<double> joined;
    joined.reserve(geometry_->ids.size());
    for (const auto& id : geometry_->ids) {
        const auto it = by_id.find(id);
        joined.push_back(it == by_id.end() ? std::numeric_limits<double>::quiet_NaN() : it->second);
    }
    return FeatureSeries(geometry_->ids, joined, attribute);
}

Dataset join(AttributeTable attributes, std::optional<GeometryCollection> geometry) {
    Dataset d(std::move(attributes), std::move(geometry));
    if (d.geometry() && d.join_report().matched == 0)
        throw Error(ErrorCode::EmptyJoin, "no geometry feature id matches an attribute row");
    return d;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + path, path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace binx
