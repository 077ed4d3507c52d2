#include "binx/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "binx/error.hpp"

namespace binx {

FeatureSeries::FeatureSeries(std::vector<FeatureId> feature_ids, std::vector<double> values,
                             std::string attribute_name, std::optional<std::string> units)
    : ids_(std::move(feature_ids)),
      values_(std::move(values)),
      attribute_(std::move(attribute_name)),
      units_(std::move(units)) {
    if (ids_.size() != values_.size())
        throw Error(ErrorCode::MismatchedInputs, "feature ids and values differ in length");

    std::unordered_set<std::string_view> seen;
    seen.reserve(ids_.size());
    for (const auto& id : ids_) {
        if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, "duplicate feature id '" + id + "'");
    }

    missing_.resize(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (std::isnan(v)) {
            missing_[i] = true;
        } else if (!std::isfinite(v)) {
            throw Error(ErrorCode::InvalidParameter, "non-finite value for feature '" + ids_[i] + "'");
        } else {
            ++valid_count_;
        }
    }
}

FeatureSeries FeatureSeries::from_optional(std::vector<FeatureId> feature_ids,
                                           const std::vector<std::optional<double>>& values,
                                           std::string attribute_name, std::optional<std::string> units) {
    std::vector<double> raw;
    raw.reserve(values.size());
    for (const auto& v : values) raw.push_back(v.value_or(std::numeric_limits<double>::quiet_NaN()));
    return FeatureSeries(std::move(feature_ids), std::move(raw), std::move(attribute_name), std::move(units));
}

FeatureSeries FeatureSeries::from_values(std::span<const double> values, std::string attribute_name) {
    std::vector<FeatureId> ids;
    ids.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) ids.push_back(std::to_string(i));
    return FeatureSeries(std::move(ids), std::vector<double>(values.begin(), values.end()),
                         std::move(attribute_name));
}

std::optional<std::size_t> FeatureSeries::index_of(const FeatureId& id) const {
    const auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
}

std::vector<double> FeatureSeries::sorted_valid_values() const {
    std::vector<double> out;
    out.reserve(valid_count_);
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!missing_[i]) out.push_back(values_[i]);
    std::sort(out.begin(), out.end());
    return out;
}

void FeatureSeries::require_valid() const {
    if (valid_count_ == 0) throw Error(ErrorCode::EmptySeries, "series has no valid values");
}

}  // namespace binx
