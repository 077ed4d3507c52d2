#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace binx {

using FeatureId = std::string;

/// One attribute of a dataset, aligned to region ids. Missing entries are
/// carried explicitly; their stored value is NaN and they never take part
/// in statistics or bin assignment.
class FeatureSeries {
public:
    FeatureSeries() = default;

    /// NaN entries in `values` are treated as missing. Throws on length
    /// mismatch, duplicate ids, or infinite values.
    FeatureSeries(std::vector<FeatureId> feature_ids, std::vector<double> values,
                  std::string attribute_name = {}, std::optional<std::string> units = {});

    static FeatureSeries from_optional(std::vector<FeatureId> feature_ids,
                                       const std::vector<std::optional<double>>& values,
                                       std::string attribute_name = {},
                                       std::optional<std::string> units = {});

    /// Convenience for tests and scripts: ids are "0", "1", ...
    static FeatureSeries from_values(std::span<const double> values, std::string attribute_name = {});

    std::size_t size() const noexcept { return ids_.size(); }
    std::size_t valid_count() const noexcept { return valid_count_; }
    std::size_t missing_count() const noexcept { return ids_.size() - valid_count_; }

    const std::vector<FeatureId>& feature_ids() const noexcept { return ids_; }
    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<bool>& missing_mask() const noexcept { return missing_; }
    const std::string& attribute_name() const noexcept { return attribute_; }
    const std::optional<std::string>& units() const noexcept { return units_; }

    bool is_missing(std::size_t i) const { return missing_[i]; }
    std::optional<std::size_t> index_of(const FeatureId& id) const;

    /// Non-missing values in ascending order.
    std::vector<double> sorted_valid_values() const;
    /// Throws EmptySeries when no value is present.
    void require_valid() const;

private:
    std::vector<FeatureId> ids_;
    std::vector<double> values_;
    std::vector<bool> missing_;
    std::string attribute_;
    std::optional<std::string> units_;
    std::size_t valid_count_ = 0;
};

}  // namespace binx
