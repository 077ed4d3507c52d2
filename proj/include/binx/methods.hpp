#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "binx/binning.hpp"
#include "binx/series.hpp"

namespace binx {

enum class Category { IntervalBased, Statistical, Iterative, HumanCentered, Other };

std::string_view to_string(Category c);

struct ParameterInfo {
    std::string name;
    std::string type;
    std::string default_value;
};

struct MethodDescriptor {
    Method method;
    std::string method_id;
    std::string display_name;
    Category category;
    std::string short_description;  // two lines, '\n' separated
    std::string long_description;
    std::vector<ParameterInfo> parameters;
};

/// The sixteen built-in descriptors in catalog order.
const std::vector<MethodDescriptor>& method_catalog();
const MethodDescriptor& descriptor(Method m);

/// Resolves saved custom methods by name. Implemented by the custom-method
/// store; kept abstract so the engine has no persistence dependency.
class CustomMethodSource {
public:
    virtual ~CustomMethodSource() = default;
    virtual std::optional<std::vector<double>> find_extents(const std::string& name) const = 0;
};

// Interval-based
BinningResult equal_interval(const FeatureSeries& series, int k);
BinningResult defined_interval(const FeatureSeries& series, double size);
BinningResult geometric_interval(const FeatureSeries& series, int k);
BinningResult exponential_bin_sizes(const FeatureSeries& series, int k, double growth = 2.0);
BinningResult maximum_breaks(const FeatureSeries& series, int k);

// Statistical
BinningResult quantile(const FeatureSeries& series, int k);
BinningResult percentile(const FeatureSeries& series);
BinningResult box_plot(const FeatureSeries& series, double iqr_factor = 1.5);
BinningResult std_deviation(const FeatureSeries& series, int k, StdDevStep step = StdDevStep::Whole);

// Iterative
BinningResult natural_breaks(const FeatureSeries& series, int k);
BinningResult ckmeans(const FeatureSeries& series, int k);
BinningResult head_tail_breaks(const FeatureSeries& series, double threshold = 0.4);

// Human-centered
BinningResult pretty_breaks(const FeatureSeries& series, int k);
BinningResult manual_interval(const FeatureSeries& series, std::span<const double> breaks);

// Other
BinningResult unclassed(const FeatureSeries& series);
BinningResult resiliency(const FeatureSeries& series, const std::vector<MethodSpec>& members, int k,
                         const CustomMethodSource* customs = nullptr);

/// The eight members used by the Combine view when every method has six bins.
std::vector<std::string> default_consensus_members();
/// Default members for a given k: the eight above for k == 6, otherwise the
/// six whose bin count is configurable.
std::vector<std::string> default_consensus_members(int k);

/// Resets parameters that `spec.method` does not read, so that equivalent
/// requests echo identically.
MethodSpec normalized(const MethodSpec& spec);

/// Dispatcher over all methods, including saved custom methods.
BinningResult run_method(const FeatureSeries& series, const MethodSpec& spec,
                         const CustomMethodSource* customs = nullptr);

/// Within-class sum of squared deviations from class means, computed from
/// the result's assignments.
double sdcm(const FeatureSeries& series, const BinningResult& result);

/// Inclusive (type 7) quantile of ascending data, p in [0,1].
double inclusive_quantile(std::span<const double> sorted, double p);

}  // namespace binx
