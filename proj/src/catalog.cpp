#include <algorithm>

#include "binx/error.hpp"
#include "binx/methods.hpp"

namespace binx {

std::string_view to_string(Category c) {
    switch (c) {
        case Category::IntervalBased: return "interval_based";
        case Category::Statistical: return "statistical";
        case Category::Iterative: return "iterative";
        case Category::HumanCentered: return "human_centered";
        case Category::Other: return "other";
    }
    return "other";
}

namespace {

const ParameterInfo kBinCount{"binCount", "integer", "5"};

std::vector<MethodDescriptor> build_catalog() {
    std::vector<MethodDescriptor> c;
    auto add = [&](Method m, std::string name, Category cat, std::string brief, std::string details,
                   std::vector<ParameterInfo> params) {
        c.push_back({m, std::string(method_id(m)), std::move(name), cat, std::move(brief), std::move(details),
                     std::move(params)});
    };

    add(Method::Unclassed, "Unclassed", Category::Other,
        "No bins: each region is colored in proportion\nto where its value sits between min and max.",
        "Maps every value linearly onto [0, 1] between the data minimum and maximum and colors it on a "
        "continuous ramp. Preserves numeric relationships but makes exact classes hard to read.",
        {});
    add(Method::DefinedInterval, "Defined Interval", Category::IntervalBased,
        "Bins of a fixed width chosen by the user,\nstarting at the data minimum.",
        "Starts at the minimum and steps by the defined interval size until the maximum is reached; the "
        "bin count follows from the range and the last bin may be narrower. Unaffected by the bin count.",
        {{"definedIntervalSize", "number", "1"}});
    add(Method::EqualInterval, "Equal Interval", Category::IntervalBased,
        "Splits the data range into bins\nof identical width.",
        "Divides [min, max] into k intervals of width (max - min) / k. Easy to read but sensitive to "
        "outliers, which can leave most regions in one or two bins.",
        {kBinCount});
    add(Method::PrettyBreaks, "Pretty Breaks", Category::HumanCentered,
        "Equal-width bins on round numbers\n(multiples of 1, 2 or 5 times a power of ten).",
        "Picks the round step closest to range / k and aligns breaks to its multiples, so the legend reads "
        "cleanly. The resulting bin count may differ slightly from the one requested.",
        {kBinCount});
    add(Method::GeometricInterval, "Geometric Interval", Category::IntervalBased,
        "Bin widths grow by a constant factor,\nsuited to skewed, positive data.",
        "Breaks form a geometric progression from min to max, i.e. equal steps in log space. Data with "
        "non-positive values are shifted before computing and shifted back afterwards.",
        {kBinCount});
    add(Method::ExponentialBinSizes, "Exponential", Category::IntervalBased,
        "Bin populations grow exponentially,\neach bin holding about twice the previous.",
        "Targets bin sizes proportional to growth^(j-1), rounded by largest remainder, and places each break "
        "midway between the last value of one bin and the first of the next.",
        {kBinCount, {"expGrowth", "number", "2"}});
    add(Method::MaximumBreaks, "Maximum Breaks", Category::IntervalBased,
        "Breaks fall in the k-1 widest gaps\nbetween consecutive sorted values.",
        "Sorts the distinct values, ranks the gaps between neighbours and breaks at the midpoints of the "
        "k-1 largest gaps. Highlights natural discontinuities and isolates outliers.",
        {kBinCount});
    add(Method::Quantile, "Quantile", Category::Statistical,
        "Each bin holds about the same\nnumber of regions.",
        "Breaks at the i/k quantiles using linear interpolation between order statistics. Bins are balanced "
        "in count but can have very different widths, and tied values may unbalance them.",
        {kBinCount});
    add(Method::Percentile, "Percentile", Category::Statistical,
        "Six fixed bins at the 1st, 10th, 50th,\n90th and 99th percentiles.",
        "Always six bins; breaks at the 1st, 10th, 50th, 90th and 99th percentiles. Emphasizes the extremes "
        "of the distribution. The bin count setting does not apply.",
        {});
    add(Method::BoxPlot, "Box Plot", Category::Statistical,
        "Six bins from the box plot: quartiles\nplus the lower and upper outlier fences.",
        "Breaks at Q1 - f*IQR, Q1, median, Q3 and Q3 + f*IQR. Fences outside the data range are removed, "
        "which reduces the bin count; each removal is reported.",
        {{"iqrFactor", "number", "1.5"}});
    add(Method::StdDeviation, "Mean - Standard Deviation", Category::Statistical,
        "Breaks at whole or half standard deviations\nabove and below the mean.",
        "Places breaks symmetrically around the mean in steps of one (or half a) population standard "
        "deviation. Even bin counts put a break on the mean; odd counts center a bin on it.",
        {kBinCount, {"stdDevStep", "string", "whole"}});
    add(Method::NaturalBreaks, "Natural Breaks", Category::Iterative,
        "Groups similar values together by minimizing\nthe variance within each bin (Jenks).",
        "Exact Fisher-Jenks optimization: the partition of the sorted values into k contiguous groups with "
        "the smallest total squared deviation from group means.",
        {kBinCount});
    add(Method::CkMeans, "CK-Means", Category::Iterative,
        "Optimal one-dimensional k-means clustering\nsolved exactly by dynamic programming.",
        "Finds the globally optimal 1-D k-means partition using prefix sums and a divide-and-conquer "
        "dynamic program. Same objective as natural breaks, computed by a faster route.",
        {kBinCount});
    add(Method::HeadTailBreaks, "Head-Tail Breaks", Category::Iterative,
        "Repeatedly splits at the mean while the head\nabove it stays a small minority.",
        "For heavy-tailed data: break at the mean, keep the values above it (the head) and repeat while the "
        "head is smaller than the threshold share of its parent. The bin count emerges from the data.",
        {{"headTailThreshold", "number", "0.4"}});
    add(Method::ManualInterval, "Manual Interval", Category::HumanCentered,
        "Breaks typed in by the mapmaker,\nextended to cover the full data range.",
        "Uses the given break values as-is; the outer extents are widened to the data minimum and maximum "
        "when needed. Useful for round or domain-meaningful thresholds.",
        {{"manualBreaks", "number[]", "[]"}});
    add(Method::Resiliency, "Resiliency", Category::Other,
        "Consensus of several methods: each region goes\nto the bin most methods agree on.",
        "Runs the member methods at the same bin count, takes each region's most frequent bin, and places "
        "breaks wherever that majority bin changes along the sorted values.",
        {kBinCount, {"memberMethods", "string[]", "equal_interval,quantile,maximum_breaks,natural_breaks,ckmeans,geometric_interval"}});

    // Catalog order follows builtin_methods().
    std::vector<MethodDescriptor> ordered;
    for (const Method m : builtin_methods()) {
        const auto it = std::find_if(c.begin(), c.end(), [&](const MethodDescriptor& d) { return d.method == m; });
        ordered.push_back(*it);
    }
    return ordered;
}

}  // namespace

const std::vector<MethodDescriptor>& method_catalog() {
    static const std::vector<MethodDescriptor> catalog = build_catalog();
    return catalog;
}

const MethodDescriptor& descriptor(Method m) {
    for (const auto& d : method_catalog())
        if (d.method == m) return d;
    throw Error(ErrorCode::UnknownMethod, "no descriptor for custom methods");
}

std::vector<std::string> default_consensus_members() {
    return {"equal_interval", "quantile",           "maximum_breaks", "natural_breaks",
            "ckmeans",        "geometric_interval", "percentile",     "box_plot"};
}

std::vector<std::string> default_consensus_members(int k) {
    auto members = default_consensus_members();
    if (k != 6) members.resize(6);
    return members;
}

MethodSpec normalized(const MethodSpec& spec) {
    MethodSpec n;
    n.method = spec.method;
    switch (spec.method) {
        case Method::EqualInterval:
        case Method::PrettyBreaks:
        case Method::GeometricInterval:
        case Method::Quantile:
        case Method::MaximumBreaks:
        case Method::NaturalBreaks:
        case Method::CkMeans: n.bin_count = spec.bin_count; break;
        case Method::DefinedInterval: n.defined_interval_size = spec.defined_interval_size; break;
        case Method::ExponentialBinSizes:
            n.bin_count = spec.bin_count;
            n.exp_growth = spec.exp_growth;
            break;
        case Method::ManualInterval: n.manual_breaks = spec.manual_breaks; break;
        case Method::BoxPlot: n.iqr_factor = spec.iqr_factor; break;
        case Method::StdDeviation:
            n.bin_count = spec.bin_count;
            n.std_dev_step = spec.std_dev_step;
            break;
        case Method::HeadTailBreaks: n.head_tail_threshold = spec.head_tail_threshold; break;
        case Method::Resiliency:
            n.bin_count = spec.bin_count;
            n.member_methods =
                spec.member_methods.empty() ? default_consensus_members(spec.bin_count) : spec.member_methods;
            break;
        case Method::Custom: n.custom_name = spec.custom_name; break;
        case Method::Unclassed:
        case Method::Percentile: break;
    }
    return n;
}

namespace {

BinningResult dispatch(const FeatureSeries& series, const MethodSpec& s, const CustomMethodSource* customs) {
    switch (s.method) {
        case Method::Unclassed: return unclassed(series);
        case Method::DefinedInterval: return defined_interval(series, s.defined_interval_size);
        case Method::EqualInterval: return equal_interval(series, s.bin_count);
        case Method::PrettyBreaks: return pretty_breaks(series, s.bin_count);
        case Method::GeometricInterval: return geometric_interval(series, s.bin_count);
        case Method::ExponentialBinSizes: return exponential_bin_sizes(series, s.bin_count, s.exp_growth);
        case Method::ManualInterval: return manual_interval(series, s.manual_breaks);
        case Method::Quantile: return quantile(series, s.bin_count);
        case Method::Percentile: return percentile(series);
        case Method::BoxPlot: return box_plot(series, s.iqr_factor);
        case Method::StdDeviation: return std_deviation(series, s.bin_count, s.std_dev_step);
        case Method::MaximumBreaks: return maximum_breaks(series, s.bin_count);
        case Method::NaturalBreaks: return natural_breaks(series, s.bin_count);
        case Method::CkMeans: return ckmeans(series, s.bin_count);
        case Method::HeadTailBreaks: return head_tail_breaks(series, s.head_tail_threshold);
        case Method::Resiliency: {
            std::vector<MethodSpec> members;
            for (const auto& id : s.member_methods) members.push_back(parse_method_id(id));
            return resiliency(series, members, s.bin_count, customs);
        }
        case Method::Custom: {
            const auto extents = customs ? customs->find_extents(s.custom_name) : std::nullopt;
            if (!extents) throw Error(ErrorCode::UnknownMethod, "no saved method named '" + s.custom_name + "'");
            series.require_valid();
            return make_result(series, s, *extents);
        }
    }
    throw Error(ErrorCode::UnknownMethod, "unhandled method");
}

}  // namespace

BinningResult run_method(const FeatureSeries& series, const MethodSpec& spec, const CustomMethodSource* customs) {
    const MethodSpec clean = normalized(spec);
    auto result = dispatch(series, clean, customs);
    result.method = clean;
    return result;
}

}  // namespace binx
