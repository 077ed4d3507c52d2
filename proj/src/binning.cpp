#include "binx/binning.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "binx/error.hpp"

namespace binx {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 16> kIds{{
    {Method::Unclassed, "unclassed"},
    {Method::DefinedInterval, "defined_interval"},
    {Method::EqualInterval, "equal_interval"},
    {Method::PrettyBreaks, "pretty_breaks"},
    {Method::GeometricInterval, "geometric_interval"},
    {Method::ExponentialBinSizes, "exponential_bin_sizes"},
    {Method::ManualInterval, "manual_interval"},
    {Method::Quantile, "quantile"},
    {Method::Percentile, "percentile"},
    {Method::BoxPlot, "box_plot"},
    {Method::StdDeviation, "std_deviation"},
    {Method::MaximumBreaks, "maximum_breaks"},
    {Method::NaturalBreaks, "natural_breaks"},
    {Method::CkMeans, "ckmeans"},
    {Method::HeadTailBreaks, "head_tail_breaks"},
    {Method::Resiliency, "resiliency"},
}};

constexpr std::string_view kCustomPrefix = "custom:";

}  // namespace

std::string_view method_id(Method m) {
    for (const auto& [method, id] : kIds)
        if (method == m) return id;
    return "custom";
}

std::string method_id(const MethodSpec& spec) {
    if (spec.method == Method::Custom) return std::string(kCustomPrefix) + spec.custom_name;
    return std::string(method_id(spec.method));
}

MethodSpec parse_method_id(std::string_view id) {
    MethodSpec spec;
    if (id.starts_with(kCustomPrefix)) {
        spec.method = Method::Custom;
        spec.custom_name = std::string(id.substr(kCustomPrefix.size()));
        if (spec.custom_name.empty()) throw Error(ErrorCode::UnknownMethod, "empty custom method name");
        return spec;
    }
    for (const auto& [method, name] : kIds) {
        if (name == id) {
            spec.method = method;
            return spec;
        }
    }
    throw Error(ErrorCode::UnknownMethod, "unknown method '" + std::string(id) + "'");
}

const std::vector<Method>& builtin_methods() {
    static const std::vector<Method> all = [] {
        std::vector<Method> v;
        for (const auto& entry : kIds) v.push_back(entry.first);
        return v;
    }();
    return all;
}

bool BinningResult::has_note(std::string_view code) const {
    return std::any_of(notes.begin(), notes.end(), [&](const Note& n) { return n.code == code; });
}

bool strictly_increasing(std::span<const double> xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) return false;
    return true;
}

std::vector<double> degenerate_extents(double v) {
    return {v, v + std::max(std::abs(v), 1.0) * 1e-9};
}

int bin_of(double value, std::span<const double> extents) {
    const int k = static_cast<int>(extents.size()) - 1;
    if (value <= extents.front()) return 1;
    if (value >= extents.back()) return k;
    const auto it = std::upper_bound(extents.begin(), extents.end(), value);
    return static_cast<int>(it - extents.begin());
}

Assignment assign(const FeatureSeries& series, std::span<const double> extents) {
    series.require_valid();
    if (extents.size() < 2 || !strictly_increasing(extents))
        throw Error(ErrorCode::NonMonotoneExtents, "extents must hold at least two strictly increasing values");

    Assignment out;
    out.bins.resize(series.size());
    out.sizes.assign(extents.size() - 1, 0);
    const auto& values = series.values();
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.is_missing(i)) continue;
        const double v = values[i];
        if (v < extents.front() || v > extents.back()) ++out.clamped;
        const int bin = bin_of(v, extents);
        out.bins[i] = bin;
        ++out.sizes[static_cast<std::size_t>(bin - 1)];
    }
    return out;
}

BinningResult make_result(const FeatureSeries& series, const MethodSpec& spec, std::vector<double> extents,
                          std::vector<Note> notes) {
    auto assignment = assign(series, extents);
    BinningResult r;
    r.method = spec;
    r.extents = std::move(extents);
    r.bin_sizes = std::move(assignment.sizes);
    r.feature_ids = series.feature_ids();
    r.assignments = std::move(assignment.bins);
    r.notes = std::move(notes);
    if (assignment.clamped > 0)
        r.notes.push_back({"OutOfRange", std::to_string(assignment.clamped) +
                                             " value(s) outside the extents were clamped to the nearest bin"});
    return r;
}

std::string_view to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::RangeNotCovered: return "RangeNotCovered";
        case RuleKind::VacantBin: return "VacantBin";
        case RuleKind::OverlappingExtents: return "OverlappingExtents";
        case RuleKind::UnbalancedBins: return "UnbalancedBins";
        case RuleKind::ArbitraryBreaks: return "ArbitraryBreaks";
    }
    return "Unknown";
}

std::vector<RuleViolation> validate_rules(const BinningResult& result, const FeatureSeries& series,
                                          const RuleOptions& options) {
    series.require_valid();
    if (result.feature_ids != series.feature_ids() || result.assignments.size() != series.size())
        throw Error(ErrorCode::MismatchedInputs, "result was not produced over this series");
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.is_missing(i) != !result.assignments[i].has_value())
            throw Error(ErrorCode::MismatchedInputs, "missing-value pattern differs from the series");
    }

    std::vector<RuleViolation> out;
    const auto& e = result.extents;
    if (e.size() < 2) {
        out.push_back({RuleKind::OverlappingExtents, std::nullopt, "fewer than two extents"});
        return out;
    }

    const auto sorted = series.sorted_valid_values();
    if (sorted.front() < e.front() || sorted.back() > e.back()) {
        out.push_back({RuleKind::RangeNotCovered, std::nullopt,
                       "extents [" + std::to_string(e.front()) + ", " + std::to_string(e.back()) +
                           "] do not cover the data range [" + std::to_string(sorted.front()) + ", " +
                           std::to_string(sorted.back()) + "]"});
    }
    if (!strictly_increasing(e))
        out.push_back({RuleKind::OverlappingExtents, std::nullopt, "extents are not strictly increasing"});

    // Recount rather than trust bin_sizes.
    std::vector<std::size_t> counts(e.size() - 1, 0);
    for (const auto& a : result.assignments) {
        if (!a) continue;
        if (*a < 1 || *a > static_cast<int>(counts.size()))
            throw Error(ErrorCode::MismatchedInputs, "assignment outside 1..k");
        ++counts[static_cast<std::size_t>(*a - 1)];
    }
    if (result.method.method != Method::Unclassed) {
        std::size_t lo = 0, hi = 0;
        for (std::size_t j = 0; j < counts.size(); ++j) {
            if (counts[j] == 0) {
                out.push_back({RuleKind::VacantBin, static_cast<int>(j + 1),
                               "bin " + std::to_string(j + 1) + " holds no features"});
                continue;
            }
            lo = lo == 0 ? counts[j] : std::min(lo, counts[j]);
            hi = std::max(hi, counts[j]);
        }
        if (lo > 0 && static_cast<double>(hi) / static_cast<double>(lo) > options.unbalanced_ratio) {
            out.push_back({RuleKind::UnbalancedBins, std::nullopt,
                           "largest/smallest non-empty bin ratio " + std::to_string(hi) + "/" +
                               std::to_string(lo) + " exceeds " + std::to_string(options.unbalanced_ratio)});
        }
    }
    if (result.method.method == Method::ManualInterval || result.method.method == Method::Custom)
        out.push_back({RuleKind::ArbitraryBreaks, std::nullopt,
                       "breaks were set by hand and may not follow a mathematical relationship to the data"});
    return out;
}

}  // namespace binx
