#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "binx/series.hpp"

namespace binx {

enum class Method {
    Unclassed,
    DefinedInterval,
    EqualInterval,
    PrettyBreaks,
    GeometricInterval,
    ExponentialBinSizes,
    ManualInterval,
    Quantile,
    Percentile,
    BoxPlot,
    StdDeviation,
    MaximumBreaks,
    NaturalBreaks,
    CkMeans,
    HeadTailBreaks,
    Resiliency,
    Custom,
};

enum class StdDevStep { Whole, Half };

inline constexpr int kDefaultBinCount = 5;
inline constexpr int kMaxBinCount = 1000;

struct MethodSpec {
    Method method = Method::EqualInterval;
    std::string custom_name;  // only for Method::Custom
    int bin_count = kDefaultBinCount;
    double defined_interval_size = 1.0;
    std::vector<double> manual_breaks;
    StdDevStep std_dev_step = StdDevStep::Whole;
    double iqr_factor = 1.5;
    double head_tail_threshold = 0.4;
    std::vector<std::string> member_methods;  // resiliency only
    double exp_growth = 2.0;

    static MethodSpec of(Method m, int k = kDefaultBinCount) {
        MethodSpec s;
        s.method = m;
        s.bin_count = k;
        return s;
    }
};

/// Built-in id ("equal_interval") or "custom:<name>".
std::string method_id(const MethodSpec& spec);
std::string_view method_id(Method m);
/// Parses a built-in id or "custom:<name>"; throws UnknownMethod.
MethodSpec parse_method_id(std::string_view id);
/// The sixteen built-ins in catalog order.
const std::vector<Method>& builtin_methods();

struct Note {
    std::string code;
    std::string message;
    bool operator==(const Note&) const = default;
};

/// Universal output of every method. Bin indices are 1-based; extents hold
/// k+1 strictly increasing values and bin j covers [e_{j-1}, e_j), with the
/// top bin closed.
struct BinningResult {
    MethodSpec method;
    std::vector<double> extents;
    std::vector<std::size_t> bin_sizes;
    std::vector<FeatureId> feature_ids;
    std::vector<std::optional<int>> assignments;
    // unclassed only: (v - min) / (max - min), aligned with feature_ids
    std::optional<std::vector<std::optional<double>>> unclassed_positions;
    std::vector<Note> notes;

    int bin_count() const noexcept { return static_cast<int>(extents.size()) - 1; }
    bool has_note(std::string_view code) const;
};

struct Assignment {
    std::vector<std::optional<int>> bins;
    std::vector<std::size_t> sizes;
    std::size_t clamped = 0;  // values that fell outside [e0, ek]
};

/// Right-open bins with a closed top; out-of-range values clamp to the
/// extreme bin. Throws EmptySeries / NonMonotoneExtents.
Assignment assign(const FeatureSeries& series, std::span<const double> extents);

/// Bin index for a single value under the same rule (clamped).
int bin_of(double value, std::span<const double> extents);

bool strictly_increasing(std::span<const double> xs);

/// Extents for an all-equal series: {v, v + max(|v|,1)*1e-9}.
std::vector<double> degenerate_extents(double v);

/// Runs assign and packages a result, noting any clamping.
BinningResult make_result(const FeatureSeries& series, const MethodSpec& spec, std::vector<double> extents,
                          std::vector<Note> notes = {});

enum class RuleKind { RangeNotCovered, VacantBin, OverlappingExtents, UnbalancedBins, ArbitraryBreaks };

std::string_view to_string(RuleKind kind);

struct RuleViolation {
    RuleKind kind;
    std::optional<int> bin;  // VacantBin only
    std::string message;
};

struct RuleOptions {
    double unbalanced_ratio = 10.0;
};

/// Lints a result against the classic five cartographic rules for class
/// breaks. Throws MismatchedInputs when `result` was not produced over
/// `series`.
std::vector<RuleViolation> validate_rules(const BinningResult& result, const FeatureSeries& series,
                                          const RuleOptions& options = {});

}  // namespace binx
