// Interval-based and human-centered methods, plus unclassed.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "binx/error.hpp"
#include "binx/methods.hpp"
#include "method_support.hpp"

namespace binx {

using detail::format_number;

BinningResult equal_interval(const FeatureSeries& series, int k) {
    detail::require_bin_count(k);
    const auto spec = MethodSpec::of(Method::EqualInterval, k);
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    const double width = (data.max - data.min) / k;
    std::vector<double> e(static_cast<std::size_t>(k) + 1);
    e.front() = data.min;
    for (int i = 1; i < k; ++i) e[static_cast<std::size_t>(i)] = data.min + i * width;
    e.back() = data.max;
    return make_result(series, spec, std::move(e));
}

BinningResult defined_interval(const FeatureSeries& series, double size) {
    if (!(size > 0.0) || !std::isfinite(size))
        throw Error(ErrorCode::InvalidIntervalSize, "interval size must be positive, got " + format_number(size));
    MethodSpec spec = MethodSpec::of(Method::DefinedInterval);
    spec.defined_interval_size = size;
    spec = normalized(spec);
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    const double bins = std::ceil((data.max - data.min) / size);
    if (bins > kMaxBinCount)
        throw Error(ErrorCode::TooManyBins, "interval size " + format_number(size) + " yields " +
                                                format_number(bins) + " bins (limit " +
                                                std::to_string(kMaxBinCount) + ")");
    std::vector<double> e{data.min};
    for (int i = 1;; ++i) {
        const double b = data.min + i * size;
        if (!(b < data.max)) break;
        e.push_back(b);
    }
    e.push_back(data.max);
    return make_result(series, spec, std::move(e));
}

BinningResult geometric_interval(const FeatureSeries& series, int k) {
    detail::require_bin_count(k);
    const auto spec = MethodSpec::of(Method::GeometricInterval, k);
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    std::vector<Note> notes;
    // The progression needs a positive start; shift the data so min maps to 1.
    const double shift = data.min > 0.0 ? 0.0 : 1.0 - data.min;
    if (shift != 0.0)
        notes.push_back({"ShiftedForGeometric", "values shifted by " + format_number(shift) +
                                                    " so the minimum is positive; extents shifted back"});
    const double lo = data.min + shift;
    const double hi = data.max + shift;
    const double ratio = std::pow(hi / lo, 1.0 / k);

    std::vector<double> e{data.min};
    for (int i = 1; i < k; ++i) {
        const double b = lo * std::pow(ratio, i) - shift;
        if (b > e.back() && b < data.max) {
            e.push_back(b);
        } else {
            notes.push_back({"BreakDropped", "geometric break " + std::to_string(i) +
                                                 " is not distinct after shifting back"});
        }
    }
    e.push_back(data.max);
    return make_result(series, spec, std::move(e), std::move(notes));
}

BinningResult exponential_bin_sizes(const FeatureSeries& series, int k, double growth) {
    detail::require_bin_count(k);
    if (!(growth > 1.0) || !std::isfinite(growth))
        throw Error(ErrorCode::InvalidGrowth, "growth factor must exceed 1, got " + format_number(growth));
    MethodSpec spec = MethodSpec::of(Method::ExponentialBinSizes, k);
    spec.exp_growth = growth;
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    // Target populations proportional to growth^(j-1), normalized so the
    // largest weight is 1 to stay finite for large k.
    const std::size_t n = data.sorted.size();
    const auto bins = static_cast<std::size_t>(k);
    std::vector<double> weight(bins);
    for (std::size_t j = 0; j < bins; ++j) weight[j] = std::pow(growth, static_cast<double>(j) - (k - 1));
    const double total_weight = std::accumulate(weight.begin(), weight.end(), 0.0);

    std::vector<std::size_t> sizes(bins);
    std::vector<double> remainder(bins);
    std::size_t assigned = 0;
    for (std::size_t j = 0; j < bins; ++j) {
        const double raw = static_cast<double>(n) * weight[j] / total_weight;
        sizes[j] = static_cast<std::size_t>(std::floor(raw));
        remainder[j] = raw - std::floor(raw);
        assigned += sizes[j];
    }
    // Largest remainder; ties to the lowest index.
    std::vector<std::size_t> order(bins);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++sizes[order[i % bins]];

    std::vector<Note> notes;
    std::vector<detail::BreakCandidate> candidates;
    std::size_t cumulative = 0;
    for (std::size_t j = 0; j + 1 < bins; ++j) {
        cumulative += sizes[j];
        const std::string label = "exponential break " + std::to_string(j + 1);
        if (cumulative == 0 || cumulative >= n) {
            notes.push_back({"BreakDropped", label + " has an empty target bin on one side"});
            continue;
        }
        const double a = data.sorted[cumulative - 1];
        const double b = data.sorted[cumulative];
        candidates.push_back({a + (b - a) / 2.0, true, label});
    }
    auto interior = detail::place_breaks(data.sorted, candidates, notes);
    return make_result(series, spec, detail::with_outer(data.min, interior, data.max), std::move(notes));
}

BinningResult maximum_breaks(const FeatureSeries& series, int k) {
    detail::require_bin_count(k, 2);
    const auto spec = MethodSpec::of(Method::MaximumBreaks, k);
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    const auto distinct = detail::distinct_weighted(data.sorted).values;
    if (distinct.size() < static_cast<std::size_t>(k))
        throw Error(ErrorCode::NotEnoughDistinctValues, "maximum breaks with k=" + std::to_string(k) +
                                                            " needs at least k distinct values, got " +
                                                            std::to_string(distinct.size()));
    std::vector<std::size_t> gaps(distinct.size() - 1);
    std::iota(gaps.begin(), gaps.end(), 0);
    std::stable_sort(gaps.begin(), gaps.end(), [&](std::size_t a, std::size_t b) {
        return distinct[a + 1] - distinct[a] > distinct[b + 1] - distinct[b];
    });
    gaps.resize(static_cast<std::size_t>(k - 1));
    std::sort(gaps.begin(), gaps.end());

    std::vector<double> interior;
    for (const auto g : gaps) interior.push_back(distinct[g] + (distinct[g + 1] - distinct[g]) / 2.0);
    return make_result(series, spec, detail::with_outer(data.min, interior, data.max));
}

namespace {

// A "nice" step m * 10^exponent with m in {1, 2, 5}.
struct NiceStep {
    int mantissa;
    int exponent;

    double value() const { return mantissa * std::pow(10.0, exponent); }
    // i * step, computed so that decimal steps land on the nearest double.
    double multiple(long long i) const {
        const double scaled = static_cast<double>(i * mantissa);
        return exponent >= 0 ? scaled * std::pow(10.0, exponent) : scaled / std::pow(10.0, -exponent);
    }
};

NiceStep choose_step(double target) {
    const int base = static_cast<int>(std::floor(std::log10(target)));
    NiceStep best{1, base};
    double best_diff = std::abs(best.value() - target);
    for (int e = base - 1; e <= base + 1; ++e) {
        for (const int m : {1, 2, 5}) {
            const NiceStep s{m, e};
            const double diff = std::abs(s.value() - target);
            if (diff < best_diff || (diff == best_diff && s.value() < best.value())) {
                best = s;
                best_diff = diff;
            }
        }
    }
    return best;
}

}  // namespace

BinningResult pretty_breaks(const FeatureSeries& series, int k) {
    detail::require_bin_count(k);
    const auto spec = MethodSpec::of(Method::PrettyBreaks, k);
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    const NiceStep step = choose_step((data.max - data.min) / k);
    const double ratio = data.min / step.value();
    auto start = static_cast<long long>(std::floor(ratio + 1e-9 * std::max(1.0, std::abs(ratio))));
    while (step.multiple(start) > data.min) --start;

    std::vector<double> e{step.multiple(start)};
    for (long long i = start + 1; e.back() < data.max; ++i) {
        e.push_back(step.multiple(i));
        if (e.size() > static_cast<std::size_t>(kMaxBinCount) + 1)
            throw Error(ErrorCode::TooManyBins, "pretty breaks exceeded the bin limit");
    }
    std::vector<Note> notes;
    if (static_cast<int>(e.size()) - 1 != k)
        notes.push_back({"BinCountAdjusted", "step " + format_number(step.value()) + " gives " +
                                                 std::to_string(e.size() - 1) + " bins instead of " +
                                                 std::to_string(k)});
    return make_result(series, spec, std::move(e), std::move(notes));
}

BinningResult manual_interval(const FeatureSeries& series, std::span<const double> breaks) {
    if (!strictly_increasing(breaks))
        throw Error(ErrorCode::NonMonotoneBreaks, "manual breaks must be strictly increasing");
    for (const double b : breaks)
        if (!std::isfinite(b)) throw Error(ErrorCode::NonMonotoneBreaks, "manual breaks must be finite");
    MethodSpec spec = MethodSpec::of(Method::ManualInterval);
    spec.manual_breaks.assign(breaks.begin(), breaks.end());
    spec = normalized(spec);
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    std::vector<Note> notes;
    if (breaks.empty()) notes.push_back({"NoBreaks", "no manual breaks given; using a single bin"});
    std::vector<double> e;
    e.push_back(breaks.empty() ? data.min : std::min(breaks.front(), data.min));
    for (const double b : breaks)
        if (b > e.back()) e.push_back(b);
    const double top = breaks.empty() ? data.max : std::max(breaks.back(), data.max);
    if (top > e.back()) e.push_back(top);
    if (e.size() < 2) e.push_back(top + std::max(std::abs(top), 1.0) * 1e-9);
    return make_result(series, spec, std::move(e), std::move(notes));
}

BinningResult unclassed(const FeatureSeries& series) {
    const auto spec = MethodSpec::of(Method::Unclassed);
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    auto r = make_result(series, spec, {data.min, data.max});
    std::vector<std::optional<double>> pos(series.size());
    const double span = data.max - data.min;
    for (std::size_t i = 0; i < series.size(); ++i)
        if (!series.is_missing(i)) pos[i] = (series.values()[i] - data.min) / span;
    r.unclassed_positions = std::move(pos);
    return r;
}

}  // namespace binx
