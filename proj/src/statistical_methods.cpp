#include <array>
#include <cmath>

#include "binx/error.hpp"
#include "binx/methods.hpp"
#include "method_support.hpp"

namespace binx {

using detail::format_number;

double inclusive_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw Error(ErrorCode::EmptySeries, "quantile of empty data");
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidParameter, "quantile p outside [0,1]");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

BinningResult quantile(const FeatureSeries& series, int k) {
    detail::require_bin_count(k);
    const auto spec = MethodSpec::of(Method::Quantile, k);
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    std::vector<detail::BreakCandidate> candidates;
    for (int i = 1; i < k; ++i)
        candidates.push_back({detail::quantile_at(data.sorted, static_cast<std::size_t>(i), static_cast<std::size_t>(k)),
                              true, "quantile " + std::to_string(i) + "/" + std::to_string(k)});
    std::vector<Note> notes;
    auto interior = detail::place_breaks(data.sorted, candidates, notes);
    return make_result(series, spec, detail::with_outer(data.min, interior, data.max), std::move(notes));
}

BinningResult percentile(const FeatureSeries& series) {
    const auto spec = normalized(MethodSpec::of(Method::Percentile));
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    constexpr std::array<std::size_t, 5> kPercents{1, 10, 50, 90, 99};
    std::vector<detail::BreakCandidate> candidates;
    for (const auto pct : kPercents)
        candidates.push_back(
            {detail::quantile_at(data.sorted, pct, 100), true, std::to_string(pct) + "th percentile"});
    std::vector<Note> notes;
    auto interior = detail::place_breaks(data.sorted, candidates, notes);
    return make_result(series, spec, detail::with_outer(data.min, interior, data.max), std::move(notes));
}

BinningResult box_plot(const FeatureSeries& series, double iqr_factor) {
    if (!(iqr_factor > 0.0) || !std::isfinite(iqr_factor))
        throw Error(ErrorCode::InvalidIqrFactor, "IQR factor must be positive, got " + format_number(iqr_factor));
    MethodSpec spec = MethodSpec::of(Method::BoxPlot);
    spec.iqr_factor = iqr_factor;
    spec = normalized(spec);
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    const double q1 = detail::quantile_at(data.sorted, 1, 4);
    const double q2 = detail::quantile_at(data.sorted, 2, 4);
    const double q3 = detail::quantile_at(data.sorted, 3, 4);
    const double iqr = q3 - q1;
    const std::vector<detail::BreakCandidate> candidates{
        {q1 - iqr_factor * iqr, false, "lower hinge"},
        {q1, true, "first quartile"},
        {q2, true, "median"},
        {q3, true, "third quartile"},
        {q3 + iqr_factor * iqr, false, "upper hinge"},
    };
    std::vector<Note> notes;
    auto interior = detail::place_breaks(data.sorted, candidates, notes);
    return make_result(series, spec, detail::with_outer(data.min, interior, data.max), std::move(notes));
}

BinningResult std_deviation(const FeatureSeries& series, int k, StdDevStep step) {
    detail::require_bin_count(k, 2);
    MethodSpec spec = MethodSpec::of(Method::StdDeviation, k);
    spec.std_dev_step = step;
    const auto data = detail::prepare(series);
    // Zero variance only happens for an all-equal series.
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    const double n = static_cast<double>(data.sorted.size());
    double mean = 0.0;
    for (const double v : data.sorted) mean += v;
    mean /= n;
    double ss = 0.0;
    for (const double v : data.sorted) ss += (v - mean) * (v - mean);
    const double sigma = std::sqrt(ss / n);
    const double unit = step == StdDevStep::Whole ? 1.0 : 0.5;

    // Even k puts a break on the mean, odd k centers a bin on it.
    std::vector<double> interior;
    std::vector<Note> notes;
    for (int i = 1; i < k; ++i) {
        const double offset = (i - k / 2.0) * unit;
        const double b = mean + offset * sigma;
        if (b > data.min && b < data.max) {
            interior.push_back(b);
        } else {
            notes.push_back({"BreakDropped", "mean " + std::string(offset < 0 ? "-" : "+") + " " +
                                                 format_number(std::abs(offset)) + " sd at " + format_number(b) +
                                                 " lies outside the data range"});
        }
    }
    return make_result(series, spec, detail::with_outer(data.min, interior, data.max), std::move(notes));
}

}  // namespace binx
