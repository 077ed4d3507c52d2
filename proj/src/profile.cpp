#include "binx/profile.hpp"

#include <cmath>
#include <numbers>

#include "binx/binning.hpp"
#include "binx/error.hpp"
#include "binx/methods.hpp"

namespace binx {

double silverman_bandwidth(std::span<const double> sorted) {
    const double n = static_cast<double>(sorted.size());
    double mean = 0.0;
    for (const double v : sorted) mean += v;
    mean /= n;
    double ss = 0.0;
    for (const double v : sorted) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / n);
    const double iqr = inclusive_quantile(sorted, 0.75) - inclusive_quantile(sorted, 0.25);
    double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    const double range = sorted.back() - sorted.front();
    const double floor = 1e-9 * (range > 0.0 ? range : std::max(std::abs(sorted.front()), 1.0));
    return std::max(0.9 * spread * std::pow(n, -0.2), floor);
}

Profile profile(const FeatureSeries& series, int histogram_bins, bool show_missing) {
    if (histogram_bins < 1 || histogram_bins > kMaxBinCount)
        throw Error(ErrorCode::InvalidBinCount, "histogram bins must be in 1.." + std::to_string(kMaxBinCount));
    series.require_valid();
    const auto sorted = series.sorted_valid_values();
    const double n = static_cast<double>(sorted.size());

    Profile p;
    p.show_missing = show_missing;
    p.count = series.size();
    p.valid_count = series.valid_count();
    p.missing_count = series.missing_count();
    p.min = sorted.front();
    p.max = sorted.back();
    p.median = inclusive_quantile(sorted, 0.5);

    double sum = 0.0;
    for (const double v : sorted) sum += v;
    p.mean = sum / n;
    double m2 = 0.0, m3 = 0.0;
    for (const double v : sorted) {
        const double d = v - p.mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    p.std_dev = std::sqrt(m2);
    p.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;

    if (p.max > p.min) {
        const double width = (p.max - p.min) / histogram_bins;
        for (int j = 0; j < histogram_bins; ++j) p.histogram.edges.push_back(p.min + j * width);
        p.histogram.edges.push_back(p.max);
    } else {
        p.histogram.edges = degenerate_extents(p.min);
    }
    p.histogram.counts.assign(p.histogram.edges.size() - 1, 0);
    for (const double v : sorted) ++p.histogram.counts[static_cast<std::size_t>(bin_of(v, p.histogram.edges) - 1)];

    auto& kde = p.kde;
    kde.bandwidth = silverman_bandwidth(sorted);
    const double h = kde.bandwidth;
    const double lo = p.min - 4 * h, hi = p.max + 4 * h;
    const double norm = 1.0 / (n * h * std::sqrt(2 * std::numbers::pi));
    for (int g = 0; g < kKdeGridPoints; ++g) {
        const double x = lo + (hi - lo) * g / (kKdeGridPoints - 1);
        double d = 0.0;
        for (const double v : sorted) {
            const double z = (x - v) / h;
            d += std::exp(-0.5 * z * z);
        }
        kde.grid.push_back(x);
        kde.density.push_back(d * norm);
    }
    return p;
}

}  // namespace binx
