#pragma once

#include <vector>

#include "binx/series.hpp"

namespace binx {

struct Histogram {
    std::vector<double> edges;  // bins + 1 equal-width edges over [min, max]
    std::vector<std::size_t> counts;
};

struct Kde {
    double bandwidth = 0.0;
    std::vector<double> grid;
    std::vector<double> density;
};

/// Summary statistics use the population convention (divide by n).
struct Profile {
    std::size_t count = 0;
    std::size_t valid_count = 0;
    std::size_t missing_count = 0;
    double min = 0, max = 0, mean = 0, median = 0, std_dev = 0, skewness = 0;
    Histogram histogram;
    Kde kde;
    bool show_missing = true;
};

inline constexpr int kDefaultHistogramBins = 20;
inline constexpr int kKdeGridPoints = 512;

/// Throws EmptySeries, InvalidBinCount. `show_missing` only controls
/// whether consumers display the missing bar; the counts are always kept.
Profile profile(const FeatureSeries& series, int histogram_bins = kDefaultHistogramBins, bool show_missing = true);

/// Silverman's rule of thumb with a floor of 1e-9 of the range.
double silverman_bandwidth(std::span<const double> sorted);

}  // namespace binx
