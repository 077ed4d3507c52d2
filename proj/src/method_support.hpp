#pragma once

// Helpers shared by the method implementations. Not installed.

#include <span>
#include <string>
#include <vector>

#include "binx/binning.hpp"
#include "binx/series.hpp"

namespace binx::detail {

struct Prepared {
    std::vector<double> sorted;
    double min = 0.0;
    double max = 0.0;
    bool degenerate() const noexcept { return !(max > min); }
};

/// Throws EmptySeries; otherwise returns the ascending valid values.
Prepared prepare(const FeatureSeries& series);

BinningResult degenerate_result(const FeatureSeries& series, const MethodSpec& spec, double value);

void require_bin_count(int k, int min_k = 1);

/// {min} + interior + {max}
std::vector<double> with_outer(double min, std::span<const double> interior, double max);

struct BreakCandidate {
    double value;
    // Order-statistic breaks that collide with the previous extent are moved
    // to the next gap between distinct values; hinge-style breaks are dropped.
    bool repairable;
    std::string label;
};

/// Turns candidate interior breaks (ascending) into a strictly increasing
/// interior break list inside (min, max), recording each shift or drop.
std::vector<double> place_breaks(std::span<const double> sorted, std::span<const BreakCandidate> candidates,
                                 std::vector<Note>& notes);

/// Distinct ascending values with their multiplicities.
struct WeightedValues {
    std::vector<double> values;
    std::vector<double> weights;
};

WeightedValues distinct_weighted(std::span<const double> sorted);

/// Quantile at position (n-1)*num/den using exact integer position arithmetic.
double quantile_at(std::span<const double> sorted, std::size_t num, std::size_t den);

std::string format_number(double v);

}  // namespace binx::detail
