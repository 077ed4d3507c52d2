#include "method_support.hpp"

#include <algorithm>
#include <charconv>

#include "binx/error.hpp"

namespace binx::detail {

Prepared prepare(const FeatureSeries& series) {
    series.require_valid();
    Prepared p;
    p.sorted = series.sorted_valid_values();
    p.min = p.sorted.front();
    p.max = p.sorted.back();
    return p;
}

BinningResult degenerate_result(const FeatureSeries& series, const MethodSpec& spec, double value) {
    auto r = make_result(series, spec, degenerate_extents(value),
                         {{"DegenerateSeries", "all values equal " + format_number(value) + "; using a single bin"}});
    if (spec.method == Method::Unclassed) {
        std::vector<std::optional<double>> pos(series.size());
        for (std::size_t i = 0; i < series.size(); ++i)
            if (!series.is_missing(i)) pos[i] = 0.0;
        r.unclassed_positions = std::move(pos);
    }
    return r;
}

void require_bin_count(int k, int min_k) {
    if (k < min_k)
        throw Error(ErrorCode::InvalidBinCount,
                    "bin count must be at least " + std::to_string(min_k) + ", got " + std::to_string(k));
    if (k > kMaxBinCount)
        throw Error(ErrorCode::TooManyBins,
                    "bin count " + std::to_string(k) + " exceeds the limit of " + std::to_string(kMaxBinCount));
}

std::vector<double> with_outer(double min, std::span<const double> interior, double max) {
    std::vector<double> e;
    e.reserve(interior.size() + 2);
    e.push_back(min);
    e.insert(e.end(), interior.begin(), interior.end());
    e.push_back(max);
    return e;
}

std::vector<double> place_breaks(std::span<const double> sorted, std::span<const BreakCandidate> candidates,
                                 std::vector<Note>& notes) {
    const double max = sorted.back();
    double prev = sorted.front();
    std::vector<double> out;
    for (const auto& c : candidates) {
        double b = c.value;
        if (b > prev && b < max) {
            out.push_back(b);
            prev = b;
            continue;
        }
        if (!c.repairable) {
            notes.push_back({"BreakDropped", c.label + " at " + format_number(b) + " falls outside (" +
                                                 format_number(prev) + ", " + format_number(max) + ")"});
            continue;
        }
        if (b <= prev) {
            // First data value in the current bin, then the next distinct value above it.
            const auto u = std::lower_bound(sorted.begin(), sorted.end(), prev);
            const auto w = u == sorted.end() ? u : std::upper_bound(u, sorted.end(), *u);
            if (w == sorted.end()) {
                notes.push_back({"BreakDropped", c.label + " at " + format_number(b) +
                                                     " collapses onto the data maximum"});
                continue;
            }
            b = *u + (*w - *u) / 2.0;
        } else {
            // b >= max: split just below the top value.
            const auto below = std::lower_bound(sorted.begin(), sorted.end(), max);
            if (below == sorted.begin()) {
                notes.push_back({"BreakDropped", c.label + " collapses onto the data maximum"});
                continue;
            }
            const double v = *(below - 1);
            b = v + (max - v) / 2.0;
        }
        if (!(b > prev && b < max)) {
            notes.push_back({"BreakDropped", c.label + " has no free gap between distinct values"});
            continue;
        }
        notes.push_back({"BreakShifted", c.label + " moved from " + format_number(c.value) + " to " +
                                             format_number(b) + " to keep extents strictly increasing"});
        out.push_back(b);
        prev = b;
    }
    return out;
}

WeightedValues distinct_weighted(std::span<const double> sorted) {
    WeightedValues w;
    for (const double v : sorted) {
        if (!w.values.empty() && w.values.back() == v) {
            w.weights.back() += 1.0;
        } else {
            w.values.push_back(v);
            w.weights.push_back(1.0);
        }
    }
    return w;
}

double quantile_at(std::span<const double> sorted, std::size_t num, std::size_t den) {
    const std::size_t n = sorted.size();
    const std::size_t scaled = (n - 1) * num;
    const std::size_t lo = scaled / den;
    const std::size_t rem = scaled % den;
    if (rem == 0 || lo + 1 >= n) return sorted[lo];
    const double frac = static_cast<double>(rem) / static_cast<double>(den);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace binx::detail
