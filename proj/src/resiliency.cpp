#include <algorithm>
#include <numeric>

#include "binx/error.hpp"
#include "binx/methods.hpp"
#include "binx/vote.hpp"
#include "method_support.hpp"

namespace binx {

namespace {

bool fixed_at_six(Method m) { return m == Method::Percentile || m == Method::BoxPlot; }

}  // namespace

BinningResult resiliency(const FeatureSeries& series, const std::vector<MethodSpec>& members, int k,
                         const CustomMethodSource* customs) {
    detail::require_bin_count(k);
    if (members.size() < 2)
        throw Error(ErrorCode::TooFewMethods, "resiliency needs at least two member methods, got " +
                                                  std::to_string(members.size()));
    MethodSpec spec = MethodSpec::of(Method::Resiliency, k);
    for (const auto& m : members) {
        if (m.method == Method::Resiliency)
            throw Error(ErrorCode::InvalidParameter, "resiliency cannot be its own member");
        if (fixed_at_six(m.method) && k != 6)
            throw Error(ErrorCode::BinCountMismatch, method_id(m) + " always has 6 bins but k=" + std::to_string(k),
                        method_id(m));
        spec.member_methods.push_back(method_id(m));
    }

    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    std::vector<BinningResult> runs;
    runs.reserve(members.size());
    for (const auto& m : members) {
        MethodSpec member = m;
        member.bin_count = k;
        auto r = run_method(series, member, customs);
        if (r.bin_count() != k)
            throw Error(ErrorCode::BinCountMismatch,
                        method_id(m) + " produced " + std::to_string(r.bin_count()) + " bins, expected " +
                            std::to_string(k),
                        method_id(m));
        runs.push_back(std::move(r));
    }

    // Majority bin per valid feature, then scan in value order.
    std::vector<std::size_t> order;
    std::vector<int> majority(series.size(), 0);
    std::vector<int> row(runs.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.is_missing(i)) continue;
        for (std::size_t m = 0; m < runs.size(); ++m) row[m] = *runs[m].assignments[i];
        majority[i] = majority_vote(row).bin;
        order.push_back(i);
    }
    const auto& values = series.values();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> interior;
    std::size_t merged = 0;
    int run_bin = majority[order.front()];
    for (std::size_t t = 1; t < order.size(); ++t) {
        const int bin = majority[order[t]];
        if (bin == run_bin) continue;
        if (bin < run_bin) {
            ++merged;
            continue;
        }
        const double a = values[order[t - 1]];
        const double b = values[order[t]];
        interior.push_back(a + (b - a) / 2.0);
        run_bin = bin;
    }
    std::vector<Note> notes;
    if (merged > 0)
        notes.push_back({"NonMonotoneRunMerged", std::to_string(merged) +
                                                     " feature(s) whose majority bin fell below the preceding run "
                                                     "were merged into that run"});
    return make_result(series, spec, detail::with_outer(data.min, interior, data.max), std::move(notes));
}

}  // namespace binx
