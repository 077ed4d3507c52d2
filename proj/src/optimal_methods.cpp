// Iterative methods: exact 1-D optimal partitions (natural breaks, ckmeans)
// and head/tail breaks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

#include "binx/error.hpp"
#include "binx/methods.hpp"
#include "method_support.hpp"

namespace binx {

using detail::format_number;

namespace {

constexpr std::size_t kMaxDistinctForDp = 100'000;
// Backtracking table is k * m 32-bit cells; 64M cells = 256 MiB.
constexpr std::size_t kMaxDpCells = std::size_t{1} << 26;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Candidate costs within this fraction of the total SSE count as ties, so
// both solvers resolve equal optima to the same (leftmost) split.
constexpr double kTieTolerance = 1e-10;

// Leftmost index whose cost is within eps of the minimum.
std::size_t leftmost_min(std::span<const double> costs, double eps) {
    const double best = *std::min_element(costs.begin(), costs.end());
    std::size_t i = 0;
    while (costs[i] > best + eps) ++i;
    return i;
}

void check_partition_inputs(int k, std::size_t distinct) {
    detail::require_bin_count(k);
    if (static_cast<std::size_t>(k) > distinct)
        throw Error(ErrorCode::KExceedsDistinct, "k=" + std::to_string(k) + " exceeds the " +
                                                     std::to_string(distinct) + " distinct values");
    if (distinct > kMaxDistinctForDp)
        throw Error(ErrorCode::TooManyValues, std::to_string(distinct) + " distinct values exceed the limit of " +
                                                  std::to_string(kMaxDistinctForDp) + " for exact partitioning");
    if (static_cast<std::size_t>(k) * distinct > kMaxDpCells)
        throw Error(ErrorCode::TooManyValues, "k * distinct values exceeds the partition table limit");
}

// starts[j] = index (into distinct values) of the first value of class j.
std::vector<double> breaks_from_starts(const std::vector<double>& values, const std::vector<std::size_t>& starts) {
    std::vector<double> interior;
    for (std::size_t j = 1; j < starts.size(); ++j) {
        const double a = values[starts[j] - 1];
        const double b = values[starts[j]];
        interior.push_back(a + (b - a) / 2.0);
    }
    return interior;
}

std::vector<std::size_t> backtrack(const std::vector<std::uint32_t>& start_of, std::size_t m, int k) {
    std::vector<std::size_t> starts(static_cast<std::size_t>(k));
    std::size_t end = m - 1;
    for (int j = k - 1; j >= 0; --j) {
        const std::size_t s = start_of[static_cast<std::size_t>(j) * m + end];
        starts[static_cast<std::size_t>(j)] = s;
        if (j > 0) end = s - 1;
    }
    return starts;
}

// Fisher's exact dynamic program in the classic Jenks form: for each class
// end, walk the last class's start backwards while updating its variance
// incrementally.
std::vector<std::size_t> fisher_jenks(const detail::WeightedValues& wv, int k) {
    const std::size_t m = wv.values.size();
    const auto kk = static_cast<std::size_t>(k);
    std::vector<std::uint32_t> start_of(kk * m, 0);
    std::vector<double> prev(m, kInf), cur(m, kInf), costs(m);

    {
        double w = 0.0, mean = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = wv.values[i], wi = wv.weights[i];
            const double delta = x - mean;
            w += wi;
            mean += delta * wi / w;
            m2 += wi * delta * (x - mean);
            prev[i] = m2;
        }
    }
    const double eps = kTieTolerance * prev[m - 1];
    for (std::size_t j = 1; j < kk; ++j) {
        std::fill(cur.begin(), cur.end(), kInf);
        for (std::size_t i = j; i < m; ++i) {
            double w = 0.0, mean = 0.0, m2 = 0.0;
            for (std::size_t l = i + 1; l-- > j;) {
                const double x = wv.values[l], wl = wv.weights[l];
                const double delta = x - mean;
                w += wl;
                mean += delta * wl / w;
                m2 += wl * delta * (x - mean);
                costs[l] = m2 + prev[l - 1];
            }
            const std::span<const double> window(costs.data() + j, i - j + 1);
            const std::size_t arg = j + leftmost_min(window, eps);
            cur[i] = *std::min_element(window.begin(), window.end());
            start_of[j * m + i] = static_cast<std::uint32_t>(arg);
        }
        std::swap(prev, cur);
    }
    return backtrack(start_of, m, k);
}

// Same optimum via prefix sums and divide-and-conquer over the monotone
// optimal split positions, O(k m log m).
class CkMeansSolver {
public:
    explicit CkMeansSolver(const detail::WeightedValues& wv) : m_(wv.values.size()) {
        const double shift = wv.values[m_ / 2];
        s1_.assign(m_ + 1, 0.0);
        s2_.assign(m_ + 1, 0.0);
        w_.assign(m_ + 1, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            const double x = wv.values[i] - shift;
            s1_[i + 1] = s1_[i] + wv.weights[i] * x;
            s2_[i + 1] = s2_[i] + wv.weights[i] * x * x;
            w_[i + 1] = w_[i] + wv.weights[i];
        }
    }

    std::vector<std::size_t> solve(int k) {
        const auto kk = static_cast<std::size_t>(k);
        start_of_.assign(kk * m_, 0);
        prev_.assign(m_, kInf);
        cur_.assign(m_, kInf);
        for (std::size_t i = 0; i < m_; ++i) prev_[i] = sse(0, i);
        eps_ = kTieTolerance * prev_[m_ - 1];
        costs_.assign(m_, kInf);
        for (std::size_t j = 1; j < kk; ++j) {
            row_ = j;
            std::fill(cur_.begin(), cur_.end(), kInf);
            fill(j, m_ - 1, j, m_ - 1);
            std::swap(prev_, cur_);
        }
        return backtrack(start_of_, m_, k);
    }

private:
    double sse(std::size_t l, std::size_t r) const {
        const double s1 = s1_[r + 1] - s1_[l];
        const double s2 = s2_[r + 1] - s2_[l];
        const double w = w_[r + 1] - w_[l];
        return std::max(0.0, s2 - s1 * s1 / w);
    }

    void fill(std::size_t ilo, std::size_t ihi, std::size_t llo, std::size_t lhi) {
        if (ilo > ihi) return;
        const std::size_t mid = ilo + (ihi - ilo) / 2;
        const std::size_t lo = std::max(llo, row_);
        const std::size_t hi = std::min(lhi, mid);
        for (std::size_t l = lo; l <= hi; ++l) costs_[l] = prev_[l - 1] + sse(l, mid);
        const std::span<const double> window(costs_.data() + lo, hi - lo + 1);
        const std::size_t arg = lo + leftmost_min(window, eps_);
        cur_[mid] = *std::min_element(window.begin(), window.end());
        start_of_[row_ * m_ + mid] = static_cast<std::uint32_t>(arg);
        if (mid > ilo) fill(ilo, mid - 1, llo, arg);
        fill(mid + 1, ihi, arg, lhi);
    }

    std::size_t m_;
    std::size_t row_ = 0;
    double eps_ = 0.0;
    std::vector<double> costs_;
    std::vector<double> s1_, s2_, w_;
    std::vector<double> prev_, cur_;
    std::vector<std::uint32_t> start_of_;
};

}  // namespace

BinningResult natural_breaks(const FeatureSeries& series, int k) {
    detail::require_bin_count(k);
    const auto spec = MethodSpec::of(Method::NaturalBreaks, k);
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    const auto wv = detail::distinct_weighted(data.sorted);
    check_partition_inputs(k, wv.values.size());
    const auto interior = breaks_from_starts(wv.values, fisher_jenks(wv, k));
    return make_result(series, spec, detail::with_outer(data.min, interior, data.max));
}

BinningResult ckmeans(const FeatureSeries& series, int k) {
    detail::require_bin_count(k);
    const auto spec = MethodSpec::of(Method::CkMeans, k);
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    const auto wv = detail::distinct_weighted(data.sorted);
    check_partition_inputs(k, wv.values.size());
    CkMeansSolver solver(wv);
    const auto interior = breaks_from_starts(wv.values, solver.solve(k));
    return make_result(series, spec, detail::with_outer(data.min, interior, data.max));
}

BinningResult head_tail_breaks(const FeatureSeries& series, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw Error(ErrorCode::InvalidThreshold, "head/tail threshold must lie in (0,1), got " + format_number(threshold));
    MethodSpec spec = MethodSpec::of(Method::HeadTailBreaks);
    spec.head_tail_threshold = threshold;
    spec = normalized(spec);
    const auto data = detail::prepare(series);
    if (data.degenerate()) return detail::degenerate_result(series, spec, data.min);

    std::vector<double> interior;
    std::span<const double> subset(data.sorted);
    for (;;) {
        double sum = 0.0;
        for (const double v : subset) sum += v;
        const double mean = sum / static_cast<double>(subset.size());
        const auto head_begin = std::upper_bound(subset.begin(), subset.end(), mean);
        const auto head = subset.subspan(static_cast<std::size_t>(head_begin - subset.begin()));
        const double fraction = static_cast<double>(head.size()) / static_cast<double>(subset.size());
        if (head.empty() || fraction >= threshold) break;
        interior.push_back(mean);
        if (head.size() <= 1) break;
        subset = head;
    }
    return make_result(series, spec, detail::with_outer(data.min, interior, data.max));
}

double sdcm(const FeatureSeries& series, const BinningResult& result) {
    if (result.assignments.size() != series.size())
        throw Error(ErrorCode::MismatchedInputs, "result was not produced over this series");
    const auto k = static_cast<std::size_t>(std::max(result.bin_count(), 1));
    std::vector<double> sum(k, 0.0), count(k, 0.0);
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!result.assignments[i]) continue;
        const auto b = static_cast<std::size_t>(*result.assignments[i] - 1);
        sum[b] += series.values()[i];
        count[b] += 1.0;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!result.assignments[i]) continue;
        const auto b = static_cast<std::size_t>(*result.assignments[i] - 1);
        const double d = series.values()[i] - sum[b] / count[b];
        total += d * d;
    }
    return total;
}

}  // namespace binx
