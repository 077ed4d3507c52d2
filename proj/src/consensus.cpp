#include "binx/consensus.hpp"

#include <future>

#include "binx/error.hpp"
#include "binx/vote.hpp"

namespace binx {

std::vector<MethodSpec> member_specs(const std::vector<std::string>& ids, int k) {
    std::vector<MethodSpec> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        auto spec = parse_method_id(id);
        spec.bin_count = k;
        out.push_back(std::move(spec));
    }
    return out;
}

ConsensusMatrix build_matrix(const FeatureSeries& series, const std::vector<MethodSpec>& members, int k,
                             const CustomMethodSource* customs) {
    if (members.empty()) throw Error(ErrorCode::TooFewMethods, "no member methods given");
    series.require_valid();

    std::vector<std::future<BinningResult>> pending;
    pending.reserve(members.size());
    for (const auto& m : members) {
        MethodSpec spec = m;
        spec.bin_count = k;
        pending.push_back(std::async(std::launch::async, [&series, spec, customs] {
            return run_method(series, spec, customs);
        }));
    }

    ConsensusMatrix matrix;
    for (std::size_t m = 0; m < members.size(); ++m) {
        auto r = pending[m].get();
        const auto id = method_id(members[m]);
        if (r.bin_count() != k)
            throw Error(ErrorCode::BinCountMismatch,
                        id + " produced " + std::to_string(r.bin_count()) + " bins, expected " + std::to_string(k),
                        id);
        matrix.methods.push_back(id);
        matrix.member_results.push_back(std::move(r));
    }

    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.is_missing(i)) continue;
        std::vector<int> row;
        row.reserve(members.size());
        for (const auto& r : matrix.member_results) row.push_back(*r.assignments[i]);
        matrix.feature_ids.push_back(series.feature_ids()[i]);
        matrix.bins.push_back(std::move(row));
    }
    majority(matrix);
    return matrix;
}

void majority(ConsensusMatrix& matrix) {
    matrix.majority_bin.clear();
    matrix.majority_frequency.clear();
    for (const auto& row : matrix.bins) {
        const auto v = majority_vote(row);
        matrix.majority_bin.push_back(v.bin);
        matrix.majority_frequency.push_back(v.frequency);
    }
}

std::vector<AlphaColor> value_by_alpha(const ConsensusMatrix& matrix, const std::vector<std::string>& palette, int k) {
    if (palette.size() < static_cast<std::size_t>(k))
        throw Error(ErrorCode::PaletteTooSmall, "palette has " + std::to_string(palette.size()) +
                                                    " colors but " + std::to_string(k) + " bins were requested");
    const auto members = static_cast<double>(matrix.methods.size());
    std::vector<AlphaColor> out;
    out.reserve(matrix.bins.size());
    for (std::size_t i = 0; i < matrix.bins.size(); ++i) {
        const auto bin = static_cast<std::size_t>(matrix.majority_bin[i]);
        out.push_back({palette[bin - 1], matrix.majority_frequency[i] / members});
    }
    return out;
}

}  // namespace binx
