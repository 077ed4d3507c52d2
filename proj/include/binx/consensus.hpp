#pragma once

#include <string>
#include <vector>

#include "binx/binning.hpp"
#include "binx/methods.hpp"
#include "binx/series.hpp"

namespace binx {

/// Per-feature bin ids across a set of member methods. Only features with a
/// value appear; rows follow the series order.
struct ConsensusMatrix {
    std::vector<FeatureId> feature_ids;
    std::vector<std::string> methods;
    std::vector<std::vector<int>> bins;  // [feature][method]
    std::vector<int> majority_bin;
    std::vector<int> majority_frequency;
    std::vector<BinningResult> member_results;  // aligned with `methods`
};

/// Specs for member ids at a common bin count. Throws UnknownMethod.
std::vector<MethodSpec> member_specs(const std::vector<std::string>& ids, int k);

/// Runs every member (concurrently) and checks each produced exactly k bins.
/// Throws BinCountMismatch naming the offending method.
ConsensusMatrix build_matrix(const FeatureSeries& series, const std::vector<MethodSpec>& members, int k,
                             const CustomMethodSource* customs = nullptr);

/// Recomputes majority_bin / majority_frequency from `bins` (ties go to the
/// lowest bin id).
void majority(ConsensusMatrix& matrix);

struct AlphaColor {
    std::string color;
    double alpha = 1.0;
};

/// color = palette[majority_bin - 1]; alpha = frequency / |methods|.
/// Throws PaletteTooSmall when the palette has fewer than k colors.
std::vector<AlphaColor> value_by_alpha(const ConsensusMatrix& matrix, const std::vector<std::string>& palette, int k);

}  // namespace binx
