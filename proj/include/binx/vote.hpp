#pragma once

#include <span>

namespace binx {

struct Vote {
    int bin = 0;
    int frequency = 0;
    bool operator==(const Vote&) const = default;
};

/// Most frequent bin id in `bins`; ties go to the lowest bin id.
inline Vote majority_vote(std::span<const int> bins) {
    Vote best;
    for (const int candidate : bins) {
        int count = 0;
        for (const int b : bins) count += (b == candidate);
        if (count > best.frequency || (count == best.frequency && candidate < best.bin)) best = {candidate, count};
    }
    return best;
}

}  // namespace binx
