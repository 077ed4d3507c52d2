// equal_interval, 3 bins
#include <binx/methods.hpp>

binx::BinningResult rebin(const binx::FeatureSeries& series) {
    const std::vector<double> breaks{12.5, 40.66666666666667, 68.83333333333334, 97};
    return binx::manual_interval(series, breaks);
}
