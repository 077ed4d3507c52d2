// CLI output files and service bodies must both equal the frozen goldens.

#include <doctest.h>

#include "parity.hpp"

TEST_CASE("CLI files and service bodies match the goldens byte for byte") {
    const auto outcome = parity::run();
    CHECK(outcome.cases == 28u);
    for (const auto& f : outcome.failures) FAIL_CHECK(f);
    CHECK(outcome.failures.empty());
}
