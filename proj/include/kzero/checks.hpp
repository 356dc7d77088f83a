#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kzero::checks {

struct CheckResult {
    std::string name;
    bool pass;
    double observed;
    double bound;   // observed must stay below this (or within, see detail)
    std::string detail;
};

// Closed forms vs quadrature oracles: pdf, cdf and moments k in {0,1,2} for
// every family on a 41-point grid.
std::vector<CheckResult> parity_suite();

// Sampling representation equivalences and the Bessel-sum property, all at
// the 1% KS level.
std::vector<CheckResult> representations_suite(std::uint64_t seed = 20260826);

bool all_pass(const std::vector<CheckResult>& results);

} // namespace kzero::checks
