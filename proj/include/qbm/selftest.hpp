#pragma once

#include <string>
#include <vector>

namespace qbm {

struct SelftestCase {
    std::string name;
    bool passed{false};
    std::string detail;
};

// Cross-module identities: Omega -> 0 reduction of the full model, ergodic
// time average vs. the I0 closed form, r = 0 reduction of the squeezed
// amplitude, and the I0 kernel against quadrature.
std::vector<SelftestCase> run_selftest(unsigned threads = 1);

} // namespace qbm
