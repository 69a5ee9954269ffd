#pragma once

#include <cmath>

namespace qbm {

// Physical constants used to turn actions into dimensionless exponents.
// Set both to 1 for dimensionless studies.
struct UnitContext {
    double hbar{1.054571817e-34};       // J s
    double k_boltzmann{1.380649e-23};   // J/K

    static constexpr UnitContext si() { return {}; }
    static constexpr UnitContext natural() { return {1.0, 1.0}; }

    // hbar*omega / (2 k_B T)
    double thermal_argument(double omega, double temperature) const {
        return hbar * omega / (2.0 * k_boltzmann * temperature);
    }

    bool operator==(const UnitContext&) const = default;
};

void validate(const UnitContext& units);

// cth(x) and th(x) for x > 0. cth(x) -> 1/x for small x, both -> 1 for large x.
inline double coth(double x) { return 1.0 / std::tanh(x); }

} // namespace qbm
