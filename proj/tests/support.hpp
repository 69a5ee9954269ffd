#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "qbm/bath.hpp"

namespace qbm::test {

// Squeezed-thermal numerics parameter set.
inline constexpr double paper_M = 1e-5;
inline constexpr double paper_Omega = 3e8;
inline constexpr double paper_dx = 1e-9;
inline constexpr double paper_gamma0 = 0.33e18;
inline constexpr double paper_omega_bar = 4.5e9;
inline constexpr double paper_delta = 3e9;

inline double rel_diff(double a, double b) {
    return std::fabs(a - b) / std::max(std::fabs(b), 1e-300);
}

inline IndexSet iota_set(std::size_t n, std::size_t start = 0) {
    IndexSet s(n);
    std::iota(s.begin(), s.end(), start);
    return s;
}

inline SystemSpec paper_system(double omega_big = paper_Omega) { return {paper_M, omega_big, 0.0, paper_dx}; }

inline BathSpec paper_bath(std::size_t n, std::uint64_t seed, CouplingPrefactor pre = CouplingPrefactor::two,
                           double omega_bar = paper_omega_bar, double delta = paper_delta) {
    auto omegas = sample_frequencies(n, omega_bar, delta, seed);
    std::vector<double> masses(n, 1.0);
    auto couplings = couplings_from_masses(masses, paper_M, paper_gamma0, pre);
    return BathSpec(std::move(omegas), std::move(masses), std::move(couplings));
}

} // namespace qbm::test
