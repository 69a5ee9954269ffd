#include "qbm/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qbm/errors.hpp"

namespace qbm::specfun {

namespace {

constexpr double series_limit = 20.0;

double power_series(double z) {
    const double q = 0.25 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * std::numeric_limits<double>::epsilon() * 0.25) break;
    }
    return sum;
}

// sum_k ((2k-1)!!)^2 / (k! (8z)^k)
double hankel_series(double z) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * odd * odd / (k * 8.0 * z);
        if (next >= term) break;  // asymptotic series started to diverge
        term = next;
        sum += term;
        if (term < sum * std::numeric_limits<double>::epsilon() * 0.25) break;
    }
    return sum;
}

void require_nonnegative(double z) {
    require(z >= 0.0 && !std::isnan(z), "bessel_i0: argument must be >= 0");
}

} // namespace

I0Result bessel_i0(double z) {
    require_nonnegative(z);
    if (std::isinf(z)) return {z, z};
    if (z <= series_limit) {
        const double v = power_series(z);
        return {v, std::log(v)};
    }
    const double log_v = z - 0.5 * std::log(2.0 * std::numbers::pi * z) + std::log(hankel_series(z));
    return {std::exp(log_v), log_v};
}

double log_scaled_i0(double z) {
    require_nonnegative(z);
    if (z <= series_limit) return std::log(power_series(z)) - z;
    return std::log(hankel_series(z)) - 0.5 * std::log(2.0 * std::numbers::pi * z);
}

double bessel_i0_oracle(double z, std::size_t panels) {
    require(panels >= 64, "bessel_i0_oracle: need at least 64 panels");
    const double h = std::numbers::pi / static_cast<double>(panels);
    double sum = 0.5 * (std::exp(z) + std::exp(-z));
    for (std::size_t i = 1; i < panels; ++i) sum += std::exp(z * std::cos(h * static_cast<double>(i)));
    return sum / static_cast<double>(panels);
}

double bessel_i0_oracle_scaled(double z, std::size_t panels) {
    require(panels >= 64, "bessel_i0_oracle: need at least 64 panels");
    const double h = std::numbers::pi / static_cast<double>(panels);
    double sum = 0.5 * (1.0 + std::exp(-2.0 * z));
    for (std::size_t i = 1; i < panels; ++i) sum += std::exp(z * (std::cos(h * static_cast<double>(i)) - 1.0));
    return sum / static_cast<double>(panels);
}

double i0_asymptotic(double z) {
    require(z > 0.0, "i0_asymptotic: argument must be > 0");
    return z - 0.5 * std::log(2.0 * std::numbers::pi * z);
}

} // namespace qbm::specfun
