#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qbm/errors.hpp"
#include "qbm/specfun.hpp"
#include "support.hpp"

using namespace qbm;
using namespace qbm::specfun;

TEST_CASE("bessel_i0 at zero") {
    const auto r = bessel_i0(0.0);
    CHECK(r.value == 1.0);
    CHECK(r.log_value == 0.0);
    CHECK(bessel_i0_oracle(0.0, 64) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("bessel_i0 matches the quadrature oracle to 1e-12 for z <= 700") {
    for (double z : {1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 19.99, 20.0, 20.01, 35.0, 50.0, 100.0, 300.0, 699.0, 700.0}) {
        CAPTURE(z);
        const double oracle = bessel_i0_oracle(z, 8000);
        CHECK(test::rel_diff(bessel_i0(z).value, oracle) <= 1e-12);
        CHECK(test::rel_diff(std::exp(log_scaled_i0(z)), bessel_i0_oracle_scaled(z, 8000)) <= 1e-12);
    }
}

TEST_CASE("bessel_i0 log form beyond the overflow range") {
    for (double z : {800.0, 2000.0, 1e4, 1e6}) {
        CAPTURE(z);
        const double oracle_log = z + std::log(bessel_i0_oracle_scaled(z, 200000));
        CHECK(test::rel_diff(bessel_i0(z).log_value, oracle_log) <= 1e-10);
    }
    CHECK(std::isinf(bessel_i0(1000.0).value));
}

TEST_CASE("bessel_i0 at 50 against the leading asymptotic form") {
    const double z = 50.0;
    const double lead = z - 0.5 * std::log(2.0 * std::numbers::pi * z);
    const double got = bessel_i0(z).log_value;
    // ln(1 + 1/(8z) + 9/(128 z^2) + ...)
    CHECK(got - lead == doctest::Approx(std::log1p(1.0 / (8 * z) + 9.0 / (128 * z * z) + 225.0 / (3072 * z * z * z)))
                            .epsilon(1e-6));
    CHECK(test::rel_diff(got, z + std::log(bessel_i0_oracle_scaled(z, 20000))) <= 1e-13);
}

TEST_CASE("quadrature oracle self-convergence and cross-check") {
    CHECK(test::rel_diff(bessel_i0_oracle(2.0, 10000), bessel_i0_oracle(2.0, 20000)) <= 1e-12);
    CHECK(test::rel_diff(bessel_i0_oracle(10.0, 10000), bessel_i0(10.0).value) <= 1e-12);
    CHECK_THROWS_AS(bessel_i0_oracle(1.0, 10), InputError);
}

TEST_CASE("bessel_i0 agrees with the standard library implementation") {
    for (double z = 0.0; z <= 600.0; z += 7.3) {
        CAPTURE(z);
        CHECK(test::rel_diff(bessel_i0(z).value, std::cyl_bessel_i(0.0, z)) <= 1e-12);
    }
}

TEST_CASE("negative arguments are rejected") {
    CHECK_THROWS_AS(bessel_i0(-1.0), InputError);
    CHECK_THROWS_AS(log_scaled_i0(-1e-9), InputError);
    CHECK_THROWS_AS(i0_asymptotic(0.0), InputError);
}

TEST_CASE("i0_asymptotic accuracy") {
    auto err = [](double z) { return std::fabs(std::exp(i0_asymptotic(z) - bessel_i0(z).log_value) - 1.0); };
    CHECK(err(100.0) < 2e-3);
    CHECK(err(10.0) < 2e-2);
    double prev = 0.0;
    for (double z = 10.0; z <= 1e5; z *= 1.5) {
        const double ratio = std::exp(i0_asymptotic(z) - bessel_i0(z).log_value);
        CHECK(ratio < 1.0);
        CHECK(ratio > prev);
        prev = ratio;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("I0 is increasing and log-convex; e^{-z} I0 decreases within (0, 1]") {
    double prev_log = -1.0;
    double prev_scaled = 2.0;
    const double h = 0.25;
    for (double z = 0.0; z <= 200.0; z += h) {
        const double lv = bessel_i0(z).log_value;
        const double scaled = std::exp(log_scaled_i0(z));
        CHECK(lv > prev_log);
        CHECK(scaled <= 1.0);
        CHECK(scaled > 0.0);
        CHECK(scaled < prev_scaled);
        if (z >= h) {
            const double second = bessel_i0(z + h).log_value - 2.0 * lv + bessel_i0(z - h).log_value;
            CHECK(second > -1e-12);
        }
        prev_log = lv;
        prev_scaled = scaled;
    }
}
