#include <doctest.h>

#include <cmath>
#include <random>

#include "qbm/errors.hpp"
#include "qbm/qml.hpp"
#include "support.hpp"

using namespace qbm;
using namespace qbm::qml;

namespace {

QmlParams params(double dx, double beta, std::vector<double> c) {
    QmlParams p;
    p.dx = dx;
    p.beta_eff = beta;
    p.couplings = std::move(c);
    return p;
}

} // namespace

TEST_CASE("gamma_qml examples") {
    const auto idx = test::iota_set(1);
    CHECK(gamma_qml(0.0, params(1.0, 1.0, {1.0}), idx) == 1.0);
    CHECK(gamma_qml(3.0, params(0.0, 1.0, {1.0}), idx) == 1.0);
    // beta -> infinity: cth -> 1
    CHECK(gamma_qml(1.0, params(1.0, 100.0, {1.0}), idx) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(gamma_qml(1.0, params(1.0, 2.0, {1.0}), idx) ==
          doctest::Approx(std::exp(-0.5 * std::cosh(1.0) / std::sinh(1.0))).epsilon(1e-14));
}

TEST_CASE("b_qml examples") {
    const auto idx = test::iota_set(2);
    const auto p = params(0.7, 100.0, {1.0, 2.0});
    CHECK(b_qml(0.0, p, idx) == 1.0);
    CHECK(b_qml(1.3, p, idx) == doctest::Approx(gamma_qml(1.3, p, idx)).epsilon(1e-12));
    const auto hot = params(0.7, 0.3, {1.0, 2.0});
    const double t = 0.9;
    const double base = 0.5 * 0.49 * t * t * 5.0;
    CHECK(log_b_qml(t, hot, idx) * log_gamma_qml(t, hot, idx) == doctest::Approx(base * base).epsilon(1e-12));
}

TEST_CASE("qml factors are monotone and ordered") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> c(5);
        for (auto& x : c) x = u(rng);
        const auto p = params(u(rng), u(rng), c);
        const auto idx = test::iota_set(5);
        const auto small = test::iota_set(3);
        double prev_g = 1.0;
        for (double t = 0.0; t <= 3.0; t += 0.1) {
            const double g = gamma_qml(t, p, idx);
            CHECK(g <= prev_g);
            CHECK(b_qml(t, p, idx) >= g);
            CHECK(gamma_qml(t, p, small) >= g);
            prev_g = g;
        }
        const double t = u(rng);
        CHECK(log_gamma_qml(2 * t, p, idx) / log_gamma_qml(t, p, idx) == doctest::Approx(4.0).epsilon(1e-12));
        auto wider = p;
        wider.dx *= 1.5;
        CHECK(gamma_qml(t, wider, idx) <= gamma_qml(t, p, idx));
        auto hotter = p;
        hotter.beta_eff *= 0.5;
        CHECK(gamma_qml(t, hotter, idx) <= gamma_qml(t, p, idx));
        CHECK(b_qml(t, hotter, idx) >= b_qml(t, p, idx));
    }
}

TEST_CASE("lln_factor") {
    CHECK(lln_factor(0.0, 1.0, 1.0, 1.0, 10, Factor::decoherence) == 1.0);
    const double one = lln_factor(0.7, 1.0, 1.5, 2.0, 10, Factor::distinguishability);
    const double two = lln_factor(0.7, 1.0, 1.5, 2.0, 20, Factor::distinguishability);
    CHECK(two == doctest::Approx(one * one).epsilon(1e-12));
    const auto ts = timescales(1.0, 1.5, 2.0);
    REQUIRE(ts);
    CHECK(log_lln_factor(0.7, 1.0, 1.5, 2.0, 10, Factor::decoherence) ==
          doctest::Approx(-10.0 * std::pow(0.7 / ts->tau_d, 2)).epsilon(1e-12));
}

TEST_CASE("lln_factor agrees with explicit sums of random couplings") {
    const std::size_t size = 10000;
    const double dx = 1.0;
    const double beta = 1.0;
    const double c2_mean = 1.0 / 3.0;  // uniform [0, 1]
    const auto ts = timescales(dx, beta, c2_mean);
    REQUIRE(ts);
    const double t = ts->tau_d / std::sqrt(static_cast<double>(size));
    const double exact = lln_factor(t, dx, beta, c2_mean, size, Factor::decoherence);
    const auto idx = test::iota_set(size);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> c(size);
        for (auto& x : c) x = u(rng);
        const double mc = gamma_qml(t, params(dx, beta, c), idx);
        CHECK(std::fabs(mc - exact) <= 5.0 / std::sqrt(static_cast<double>(size)));
    }
}

TEST_CASE("timescales") {
    const auto cold = timescales(1.0, 200.0, 1.0);
    REQUIRE(cold);
    CHECK(cold->tau_d == doctest::Approx(cold->tau_b).epsilon(1e-12));

    const auto a = timescales(1.0, 2.0, 2.0);
    const auto b = timescales(2.0, 2.0, 2.0);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(b->tau_d == doctest::Approx(a->tau_d / 2).epsilon(1e-14));
    CHECK(1.0 / a->tau_d == doctest::Approx(std::sqrt(std::cosh(1.0) / std::sinh(1.0))).epsilon(1e-14));
    CHECK(1.0 / a->tau_b == doctest::Approx(std::sqrt(std::tanh(1.0))).epsilon(1e-14));
    CHECK_FALSE(timescales(0.0, 1.0, 1.0).has_value());

    for (double beta = 0.01; beta < 100; beta *= 1.7) {
        const auto ts = timescales(0.3, beta, 0.8);
        REQUIRE(ts);
        CHECK(ts->tau_b >= ts->tau_d);
    }
}

TEST_CASE("qml input validation") {
    const auto idx = test::iota_set(1);
    CHECK_THROWS_AS(gamma_qml(1.0, params(1.0, 0.0, {1.0}), idx), InputError);
    CHECK_THROWS_AS(gamma_qml(1.0, params(-1.0, 1.0, {1.0}), idx), InputError);
    const IndexSet bad{3};
    CHECK_THROWS_AS(gamma_qml(1.0, params(1.0, 1.0, {1.0}), bad), InputError);
    CHECK(mean_square(std::vector<double>{1.0, 3.0}, test::iota_set(2)) == 5.0);
}
