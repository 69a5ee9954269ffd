#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qbm/bath.hpp"
#include "qbm/errors.hpp"
#include "support.hpp"

using namespace qbm;

TEST_CASE("sample_frequencies: zero-width band returns the centre exactly") {
    const auto w = sample_frequencies(3, 4.5e9, 0.0, 1);
    CHECK(w == std::vector<double>{4.5e9, 4.5e9, 4.5e9});
}

TEST_CASE("sample_frequencies: sample mean within 3 sigma of the centre") {
    const std::size_t n = 10000;
    const double delta = 3e9;
    const auto w = sample_frequencies(n, 4.5e9, delta, 99);
    double mean = 0.0;
    for (double x : w) {
        CHECK(x >= 3e9);
        CHECK(x <= 6e9);
        mean += x / n;
    }
    const double sigma = delta / std::sqrt(12.0) / std::sqrt(static_cast<double>(n));
    CHECK(std::fabs(mean - 4.5e9) <= 3.0 * sigma);
}

TEST_CASE("sample_frequencies: deterministic per seed") {
    CHECK(sample_frequencies(10, 4.5e9, 3e9, 7) == sample_frequencies(10, 4.5e9, 3e9, 7));
    CHECK(sample_frequencies(10, 4.5e9, 3e9, 7) != sample_frequencies(10, 4.5e9, 3e9, 8));
}

TEST_CASE("sample_frequencies: non-positive lower edge is rejected") {
    CHECK_THROWS_AS(sample_frequencies(3, 1.0, 2.0, 1), InputError);
    CHECK_THROWS_AS(sample_frequencies(3, 1.0, -0.1, 1), InputError);
}

TEST_CASE("couplings_from_masses") {
    const std::vector<double> m{std::numbers::pi};
    CHECK(couplings_from_masses(m, 1.0, 1.0, CouplingPrefactor::one)[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(couplings_from_masses(m, 1.0, 1.0, CouplingPrefactor::two)[0] == doctest::Approx(2.0).epsilon(1e-15));

    const std::vector<double> tiny{1e-20};
    const double expected = 2.0 * std::sqrt(1e-5 * 1e-20 * 0.33e18 / std::numbers::pi);
    CHECK(couplings_from_masses(tiny, 1e-5, 0.33e18, CouplingPrefactor::two)[0] ==
          doctest::Approx(expected).epsilon(1e-15));

    SUBCASE("doubling a mass scales its coupling by sqrt 2") {
        const std::vector<double> ms{0.3, 0.6};
        const auto c = couplings_from_masses(ms, 2.0, 5.0, CouplingPrefactor::one);
        CHECK(c[1] / c[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(couplings_from_masses(std::vector<double>{-1.0}, 1.0, 1.0, CouplingPrefactor::one), InputError);
    CHECK_THROWS_AS(couplings_from_masses(m, 1.0, 0.0, CouplingPrefactor::one), InputError);
}

TEST_CASE("make_partition") {
    const std::vector<std::size_t> one{10};
    auto p = make_partition(20, 10, one);
    CHECK(p.unobserved() == test::iota_set(10));
    REQUIRE(p.macrofractions().size() == 1);
    CHECK(p.macrofractions()[0] == test::iota_set(10, 10));

    auto all = make_partition(5, 5, {});
    CHECK(all.unobserved().size() == 5);
    CHECK(all.macrofractions().empty());

    const std::vector<std::size_t> thirty{30};
    auto sym = make_partition(60, 30, thirty);
    CHECK(sym.unobserved().size() == 30);
    CHECK(sym.macrofractions()[0].front() == 30);
    CHECK(sym.macrofractions()[0].back() == 59);

    const std::vector<std::size_t> big{11};
    CHECK_THROWS_AS(make_partition(20, 10, big), InputError);
}

TEST_CASE("partition index sets are pairwise disjoint") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> pick(0, 8);
        std::vector<std::size_t> macs;
        const std::size_t unobs = pick(rng);
        std::size_t used = unobs;
        const std::size_t count = pick(rng) % 4;
        for (std::size_t i = 0; i < count; ++i) {
            macs.push_back(1 + pick(rng));
            used += macs.back();
        }
        const auto p = make_partition(used + pick(rng), unobs, macs);
        std::set<std::size_t> seen(p.unobserved().begin(), p.unobserved().end());
        std::size_t total = p.unobserved().size();
        for (const auto& m : p.macrofractions()) {
            seen.insert(m.begin(), m.end());
            total += m.size();
        }
        CHECK(seen.size() == total);
    }
}

TEST_CASE("Partition rejects overlap and empty macrofractions") {
    CHECK_THROWS_AS(Partition({0, 1}, {{1, 2}}), InputError);
    CHECK_THROWS_AS(Partition({0}, {{}}), InputError);
    CHECK_THROWS_AS(Partition({0}, {{5}}).check_within(3), InputError);
}

TEST_CASE("validate_offresonance") {
    const auto w = sample_frequencies(50, 4.5e9, 3e9, 3);
    CHECK(validate_offresonance(w, 3e8, 5.0));
    CHECK_FALSE(validate_offresonance(std::vector<double>{3e8}, 3e8, 1.5));
    CHECK_FALSE(validate_offresonance(std::vector<double>{3e8 * 4.9, 3e8 * 10}, 3e8, 5.0));
    CHECK(validate_offresonance(std::vector<double>{3e8 / 6}, 3e8, 5.0));
    CHECK_THROWS_AS(validate_offresonance(w, 3e8, 1.0), InputError);
}

TEST_CASE("build_bath") {
    SystemSpec sys = test::paper_system();
    const std::vector<std::size_t> macs{4};
    const auto partition = make_partition(8, 4, macs);

    SUBCASE("independent draws are reproducible") {
        BathRecipe r;
        r.n = 8;
        CHECK(build_bath(r, sys, partition) == build_bath(r, sys, partition));
        BathRecipe other = r;
        other.seed = 2;
        CHECK_FALSE(build_bath(r, sys, partition) == build_bath(other, sys, partition));
    }
    SUBCASE("shared spectrum gives identical frequency multisets") {
        BathRecipe r;
        r.n = 8;
        r.shared_spectrum = true;
        const auto bath = build_bath(r, sys, partition);
        for (std::size_t j = 0; j < 4; ++j) CHECK(bath.omega(j) == bath.omega(4 + j));
        CHECK(bath.coupling(0) == bath.coupling(7));
    }
    SUBCASE("shared spectrum needs equal set sizes") {
        BathRecipe r;
        r.n = 8;
        r.shared_spectrum = true;
        const std::vector<std::size_t> uneven{3};
        CHECK_THROWS_AS(build_bath(r, sys, make_partition(8, 4, uneven)), InputError);
    }
    SUBCASE("explicit couplings") {
        BathRecipe r;
        r.n = 8;
        r.couplings = std::vector<double>(8, 3.0);
        CHECK(build_bath(r, sys, partition).coupling(5) == 3.0);
        r.couplings = std::vector<double>(7, 3.0);
        CHECK_THROWS_AS(build_bath(r, sys, partition), InputError);
    }
}

TEST_CASE("BathSpec and state validation") {
    CHECK_THROWS_AS(BathSpec({1.0}, {1.0, 2.0}, {1.0}), InputError);
    CHECK_THROWS_AS(BathSpec({1.0}, {0.0}, {1.0}), InputError);
    CHECK_THROWS_AS(validate(EnvInitState{0.0, 0.0}), InputError);
    CHECK_THROWS_AS(validate(SystemSpec{-1.0, 1.0, 0.0, 0.0}), InputError);
    const UnitContext u;
    const auto env = EnvInitState::from_beta(2.0, u);
    CHECK(env.beta(u) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("derive_seed gives distinct streams") {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_seed(42, i));
    CHECK(seeds.size() == 1000);
    CHECK(derive_seed(42, 3) == derive_seed(42, 3));
}
