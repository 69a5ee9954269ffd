#include "qbm/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qbm/bath.hpp"
#include "qbm/full_model.hpp"
#include "qbm/pqml.hpp"
#include "qbm/specfun.hpp"

namespace qbm {

namespace {

std::string describe(const char* what, double value, double limit) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s = %.3e (limit %.1e)", what, value, limit);
    return buf;
}

SelftestCase check(std::string name, const char* what, double value, double limit) {
    return {std::move(name), value <= limit, describe(what, value, limit)};
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

} // namespace

std::vector<SelftestCase> run_selftest(unsigned threads) {
    std::vector<SelftestCase> cases;
    const UnitContext units;
    const SystemSpec paper_system{1e-5, 3e8, 0.0, 1e-9};

    const auto omegas = sample_frequencies(8, 4.5e9, 3e9, 11);
    const std::vector<double> masses(omegas.size(), 1.0);
    const auto couplings = couplings_from_masses(masses, paper_system.mass, 0.33e18, CouplingPrefactor::two);
    const BathSpec bath(omegas, masses, couplings);
    IndexSet all(bath.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

    {
        double worst = 0.0;
        for (std::size_t k = 0; k < bath.size(); ++k)
            for (int i = 1; i <= 200; ++i) {
                const double t = 1e-11 * i;
                const double full = full::alpha_sq_full(t, bath.omega(k), 0.0, 1.0, bath.coupling(k), units);
                const auto p = pqml::pqml_propagator(t, bath.omega(k), 1.0, bath.coupling(k), units);
                worst = std::max(worst, rel(full, std::norm(p.alpha)));
            }
        cases.push_back(check("omega_to_zero_amplitude", "max relative deviation", worst, 1e-10));
    }
    {
        SystemSpec sys = paper_system;
        sys.omega_big = 0.0;
        const EnvInitState env{0.02, 0.0};
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double t = 2.5e-12 * i;
            worst = std::max(worst, std::fabs(full::log_gamma_full(t, bath, sys, env, all, units) -
                                              pqml::log_gamma_pqml(t, bath, sys, env, all, units)));
            worst = std::max(worst, std::fabs(full::log_b_full(t, bath, sys, env, all, units) -
                                              pqml::log_b_pqml(t, bath, sys, env, all, units)));
        }
        cases.push_back(check("omega_to_zero_factors", "max |ln difference|", worst, 1e-10));
    }
    {
        const IndexSet three{0, 1, 2};
        SystemSpec sys = paper_system;
        sys.omega_big = 0.0;
        const EnvInitState env{0.02, 0.0};
        const double tau = full::default_tau(bath, three);
        const std::size_t n = full::default_samples(bath, three, tau);
        double worst = 0.0;
        for (auto [nf, pf] : {std::pair{full::Factor::gamma, pqml::Factor::decoherence},
                              std::pair{full::Factor::b, pqml::Factor::distinguishability}}) {
            const auto numeric = full::time_average_numeric(nf, bath, sys, env, three, tau, n, units, threads);
            const auto analytic = pqml::avg_analytic(bath, sys, env, three, pf, units);
            worst = std::max(worst, rel(numeric.value, analytic.value()));
        }
        cases.push_back(check("ergodic_time_average", "max relative deviation", worst, 5e-3));
    }
    {
        double worst = 0.0;
        for (std::size_t k = 0; k < bath.size(); ++k)
            for (int i = 0; i <= 200; ++i) {
                const double t = 3.7e-12 * i;
                const double plain = full::alpha_sq_full(t, bath.omega(k), paper_system.omega_big, 1.0, bath.coupling(k), units);
                const double sq = full::alpha_sq_squeezed(t, bath.omega(k), paper_system.omega_big, 1.0, bath.coupling(k), 0.0, units);
                worst = std::max(worst, std::fabs(sq - plain) / std::max(plain, 1e-300));
            }
        cases.push_back(check("unsqueezed_reduction", "max relative deviation", worst, 1e-10));
    }
    {
        double worst = 0.0;
        for (std::size_t k = 0; k < bath.size(); ++k) {
            const double scale = full::alpha_sq_full(std::numbers::pi / bath.omega(k), bath.omega(k),
                                                     paper_system.omega_big, 1.0, bath.coupling(k), units);
            worst = std::max(worst, std::fabs(full::re_alpha_sq_full(0.0, bath.omega(k), paper_system.omega_big, 1.0,
                                                                     bath.coupling(k), units)) / scale);
        }
        cases.push_back(check("re_alpha_sq_at_origin", "max |Re alpha^2(0)| / |alpha|^2 scale", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (double z : {0.5, 1.0, 5.0, 25.0, 100.0})
            worst = std::max(worst, rel(std::exp(specfun::log_scaled_i0(z)), specfun::bessel_i0_oracle_scaled(z, 4000)));
        cases.push_back(check("bessel_i0_quadrature", "max relative deviation", worst, 1e-12));
    }
    return cases;
}

} // namespace qbm
