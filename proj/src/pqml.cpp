#include "qbm/pqml.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qbm/errors.hpp"
#include "qbm/numeric.hpp"
#include "qbm/specfun.hpp"

namespace qbm::pqml {

namespace {

void check_inputs(const SystemSpec& system, const EnvInitState& env, const UnitContext& units) {
    validate(system);
    validate(env);
    validate(units);
    require(env.squeezing_r == 0.0, "pqml: squeezed initial states are not supported in this regime");
}

double log_factor(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                  std::span<const std::size_t> idx, Factor which, const UnitContext& units) {
    check_inputs(system, env, units);
    require(t >= 0.0, "time must be >= 0");
    CompensatedSum acc;
    for (std::size_t k : idx) {
        const double s = std::sin(0.5 * bath.omega(k) * t);
        acc += -2.0 * amplitude(bath, k, system, env, which, units) * s * s;  // a (cos wt - 1)
    }
    return acc.value();
}

} // namespace

PqmlPropagator pqml_propagator(double t, double omega, double m, double c, const UnitContext& units) {
    require(t >= 0.0, "time must be >= 0");
    require(omega > 0.0 && m > 0.0 && c > 0.0, "pqml_propagator: omega, m, c must be positive");
    const double w3 = omega * omega * omega;
    const double wt = omega * t;
    PqmlPropagator p;
    // e^{iwt} - 1 = 2i sin(wt/2) e^{iwt/2}
    const double s = std::sin(0.5 * wt);
    const std::complex<double> phase_minus_one =
        std::complex<double>(0.0, 2.0 * s) * std::polar(1.0, 0.5 * wt);
    p.alpha = -(c / std::sqrt(2.0 * m * w3 * units.hbar)) * phase_minus_one;
    p.zeta = (c * c / (m * w3 * units.hbar)) * (wt - std::sin(wt));
    return p;
}

double amplitude(const BathSpec& bath, std::size_t k, const SystemSpec& system, const EnvInitState& env,
                 Factor which, const UnitContext& units) {
    const double w = bath.omega(k);
    const double c = bath.coupling(k);
    const double x = units.thermal_argument(w, env.temperature);
    const double thermal = which == Factor::decoherence ? coth(x) : std::tanh(x);
    return system.separation_sq() * c * c * thermal / (2.0 * bath.mass(k) * w * w * w * units.hbar);
}

double log_gamma_pqml(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                      std::span<const std::size_t> idx, const UnitContext& units) {
    return log_factor(t, bath, system, env, idx, Factor::decoherence, units);
}

double log_b_pqml(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                  std::span<const std::size_t> idx, const UnitContext& units) {
    return log_factor(t, bath, system, env, idx, Factor::distinguishability, units);
}

double gamma_pqml(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                  std::span<const std::size_t> idx, const UnitContext& units) {
    return std::exp(log_gamma_pqml(t, bath, system, env, idx, units));
}

double b_pqml(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
              std::span<const std::size_t> idx, const UnitContext& units) {
    return std::exp(log_b_pqml(t, bath, system, env, idx, units));
}

double AvgResult::value() const { return std::exp(log_avg); }

AvgResult avg_analytic(const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                       std::span<const std::size_t> idx, Factor which, const UnitContext& units) {
    check_inputs(system, env, units);
    AvgResult out;
    out.which = which;
    out.terms.reserve(idx.size());
    CompensatedSum acc;
    for (std::size_t k : idx) {
        OscillatorTerm term;
        term.index = k;
        term.baseline_exponent = amplitude(bath, k, system, env, which, units);
        term.i0_argument = term.baseline_exponent;
        term.log_factor = specfun::log_scaled_i0(term.i0_argument);
        acc += term.log_factor;
        out.terms.push_back(term);
    }
    out.log_avg = acc.value();

    std::vector<double> freqs;
    freqs.reserve(idx.size());
    for (std::size_t k : idx) freqs.push_back(bath.omega(k));
    std::sort(freqs.begin(), freqs.end());
    out.duplicate_frequencies = std::adjacent_find(freqs.begin(), freqs.end()) != freqs.end();
    return out;
}

double check_large_separation(const SystemSpec& system, double omega, double gamma0, const UnitContext& units) {
    require(omega > 0.0 && gamma0 > 0.0, "check_large_separation: omega and gamma0 must be positive");
    return std::sqrt(system.mass * gamma0) * system.separation() / (std::pow(omega, 1.5) * std::sqrt(units.hbar));
}

double avg_asymptotic(const BathSpec& bath, const SystemSpec& system, std::span<const std::size_t> idx,
                      double gamma0, const UnitContext& units, double threshold) {
    validate(system);
    validate(units);
    require(gamma0 > 0.0, "avg_asymptotic: gamma0 must be positive");
    const double log_scale = std::log(std::sqrt(system.mass * gamma0) * system.separation());
    CompensatedSum acc;
    for (std::size_t k : idx) {
        const double expected_c = std::sqrt(system.mass * bath.mass(k) * gamma0 / std::numbers::pi);
        if (std::fabs(bath.coupling(k) - expected_c) > 1e-9 * expected_c)
            throw InputError("avg_asymptotic: oscillator " + std::to_string(k) +
                             " does not have C_k = sqrt(M m_k gamma0 / pi)");
        const double ratio = check_large_separation(system, bath.omega(k), gamma0, units);
        if (!(ratio >= threshold))
            throw NumericalGuardError("avg_asymptotic: large-separation ratio " + std::to_string(ratio) +
                                      " below threshold at oscillator " + std::to_string(k));
        acc += 1.5 * std::log(bath.omega(k)) + 0.5 * std::log(units.hbar) - log_scale;
    }
    return acc.value();
}

ScalingComparison freq_averaged_scaling(const SystemSpec& system, double omega_bar, double delta,
                                        std::size_t mac_size, double gamma0, std::size_t mc_samples,
                                        std::uint64_t seed, const UnitContext& units, unsigned threads,
                                        double threshold) {
    validate(system);
    require(mc_samples >= 1, "freq_averaged_scaling: need at least one sample");
    require(mac_size >= 1, "freq_averaged_scaling: macrofraction size must be >= 1");
    require(delta >= 0.0 && delta <= omega_bar / 5.0, "freq_averaged_scaling: band must satisfy delta <= omega_bar/5");
    const double top = omega_bar + 0.5 * delta;
    const double worst = check_large_separation(system, top, gamma0, units);
    if (!(worst >= threshold))
        throw NumericalGuardError("freq_averaged_scaling: band edge violates the large-separation condition (ratio " +
                                  std::to_string(worst) + ")");

    std::vector<double> logs(mc_samples);
    IndexSet all(mac_size);
    for (std::size_t i = 0; i < mac_size; ++i) all[i] = i;
    parallel_for(mc_samples, threads, [&](std::size_t s) {
        auto omegas = sample_frequencies(mac_size, omega_bar, delta, derive_seed(seed, s));
        std::vector<double> masses(mac_size, 1.0);
        auto couplings = couplings_from_masses(masses, system.mass, gamma0, CouplingPrefactor::one);
        const BathSpec bath(std::move(omegas), std::move(masses), std::move(couplings));
        logs[s] = avg_asymptotic(bath, system, all, gamma0, units, threshold);
    });

    ScalingComparison out;
    out.log_empirical = log_mean_exp(logs);
    out.log_predicted = -static_cast<double>(mac_size) *
                        std::log(check_large_separation(system, omega_bar, gamma0, units));
    return out;
}

} // namespace qbm::pqml
