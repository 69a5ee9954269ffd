#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qbm/bath.hpp"
#include "qbm/units.hpp"

// Partial quantum measurement limit: environment self-Hamiltonians kept,
// system self-Hamiltonian dropped. Each oscillator contributes
//   ln factor_k(t) = a_k (cos w_k t - 1),
//   a_k = dx^2 C_k^2 {cth|th}(hbar w_k / 2 k_B T) / (2 m_k w_k^3 hbar),
// and its infinite-time average is e^{-a_k} I0(a_k).
namespace qbm::pqml {

enum class Factor { decoherence, distinguishability };

// Displacement amplitude and phase, normalised by sqrt(hbar): alpha in 1/m,
// zeta in 1/m^2, so alpha * X and zeta * X^2 are dimensionless.
struct PqmlPropagator {
    std::complex<double> alpha;
    double zeta{0.0};
};

PqmlPropagator pqml_propagator(double t, double omega, double m, double c, const UnitContext& units);

// Per-oscillator amplitude a_k for the requested factor.
double amplitude(const BathSpec& bath, std::size_t k, const SystemSpec& system, const EnvInitState& env,
                 Factor which, const UnitContext& units);

double log_gamma_pqml(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                      std::span<const std::size_t> idx, const UnitContext& units);
double log_b_pqml(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                  std::span<const std::size_t> idx, const UnitContext& units);
double gamma_pqml(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                  std::span<const std::size_t> idx, const UnitContext& units);
double b_pqml(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
              std::span<const std::size_t> idx, const UnitContext& units);

struct OscillatorTerm {
    std::size_t index{0};
    double baseline_exponent{0.0};  // a_k in exp(-sum a_k)
    double i0_argument{0.0};        // a_k in prod I0(a_k)
    double log_factor{0.0};         // ln(e^{-a_k} I0(a_k))
};

struct AvgResult {
    Factor which{Factor::decoherence};
    double log_avg{0.0};
    std::vector<OscillatorTerm> terms;
    // Exact frequency collisions weaken the ergodic substitution; the value
    // is still returned.
    bool duplicate_frequencies{false};

    double value() const;
};

AvgResult avg_analytic(const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                       std::span<const std::size_t> idx, Factor which, const UnitContext& units);

// sqrt(M gamma0) |X - X'| / (omega^{3/2} sqrt(hbar)). Its square over 2 pi is
// the zero-temperature I0 argument for prefactor-1 couplings.
double check_large_separation(const SystemSpec& system, double omega, double gamma0, const UnitContext& units);

inline constexpr double default_separation_threshold = 10.0;

// Large-separation, zero-temperature approximation of ln<|Gamma|> (and ln<B>):
//   sum_k [ (3/2) ln w_k + (1/2) ln hbar - ln(sqrt(M gamma0) dx) ]
// Requires C_k = sqrt(M m_k gamma0 / pi) and the separation ratio above the threshold.
double avg_asymptotic(const BathSpec& bath, const SystemSpec& system, std::span<const std::size_t> idx,
                      double gamma0, const UnitContext& units,
                      double threshold = default_separation_threshold);

struct ScalingComparison {
    double log_empirical{0.0};  // ln of the Monte Carlo mean of <|Gamma|>
    double log_predicted{0.0};  // -mN ln( sqrt(M gamma0) dx / (omega_bar^{3/2} sqrt(hbar)) )
};

ScalingComparison freq_averaged_scaling(const SystemSpec& system, double omega_bar, double delta,
                                        std::size_t mac_size, double gamma0, std::size_t mc_samples,
                                        std::uint64_t seed, const UnitContext& units, unsigned threads = 1,
                                        double threshold = default_separation_threshold);

} // namespace qbm::pqml
