#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qbm/bath.hpp"
#include "qbm/units.hpp"

// Full QBM model with the central oscillator's frequency Omega kept. All
// amplitudes are divided by hbar, so they carry units of 1/m^2 and
// (dx^2 / 2) * amplitude is a dimensionless exponent.
namespace qbm::full {

enum class Factor { gamma, b };

inline constexpr double default_resonance_guard = 1e-6;

// Throws NumericalGuardError when |omega - Omega| / Omega <= guard.
void check_resonance(double omega, double omega_big, double guard = default_resonance_guard);

// |alpha_k(t)|^2 / hbar, the closed trigonometric form
//   C^2 w / (2 m (w^2 - W^2)^2) [ (cos wt - cos Wt)^2 + (sin wt - (W/w) sin Wt)^2 ].
double alpha_sq_full(double t, double omega, double omega_big, double m, double c, const UnitContext& units);

// Re alpha_k(t)^2 / hbar with A = w + W, B = w - W:
//   C^2/(4 m w) { [cos 2At - 2 cos At]/(2A^2) + [cos 2Bt - 2 cos Bt]/(2B^2)
//                 + [cos 2wt - cos Bt - cos At]/(AB) + 2 w^2/(AB)^2 }
double re_alpha_sq_full(double t, double omega, double omega_big, double m, double c, const UnitContext& units);

// The displacement amplitude itself, alpha_k(t) / sqrt(hbar):
//   -sqrt(C^2 / (8 m w)) [ (e^{iAt} - 1)/A + (e^{iBt} - 1)/B ].
// Its modulus and real square reproduce the two closed forms above.
std::complex<double> alpha_full(double t, double omega, double omega_big, double m, double c,
                                const UnitContext& units);

// |alpha~|^2 = ch(2r) [ |alpha|^2 - th(2r) Re alpha^2 ] for a squeezed thermal
// environment, evaluated as e^{2r} (Im alpha)^2 + e^{-2r} (Re alpha)^2.
double alpha_sq_squeezed(double t, double omega, double omega_big, double m, double c, double r,
                         const UnitContext& units);

struct FullAmplitude {
    double alpha_sq{0.0};
    double re_alpha_sq{0.0};
    double alpha_sq_squeezed{0.0};
};

FullAmplitude full_amplitude(double t, double omega, double omega_big, double m, double c, double r,
                             const UnitContext& units);

double log_gamma_full(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                      std::span<const std::size_t> idx, const UnitContext& units);
double log_b_full(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                  std::span<const std::size_t> idx, const UnitContext& units);
double gamma_full(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                  std::span<const std::size_t> idx, const UnitContext& units);
double b_full(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
              std::span<const std::size_t> idx, const UnitContext& units);

struct FactorSeries {
    std::vector<double> times;
    std::vector<double> gamma;
    std::vector<double> b;
    std::string label;  // regime / bath identifier
};

FactorSeries make_series(std::span<const double> times, const std::function<double(double)>& gamma,
                         const std::function<double(double)>& b, std::string label = {});

struct TimeAverage {
    double value{1.0};
    double log_value{0.0};
    double half_window_value{1.0};  // same estimate over [0, tau/2]
    double convergence{0.0};        // |value - half_window_value|
};

// Midpoint-rule estimate of (1/tau) int_0^tau factor(t) dt on n_samples
// uniform points, accumulated in log space.
TimeAverage time_average_numeric(Factor factor, const BathSpec& bath, const SystemSpec& system,
                                 const EnvInitState& env, std::span<const std::size_t> idx, double tau,
                                 std::size_t n_samples, const UnitContext& units, unsigned threads = 1);

// Same estimator over a (temperature x squeezing) grid, sharing the
// amplitude evaluation across grid points. Results are row-major in
// temperature and do not depend on `threads`.
struct GridAverage {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<double> log_value;
    std::vector<double> log_half_window;
};

GridAverage time_average_grid(Factor factor, const BathSpec& bath, const SystemSpec& system,
                              std::span<const std::size_t> idx, std::span<const double> temperatures,
                              std::span<const double> squeezings, double tau, std::size_t n_samples,
                              const UnitContext& units, unsigned threads = 1);

// tau = 1e4 periods of the slowest oscillator in idx.
double default_tau(const BathSpec& bath, std::span<const std::size_t> idx);
// ceil(20 tau max(w) / 2pi), at least 1000.
std::size_t default_samples(const BathSpec& bath, std::span<const std::size_t> idx, double tau);

} // namespace qbm::full
