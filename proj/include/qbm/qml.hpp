#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qbm/bath.hpp"

// Quantum measurement limit: self-Hamiltonians neglected, oscillator masses
// and frequencies set to unity. Factors decay as Gaussians in time.
namespace qbm::qml {

struct QmlParams {
    double dx{1.0};        // |X - X'|
    double beta_eff{1.0};  // dimensionless inverse temperature
    std::vector<double> couplings;
    double hbar{1.0};      // exponent divisor; 1 in the dimensionless convention
};

void validate(const QmlParams& params);

enum class Factor { decoherence, distinguishability };

struct Timescales {
    double tau_d{0.0};
    double tau_b{0.0};
};

// ln|Gamma| = -(dx^2 / 2 hbar) t^2 cth(beta/2) sum_{k in idx} C_k^2
double log_gamma_qml(double t, const QmlParams& params, std::span<const std::size_t> idx);
// ln B, same with th(beta/2)
double log_b_qml(double t, const QmlParams& params, std::span<const std::size_t> idx);

double gamma_qml(double t, const QmlParams& params, std::span<const std::size_t> idx);
double b_qml(double t, const QmlParams& params, std::span<const std::size_t> idx);

// Law-of-large-numbers form exp[-size (t/tau)^2].
double lln_factor(double t, double dx, double beta_eff, double c2_mean, std::size_t size, Factor which,
                  double hbar = 1.0);
double log_lln_factor(double t, double dx, double beta_eff, double c2_mean, std::size_t size, Factor which,
                      double hbar = 1.0);

// 1/tau_D = dx sqrt(cth(beta/2) C2 / (2 hbar)), 1/tau_B likewise with th.
// Returns nullopt when dx == 0: the factors never decay.
std::optional<Timescales> timescales(double dx, double beta_eff, double c2_mean, double hbar = 1.0);

double mean_square(std::span<const double> couplings, std::span<const std::size_t> idx);

} // namespace qbm::qml
