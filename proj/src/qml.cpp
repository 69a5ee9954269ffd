#include "qbm/qml.hpp"

#include <cmath>
#include <string>

#include "qbm/errors.hpp"
#include "qbm/numeric.hpp"
#include "qbm/units.hpp"

namespace qbm::qml {

namespace {

double sum_c2(const QmlParams& params, std::span<const std::size_t> idx) {
    CompensatedSum acc;
    for (std::size_t k : idx) {
        require(k < params.couplings.size(), "index " + std::to_string(k) + " outside the coupling list");
        const double c = params.couplings[k];
        acc += c * c;
    }
    return acc.value();
}

double thermal(double beta_eff, Factor which) {
    return which == Factor::decoherence ? coth(0.5 * beta_eff) : std::tanh(0.5 * beta_eff);
}

double log_factor(double t, const QmlParams& params, std::span<const std::size_t> idx, Factor which) {
    validate(params);
    require(t >= 0.0, "time must be >= 0");
    const double dx2 = params.dx * params.dx;
    return -(dx2 / (2.0 * params.hbar)) * t * t * thermal(params.beta_eff, which) * sum_c2(params, idx);
}

} // namespace

void validate(const QmlParams& params) {
    require(params.dx >= 0.0 && std::isfinite(params.dx), "qml: dx must be >= 0");
    require(params.beta_eff > 0.0, "qml: beta must be positive");
    require(params.hbar > 0.0, "qml: hbar must be positive");
}

double log_gamma_qml(double t, const QmlParams& params, std::span<const std::size_t> idx) {
    return log_factor(t, params, idx, Factor::decoherence);
}

double log_b_qml(double t, const QmlParams& params, std::span<const std::size_t> idx) {
    return log_factor(t, params, idx, Factor::distinguishability);
}

double gamma_qml(double t, const QmlParams& params, std::span<const std::size_t> idx) {
    return std::exp(log_gamma_qml(t, params, idx));
}

double b_qml(double t, const QmlParams& params, std::span<const std::size_t> idx) {
    return std::exp(log_b_qml(t, params, idx));
}

double log_lln_factor(double t, double dx, double beta_eff, double c2_mean, std::size_t size, Factor which,
                      double hbar) {
    require(size >= 1, "lln: size must be >= 1");
    require(c2_mean > 0.0, "lln: mean-square coupling must be positive");
    require(t >= 0.0, "time must be >= 0");
    const auto ts = timescales(dx, beta_eff, c2_mean, hbar);
    if (!ts) return 0.0;
    const double tau = which == Factor::decoherence ? ts->tau_d : ts->tau_b;
    const double x = t / tau;
    return -static_cast<double>(size) * x * x;
}

double lln_factor(double t, double dx, double beta_eff, double c2_mean, std::size_t size, Factor which,
                  double hbar) {
    return std::exp(log_lln_factor(t, dx, beta_eff, c2_mean, size, which, hbar));
}

std::optional<Timescales> timescales(double dx, double beta_eff, double c2_mean, double hbar) {
    require(dx >= 0.0, "timescales: dx must be >= 0");
    require(beta_eff > 0.0 && c2_mean > 0.0 && hbar > 0.0, "timescales: beta, C2 and hbar must be positive");
    if (dx == 0.0) return std::nullopt;
    const double base = c2_mean / (2.0 * hbar);
    Timescales ts;
    ts.tau_d = 1.0 / (dx * std::sqrt(coth(0.5 * beta_eff) * base));
    ts.tau_b = 1.0 / (dx * std::sqrt(std::tanh(0.5 * beta_eff) * base));
    return ts;
}

double mean_square(std::span<const double> couplings, std::span<const std::size_t> idx) {
    require(!idx.empty(), "mean_square of an empty index set");
    CompensatedSum acc;
    for (std::size_t k : idx) {
        require(k < couplings.size(), "index " + std::to_string(k) + " outside the coupling list");
        acc += couplings[k] * couplings[k];
    }
    return acc.value() / static_cast<double>(idx.size());
}

} // namespace qbm::qml
