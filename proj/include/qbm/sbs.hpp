#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qbm/bath.hpp"
#include "qbm/pqml.hpp"
#include "qbm/qml.hpp"
#include "qbm/units.hpp"

namespace qbm::sbs {

inline constexpr double default_epsilon = 0.01;

struct SbsVerdict {
    bool formed{false};
    double gamma_value{1.0};
    double b_value{1.0};
    double epsilon{default_epsilon};
};

// Formed iff both the decoherence factor and the generalized overlap are <= epsilon.
SbsVerdict sbs_verdict(double gamma, double b, double epsilon);

enum class Regime { qml, pqml, full };

std::string to_string(Regime regime);
Regime regime_from_string(const std::string& name);

// Everything needed to evaluate Gamma(t) and B(t) in one regime.
struct ModelContext {
    Regime regime{Regime::full};
    BathSpec bath;
    SystemSpec system;
    EnvInitState env;
    UnitContext units;
    qml::QmlParams qml;  // used only by Regime::qml
};

using TimeFunction = std::function<double(double)>;

// Gamma over `unobserved`, B over `observed`.
std::pair<TimeFunction, TimeFunction> factor_functions(const ModelContext& ctx,
                                                       std::span<const std::size_t> unobserved,
                                                       std::span<const std::size_t> observed);

struct FormationResult {
    std::optional<double> time;           // first grid time with both factors <= epsilon
    std::optional<double> analytic_time;  // closed-form prediction (qml only)
    double max_after_crossing{0.0};       // largest max(Gamma, B) after the crossing; reveals revivals
    double grid_step{0.0};
};

// Scans t_i = i t_max / t_steps, i = 0..t_steps.
FormationResult formation_time(const TimeFunction& gamma, const TimeFunction& b, double epsilon, double t_max,
                               std::size_t t_steps);

FormationResult formation_time(const ModelContext& ctx, std::span<const std::size_t> unobserved,
                               std::span<const std::size_t> observed, double epsilon, double t_max,
                               std::size_t t_steps);

struct AxisRange {
    double min{1.0};
    double max{1.0};
    std::size_t points{1};
    bool log{true};
    bool include_zero{false};  // prepend an exact 0 (squeezing axis)

    std::vector<double> values() const;
    bool operator==(const AxisRange&) const = default;
};

struct BathFingerprint {
    std::uint64_t seed{0};
    double omega_bar{0.0};
    double delta{0.0};
    std::size_t n{0};
};

struct ScanGrid {
    std::vector<double> t_values;  // temperatures [K]
    std::vector<double> r_values;  // squeezing
    // Row-major, rows = temperatures.
    std::vector<double> avg_gamma;
    std::vector<double> avg_b;
    std::vector<double> log_avg_gamma;
    std::vector<double> log_avg_b;
    std::vector<double> convergence_gamma;
    std::vector<double> convergence_b;
    BathFingerprint bath;
    std::size_t unobserved_size{0};
    std::size_t observed_size{0};
    double tau{0.0};
    std::size_t n_samples{0};

    double gamma_at(std::size_t ti, std::size_t ri) const { return avg_gamma[ti * r_values.size() + ri]; }
    double b_at(std::size_t ti, std::size_t ri) const { return avg_b[ti * r_values.size() + ri]; }
};

// Time-averaged full-model Gamma (over the unobserved set) and B (over the
// first macrofraction) on a temperature x squeezing grid, with one bath for
// the whole grid.
ScanGrid scan_tr(const BathSpec& bath, const SystemSpec& system, const Partition& partition,
                 const AxisRange& t_range, const AxisRange& r_range, double tau, std::size_t n_samples,
                 const UnitContext& units, unsigned threads = 1, BathFingerprint fingerprint = {});

struct ScalingPoint {
    std::size_t size{0};
    double log_factor{0.0};
};

struct ScalingResult {
    std::vector<ScalingPoint> points;
    double slope{0.0};
    double max_abs_residual{0.0};
};

// Evaluates ln factor for each size and fits ln factor = slope * size + c.
ScalingResult macrofraction_scaling(const std::function<double(std::size_t)>& log_factor_of_size,
                                    std::span<const std::size_t> sizes);

// QML factor at fixed t using the first `size` members of pool.
ScalingResult qml_scaling(const qml::QmlParams& params, std::span<const std::size_t> pool,
                          std::span<const std::size_t> sizes, double t, qml::Factor which);

// Analytic PQML time average using the first `size` members of pool.
ScalingResult pqml_scaling(const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                           std::span<const std::size_t> pool, std::span<const std::size_t> sizes,
                           pqml::Factor which, const UnitContext& units);

} // namespace qbm::sbs
