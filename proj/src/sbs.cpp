#include "qbm/sbs.hpp"

#include <algorithm>
#include <cmath>

#include "qbm/errors.hpp"
#include "qbm/full_model.hpp"
#include "qbm/numeric.hpp"

namespace qbm::sbs {

SbsVerdict sbs_verdict(double gamma, double b, double epsilon) {
    require(epsilon > 0.0 && epsilon <= 1.0, "epsilon must lie in (0, 1]");
    return {gamma <= epsilon && b <= epsilon, gamma, b, epsilon};
}

std::string to_string(Regime regime) {
    switch (regime) {
    case Regime::qml: return "qml";
    case Regime::pqml: return "pqml";
    case Regime::full: return "full";
    }
    return "full";
}

Regime regime_from_string(const std::string& name) {
    if (name == "qml") return Regime::qml;
    if (name == "pqml") return Regime::pqml;
    if (name == "full") return Regime::full;
    throw InputError("unknown regime '" + name + "' (expected qml, pqml or full)");
}

std::pair<TimeFunction, TimeFunction> factor_functions(const ModelContext& ctx,
                                                       std::span<const std::size_t> unobserved,
                                                       std::span<const std::size_t> observed) {
    const IndexSet u(unobserved.begin(), unobserved.end());
    const IndexSet o(observed.begin(), observed.end());
    switch (ctx.regime) {
    case Regime::qml:
        return {[&ctx, u](double t) { return qml::gamma_qml(t, ctx.qml, u); },
                [&ctx, o](double t) { return qml::b_qml(t, ctx.qml, o); }};
    case Regime::pqml:
        return {[&ctx, u](double t) { return pqml::gamma_pqml(t, ctx.bath, ctx.system, ctx.env, u, ctx.units); },
                [&ctx, o](double t) { return pqml::b_pqml(t, ctx.bath, ctx.system, ctx.env, o, ctx.units); }};
    case Regime::full:
        break;
    }
    return {[&ctx, u](double t) { return full::gamma_full(t, ctx.bath, ctx.system, ctx.env, u, ctx.units); },
            [&ctx, o](double t) { return full::b_full(t, ctx.bath, ctx.system, ctx.env, o, ctx.units); }};
}

FormationResult formation_time(const TimeFunction& gamma, const TimeFunction& b, double epsilon, double t_max,
                               std::size_t t_steps) {
    require(t_max > 0.0, "t_max must be positive");
    require(t_steps >= 1, "t_steps must be >= 1");
    require(epsilon > 0.0 && epsilon <= 1.0, "epsilon must lie in (0, 1]");
    FormationResult res;
    res.grid_step = t_max / static_cast<double>(t_steps);
    for (std::size_t i = 0; i <= t_steps; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(t_steps);
        const double g = gamma(t);
        const double bv = b(t);
        if (res.time) {
            res.max_after_crossing = std::max({res.max_after_crossing, g, bv});
        } else if (g <= epsilon && bv <= epsilon) {
            res.time = t;
            res.max_after_crossing = std::max(g, bv);
        }
    }
    return res;
}

FormationResult formation_time(const ModelContext& ctx, std::span<const std::size_t> unobserved,
                               std::span<const std::size_t> observed, double epsilon, double t_max,
                               std::size_t t_steps) {
    const auto [g, b] = factor_functions(ctx, unobserved, observed);
    FormationResult res = formation_time(g, b, epsilon, t_max, t_steps);
    if (ctx.regime == Regime::qml && !unobserved.empty() && !observed.empty()) {
        // size (t/tau)^2 = ln(1/eps) for each factor; the slower one sets formation.
        const double target = std::log(1.0 / epsilon);
        const auto& p = ctx.qml;
        const auto ts_u = qml::timescales(p.dx, p.beta_eff, qml::mean_square(p.couplings, unobserved), p.hbar);
        const auto ts_o = qml::timescales(p.dx, p.beta_eff, qml::mean_square(p.couplings, observed), p.hbar);
        if (ts_u && ts_o) {
            const double t_d = std::sqrt(target / static_cast<double>(unobserved.size())) * ts_u->tau_d;
            const double t_b = std::sqrt(target / static_cast<double>(observed.size())) * ts_o->tau_b;
            res.analytic_time = std::max(t_d, t_b);
        }
    }
    return res;
}

std::vector<double> AxisRange::values() const {
    require(points >= 1, "axis needs at least one point");
    require(std::isfinite(min) && std::isfinite(max) && max >= min, "axis needs finite min <= max");
    std::vector<double> out;
    if (include_zero) out.push_back(0.0);
    if (log) require(min > 0.0, "logarithmic axis needs min > 0");
    for (std::size_t i = 0; i < points; ++i) {
        const double u = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        out.push_back(log ? std::exp(std::log(min) + u * (std::log(max) - std::log(min))) : min + u * (max - min));
    }
    if (!out.empty() && points > 1) out.back() = max;
    return out;
}

ScanGrid scan_tr(const BathSpec& bath, const SystemSpec& system, const Partition& partition,
                 const AxisRange& t_range, const AxisRange& r_range, double tau, std::size_t n_samples,
                 const UnitContext& units, unsigned threads, BathFingerprint fingerprint) {
    require(!partition.unobserved().empty(), "scan needs a non-empty unobserved set");
    require(!partition.macrofractions().empty(), "scan needs at least one macrofraction");
    require(!t_range.include_zero, "temperature axis cannot include zero");
    partition.check_within(bath.size());

    ScanGrid grid;
    grid.t_values = t_range.values();
    grid.r_values = r_range.values();
    for (double temp : grid.t_values) require(temp > 0.0, "temperatures must be positive");
    const auto& unobserved = partition.unobserved();
    const auto& observed = partition.macrofractions().front();

    const auto g = full::time_average_grid(full::Factor::gamma, bath, system, unobserved, grid.t_values,
                                           grid.r_values, tau, n_samples, units, threads);
    const auto b = full::time_average_grid(full::Factor::b, bath, system, observed, grid.t_values,
                                           grid.r_values, tau, n_samples, units, threads);
    const std::size_t cells = g.log_value.size();
    grid.log_avg_gamma = g.log_value;
    grid.log_avg_b = b.log_value;
    grid.avg_gamma.resize(cells);
    grid.avg_b.resize(cells);
    grid.convergence_gamma.resize(cells);
    grid.convergence_b.resize(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        grid.avg_gamma[c] = std::exp(g.log_value[c]);
        grid.avg_b[c] = std::exp(b.log_value[c]);
        grid.convergence_gamma[c] = std::fabs(grid.avg_gamma[c] - std::exp(g.log_half_window[c]));
        grid.convergence_b[c] = std::fabs(grid.avg_b[c] - std::exp(b.log_half_window[c]));
    }
    grid.bath = fingerprint;
    if (grid.bath.n == 0) grid.bath.n = bath.size();
    grid.unobserved_size = unobserved.size();
    grid.observed_size = observed.size();
    grid.tau = tau;
    grid.n_samples = n_samples;
    return grid;
}

ScalingResult macrofraction_scaling(const std::function<double(std::size_t)>& log_factor_of_size,
                                    std::span<const std::size_t> sizes) {
    require(!sizes.empty(), "macrofraction_scaling needs at least one size");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        require(sizes[i] > sizes[i - 1], "macrofraction sizes must be strictly increasing");
    ScalingResult res;
    std::vector<double> xs, ys;
    for (std::size_t s : sizes) {
        const double lf = s == 0 ? 0.0 : log_factor_of_size(s);
        res.points.push_back({s, lf});
        xs.push_back(static_cast<double>(s));
        ys.push_back(lf);
    }
    if (xs.size() >= 2) {
        const auto fit = fit_line(xs, ys);
        res.slope = fit.slope;
        res.max_abs_residual = fit.max_abs_residual;
    } else if (xs.front() > 0.0) {
        res.slope = ys.front() / xs.front();
    }
    return res;
}

namespace {

std::function<IndexSet(std::size_t)> prefix_of(std::span<const std::size_t> pool, std::span<const std::size_t> sizes) {
    for (std::size_t s : sizes) require(s <= pool.size(), "index pool too small for requested macrofraction size");
    const IndexSet p(pool.begin(), pool.end());
    return [p](std::size_t s) { return IndexSet(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(s)); };
}

} // namespace

ScalingResult qml_scaling(const qml::QmlParams& params, std::span<const std::size_t> pool,
                          std::span<const std::size_t> sizes, double t, qml::Factor which) {
    const auto prefix = prefix_of(pool, sizes);
    return macrofraction_scaling(
        [&](std::size_t s) {
            const auto idx = prefix(s);
            return which == qml::Factor::decoherence ? qml::log_gamma_qml(t, params, idx)
                                                     : qml::log_b_qml(t, params, idx);
        },
        sizes);
}

ScalingResult pqml_scaling(const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                           std::span<const std::size_t> pool, std::span<const std::size_t> sizes,
                           pqml::Factor which, const UnitContext& units) {
    const auto prefix = prefix_of(pool, sizes);
    return macrofraction_scaling(
        [&](std::size_t s) { return pqml::avg_analytic(bath, system, env, prefix(s), which, units).log_avg; },
        sizes);
}

} // namespace qbm::sbs
