#include "qbm/cli.hpp"

#include <chrono>
#include <ctime>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "qbm/full_model.hpp"
#include "qbm/output.hpp"
#include "qbm/pqml.hpp"
#include "qbm/qml.hpp"
#include "qbm/sbs.hpp"
#include "qbm/selftest.hpp"

namespace qbm::cli {

using nlohmann::json;

void apply(config::RunConfig& c, const Overrides& o) {
    if (o.seed) c.bath.seed = *o.seed;
    if (o.out) c.output.path = *o.out;
    if (o.epsilon) c.run.epsilon = *o.epsilon;
    if (o.threads) c.run.threads = *o.threads;
    if (o.temperature) c.env.temperature = *o.temperature;
    if (o.squeezing) c.env.squeezing_r = *o.squeezing;
    if (o.beta) c.env.beta = *o.beta;
    if (o.tau) c.run.tau = *o.tau;
    if (o.n_samples) c.run.n_samples = *o.n_samples;
    if (o.t_max) c.run.t_max = *o.t_max;
    if (o.t_steps) c.run.t_steps = *o.t_steps;
}

namespace {

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

std::vector<double> time_grid(const config::RunConfig& c, double default_t_max) {
    if (c.run.times) return *c.run.times;
    const double t_max = c.run.t_max.value_or(default_t_max);
    if (!(t_max > c.run.t_min)) throw config::ConfigError("field 'run.t_max' must exceed run.t_min");
    std::vector<double> out(c.run.t_steps + 1);
    for (std::size_t i = 0; i <= c.run.t_steps; ++i)
        out[i] = c.run.t_min + (t_max - c.run.t_min) * static_cast<double>(i) / static_cast<double>(c.run.t_steps);
    return out;
}

json crossing_json(const full::FactorSeries& s, double epsilon) {
    json j = {{"epsilon", epsilon}, {"time", nullptr}, {"max_after_crossing", nullptr}};
    std::optional<std::size_t> first;
    double revival = 0.0;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        if (first) {
            revival = std::max({revival, s.gamma[i], s.b[i]});
        } else if (sbs::sbs_verdict(s.gamma[i], s.b[i], epsilon).formed) {
            first = i;
            revival = std::max(s.gamma[i], s.b[i]);
        }
    }
    if (first) {
        j["time"] = s.times[*first];
        j["max_after_crossing"] = revival;
    }
    if (!s.times.empty()) {
        const auto v = sbs::sbs_verdict(s.gamma.back(), s.b.back(), epsilon);
        j["final"] = {{"formed", v.formed}, {"gamma", v.gamma_value}, {"b", v.b_value}};
    }
    return j;
}

void emit(const config::RunConfig& c, json sidecar, const std::function<void(std::ostream&)>& write_csv,
          json data, std::ostream& log) {
    sidecar["config"] = config::to_json(c);
    sidecar["seed"] = c.bath.seed;
    sidecar["generated_at"] = timestamp();
    if (c.output.format == config::OutputFormat::csv) {
        std::ostringstream csv;
        write_csv(csv);
        output::write_text_file(c.output.path, csv.str());
        const auto meta = output::sidecar_path(c.output.path);
        output::write_text_file(meta, sidecar.dump(2) + "\n");
        log << "wrote " << c.output.path << " and " << meta << "\n";
    } else {
        sidecar["data"] = std::move(data);
        output::write_text_file(c.output.path, sidecar.dump(2) + "\n");
        log << "wrote " << c.output.path << "\n";
    }
}

IndexSet observed_set(const Partition& p) { return p.macrofractions().empty() ? IndexSet{} : p.macrofractions().front(); }

IndexSet union_set(const Partition& p) {
    IndexSet u = p.unobserved();
    for (const auto& m : p.macrofractions()) u.insert(u.end(), m.begin(), m.end());
    return u;
}

double min_omega(const BathSpec& bath, const IndexSet& idx) {
    double w = std::numeric_limits<double>::infinity();
    for (std::size_t k : idx) w = std::min(w, bath.omega(k));
    return std::isfinite(w) ? w : bath.omega(0);
}

json offresonance_json(const BathSpec& bath, const SystemSpec& system) {
    const bool ok = system.omega_big == 0.0 || validate_offresonance(bath.omegas(), system.omega_big, 5.0);
    return {{"margin", 5.0}, {"satisfied", ok}};
}

int run_qml(const config::RunConfig& c, std::ostream& log) {
    const Partition partition = config::build_partition(c);
    const BathSpec bath = build_bath(c.bath, c.system, partition);
    qml::QmlParams params;
    params.dx = c.system.separation();
    params.couplings.assign(bath.couplings().begin(), bath.couplings().end());
    if (c.run.physical_units) {
        params.hbar = c.units.hbar;
        params.beta_eff = c.env.beta.value_or(c.units.hbar * 1.0 / (c.units.k_boltzmann * c.env.temperature));
    } else {
        if (!c.env.beta) throw config::ConfigError("field 'env.beta' is required for qml unless run.physical_units is set");
        params.beta_eff = *c.env.beta;
    }
    qml::validate(params);

    const IndexSet& unobserved = partition.unobserved();
    const IndexSet observed = observed_set(partition);
    json analytic = {{"beta_eff", params.beta_eff}, {"hbar", params.hbar}};
    double default_t_max = 1.0;
    if (!unobserved.empty()) {
        const double c2 = qml::mean_square(params.couplings, unobserved);
        const auto ts = qml::timescales(params.dx, params.beta_eff, c2, params.hbar);
        analytic["unobserved"] = {{"size", unobserved.size()}, {"c2_mean", c2}};
        if (ts) {
            analytic["unobserved"]["tau_d"] = ts->tau_d;
            analytic["unobserved"]["tau_b"] = ts->tau_b;
            analytic["t_half_gamma"] = ts->tau_d * std::sqrt(std::log(2.0) / static_cast<double>(unobserved.size()));
            default_t_max = 2.0 * ts->tau_b;
        } else {
            analytic["never_decays"] = true;
        }
    }
    if (!observed.empty()) {
        const double c2 = qml::mean_square(params.couplings, observed);
        const auto ts = qml::timescales(params.dx, params.beta_eff, c2, params.hbar);
        analytic["observed"] = {{"size", observed.size()}, {"c2_mean", c2}};
        if (ts) {
            analytic["observed"]["tau_d"] = ts->tau_d;
            analytic["observed"]["tau_b"] = ts->tau_b;
            default_t_max = 2.0 * ts->tau_b;
        }
    }
    const auto times = time_grid(c, default_t_max);
    const auto series = full::make_series(
        times, [&](double t) { return qml::gamma_qml(t, params, unobserved); },
        [&](double t) { return qml::b_qml(t, params, observed); }, "qml");
    json sidecar = {{"regime", "qml"}, {"analytic", analytic}, {"formation", crossing_json(series, c.run.epsilon)}};
    emit(c, sidecar, [&](std::ostream& os) { output::write_series_csv(os, series); }, output::series_to_json(series), log);
    return exit_ok;
}

json avg_json(const pqml::AvgResult& r) {
    json args = json::array();
    for (const auto& t : r.terms) args.push_back(t.i0_argument);
    return {{"log_avg", r.log_avg}, {"avg", r.value()}, {"i0_arguments", args}, {"duplicate_frequencies", r.duplicate_frequencies}};
}

int run_pqml(const config::RunConfig& c, std::ostream& log) {
    const Partition partition = config::build_partition(c);
    const BathSpec bath = build_bath(c.bath, c.system, partition);
    const EnvInitState env{c.env.temperature, c.env.squeezing_r};
    const IndexSet& unobserved = partition.unobserved();
    const IndexSet observed = observed_set(partition);

    const auto avg_g = pqml::avg_analytic(bath, c.system, env, unobserved, pqml::Factor::decoherence, c.units);
    const auto avg_b = pqml::avg_analytic(bath, c.system, env, observed, pqml::Factor::distinguishability, c.units);
    json ratios = json::array();
    for (double w : bath.omegas()) ratios.push_back(pqml::check_large_separation(c.system, w, c.bath.gamma0, c.units));
    json analytic = {{"avg_gamma", avg_json(avg_g)}, {"avg_b", avg_json(avg_b)}, {"large_separation_ratio", ratios}};
    if (avg_g.duplicate_frequencies || avg_b.duplicate_frequencies)
        log << "warning: repeated bath frequencies; the ergodic average assumes distinct frequencies\n";

    const auto all = union_set(partition);
    const double period = 2.0 * std::numbers::pi / min_omega(bath, all);
    const auto times = time_grid(c, 10.0 * period);
    const auto series = full::make_series(
        times, [&](double t) { return pqml::gamma_pqml(t, bath, c.system, env, unobserved, c.units); },
        [&](double t) { return pqml::b_pqml(t, bath, c.system, env, observed, c.units); }, "pqml");
    json sidecar = {{"regime", "pqml"}, {"analytic", analytic}, {"formation", crossing_json(series, c.run.epsilon)}};
    emit(c, sidecar, [&](std::ostream& os) { output::write_series_csv(os, series); }, output::series_to_json(series), log);
    return exit_ok;
}

int run_full(const config::RunConfig& c, std::ostream& log) {
    const Partition partition = config::build_partition(c);
    const BathSpec bath = build_bath(c.bath, c.system, partition);
    const EnvInitState env{c.env.temperature, c.env.squeezing_r};
    const IndexSet& unobserved = partition.unobserved();
    const IndexSet observed = observed_set(partition);
    const auto all = union_set(partition);

    const double period = 2.0 * std::numbers::pi / min_omega(bath, all);
    const auto times = time_grid(c, 10.0 * period);
    const auto series = full::make_series(
        times, [&](double t) { return full::gamma_full(t, bath, c.system, env, unobserved, c.units); },
        [&](double t) { return full::b_full(t, bath, c.system, env, observed, c.units); }, "full");

    json averages;
    if (!all.empty()) {
        const double tau = c.run.tau.value_or(full::default_tau(bath, all));
        const std::size_t n = c.run.n_samples.value_or(full::default_samples(bath, all, tau));
        auto avg = [&](full::Factor f, const IndexSet& idx) {
            const auto a = full::time_average_numeric(f, bath, c.system, env, idx, tau, n, c.units, c.run.threads);
            return json{{"avg", a.value}, {"log_avg", a.log_value}, {"half_window", a.half_window_value}, {"convergence", a.convergence}};
        };
        averages = {{"tau", tau}, {"n_samples", n}, {"gamma", avg(full::Factor::gamma, unobserved)}, {"b", avg(full::Factor::b, observed)}};
    }
    json sidecar = {{"regime", "full"},
                    {"time_averages", averages},
                    {"offresonance", offresonance_json(bath, c.system)},
                    {"formation", crossing_json(series, c.run.epsilon)}};
    emit(c, sidecar, [&](std::ostream& os) { output::write_series_csv(os, series); }, output::series_to_json(series), log);
    return exit_ok;
}

int run_scan(const config::RunConfig& c, std::ostream& log) {
    const Partition partition = config::build_partition(c);
    if (partition.unobserved().empty() || partition.macrofractions().empty())
        throw config::ConfigError("field 'partition': scan needs unobserved > 0 and at least one macrofraction");
    const BathSpec bath = build_bath(c.bath, c.system, partition);
    const auto all = union_set(partition);
    const double tau = c.run.tau.value_or(full::default_tau(bath, all));
    const std::size_t n = c.run.n_samples.value_or(full::default_samples(bath, all, tau));
    const sbs::BathFingerprint fp{c.bath.seed, c.bath.omega_bar, c.bath.delta, c.bath.n};
    const auto grid = sbs::scan_tr(bath, c.system, partition, c.scan.temperature, c.scan.squeezing, tau, n, c.units,
                                   c.run.threads, fp);
    json sidecar = {{"regime", "scan"}, {"grid", output::grid_to_json(grid)}, {"offresonance", offresonance_json(bath, c.system)}};
    emit(c, sidecar, [&](std::ostream& os) { output::write_grid_csv(os, grid); }, json{}, log);
    return exit_ok;
}

int run_selftest_cmd(const config::RunConfig& c, std::ostream& log) {
    bool ok = true;
    for (const auto& r : run_selftest(c.run.threads)) {
        log << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
        ok = ok && r.passed;
    }
    log << (ok ? "selftest passed\n" : "selftest FAILED\n");
    return ok ? exit_ok : exit_selftest;
}

} // namespace

int run_subcommand(const std::string& name, config::RunConfig c, std::ostream& log) {
    try {
        if (name == "selftest") return run_selftest_cmd(c, log);
        if (name == "qml") c.regime = sbs::Regime::qml;
        else if (name == "pqml") c.regime = sbs::Regime::pqml;
        else if (name == "full" || name == "scan") c.regime = sbs::Regime::full;
        else throw config::ConfigError("unknown subcommand '" + name + "'");
        config::validate(c);
        if (name == "qml") return run_qml(c, log);
        if (name == "pqml") return run_pqml(c, log);
        if (name == "full") return run_full(c, log);
        return run_scan(c, log);
    } catch (const NumericalGuardError& e) {
        log << "numerical guard: " << e.what() << "\n";
        return exit_numerical_guard;
    } catch (const InputError& e) {
        log << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Decoherence and distinguishability factors for a central oscillator in a random oscillator bath"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides o;
    std::uint64_t seed = 0;
    std::string out;
    double epsilon = 0, temperature = 0, squeezing = 0, beta = 0, tau = 0, t_max = 0;
    unsigned threads = 0;
    std::size_t n_samples = 0, t_steps = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "bath RNG seed");
        sub->add_option("--out", out, "output path (CSV, sidecar JSON alongside)");
        sub->add_option("--epsilon", epsilon, "formation threshold");
        sub->add_option("--threads", threads, "worker threads (0 = all cores)");
        sub->add_option("--temperature", temperature, "environment temperature [K]");
        sub->add_option("--squeezing", squeezing, "squeezing parameter r");
        sub->add_option("--beta", beta, "dimensionless inverse temperature (qml)");
        sub->add_option("--tau", tau, "averaging time [s]");
        sub->add_option("--n-samples", n_samples, "time-average samples");
        sub->add_option("--t-max", t_max, "end of the time grid");
        sub->add_option("--t-steps", t_steps, "number of time steps");
    };
    for (const char* name : {"qml", "pqml", "full", "scan", "selftest"}) add_common(app.add_subcommand(name));
    app.get_subcommand("qml")->description("quantum measurement limit: Gaussian decay and timescales");
    app.get_subcommand("pqml")->description("partial measurement limit: series and analytic time averages");
    app.get_subcommand("full")->description("full model time series and numeric time averages");
    app.get_subcommand("scan")->description("time-averaged factors over a temperature x squeezing grid");
    app.get_subcommand("selftest")->description("run cross-module identity checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    const CLI::App* sub = app.get_subcommands().front();
    auto given = [&](const char* flag) { return sub->count(flag) > 0; };
    if (given("--seed")) o.seed = seed;
    if (given("--out")) o.out = out;
    if (given("--epsilon")) o.epsilon = epsilon;
    if (given("--threads")) o.threads = threads;
    if (given("--temperature")) o.temperature = temperature;
    if (given("--squeezing")) o.squeezing = squeezing;
    if (given("--beta")) o.beta = beta;
    if (given("--tau")) o.tau = tau;
    if (given("--n-samples")) o.n_samples = n_samples;
    if (given("--t-max")) o.t_max = t_max;
    if (given("--t-steps")) o.t_steps = t_steps;

    config::RunConfig c;
    try {
        if (!config_path.empty()) c = config::load_file(config_path);
    } catch (const InputError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    apply(c, o);
    return run_subcommand(sub->get_name(), c, std::cerr);
}

} // namespace qbm::cli
