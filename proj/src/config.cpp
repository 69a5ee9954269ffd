#include "qbm/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace qbm::config {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& section) {
    if (!j.is_object()) throw ConfigError(section + ": expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items())
        if (!ok.count(key)) throw ConfigError("unknown key '" + (section.empty() ? key : section + "." + key) + "'");
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& section) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + section + "." + key + "' has the wrong type");
    }
}

template <class T>
void read_opt(const json& j, const char* key, std::optional<T>& out, const std::string& section) {
    if (!j.contains(key) || j.at(key).is_null()) return;
    T value{};
    read(j, key, value, section);
    out = value;
}

json axis_to_json(const sbs::AxisRange& a) {
    return {{"min", a.min}, {"max", a.max}, {"points", a.points}, {"log", a.log}, {"include_zero", a.include_zero}};
}

sbs::AxisRange axis_from_json(const json& j, const std::string& section, sbs::AxisRange a) {
    check_keys(j, {"min", "max", "points", "log", "include_zero"}, section);
    read(j, "min", a.min, section);
    read(j, "max", a.max, section);
    read(j, "points", a.points, section);
    read(j, "log", a.log, section);
    read(j, "include_zero", a.include_zero, section);
    return a;
}

} // namespace

json to_json(const RunConfig& c) {
    json bath = {{"n", c.bath.n},
                 {"omega_bar", c.bath.omega_bar},
                 {"delta", c.bath.delta},
                 {"seed", c.bath.seed},
                 {"mass", c.bath.mass},
                 {"coupling_prefactor", static_cast<int>(c.bath.coupling_prefactor)},
                 {"gamma0", c.bath.gamma0},
                 {"shared_spectrum", c.bath.shared_spectrum}};
    if (c.bath.couplings) bath["couplings"] = *c.bath.couplings;

    json env = {{"temperature", c.env.temperature}, {"squeezing_r", c.env.squeezing_r}};
    if (c.env.beta) env["beta"] = *c.env.beta;

    json run = {{"t_min", c.run.t_min},
                {"t_steps", c.run.t_steps},
                {"epsilon", c.run.epsilon},
                {"threads", c.run.threads},
                {"physical_units", c.run.physical_units}};
    if (c.run.t_max) run["t_max"] = *c.run.t_max;
    if (c.run.times) run["times"] = *c.run.times;
    if (c.run.tau) run["tau"] = *c.run.tau;
    if (c.run.n_samples) run["n_samples"] = *c.run.n_samples;

    return {{"regime", sbs::to_string(c.regime)},
            {"bath", bath},
            {"system", {{"mass", c.system.mass}, {"omega", c.system.omega_big}, {"x1", c.system.x1}, {"x2", c.system.x2}}},
            {"env", env},
            {"partition", {{"unobserved", c.partition.unobserved}, {"macrofractions", c.partition.macrofractions}}},
            {"run", run},
            {"scan", {{"temperature", axis_to_json(c.scan.temperature)}, {"squeezing", axis_to_json(c.scan.squeezing)}}},
            {"units", {{"hbar", c.units.hbar}, {"k_boltzmann", c.units.k_boltzmann}}},
            {"output", {{"path", c.output.path}, {"format", c.output.format == OutputFormat::csv ? "csv" : "json"}}}};
}

RunConfig from_json(const json& doc) {
    RunConfig c;
    check_keys(doc, {"regime", "bath", "system", "env", "partition", "run", "scan", "units", "output"}, "");
    if (doc.contains("regime")) {
        std::string name;
        read(doc, "regime", name, "");
        try {
            c.regime = sbs::regime_from_string(name);
        } catch (const InputError& e) {
            throw ConfigError(std::string("field 'regime': ") + e.what());
        }
    }
    if (doc.contains("bath")) {
        const auto& j = doc.at("bath");
        check_keys(j, {"n", "omega_bar", "delta", "seed", "mass", "coupling_prefactor", "gamma0", "shared_spectrum", "couplings"},
                   "bath");
        read(j, "n", c.bath.n, "bath");
        read(j, "omega_bar", c.bath.omega_bar, "bath");
        read(j, "delta", c.bath.delta, "bath");
        read(j, "seed", c.bath.seed, "bath");
        read(j, "mass", c.bath.mass, "bath");
        int pre = static_cast<int>(c.bath.coupling_prefactor);
        read(j, "coupling_prefactor", pre, "bath");
        if (pre != 1 && pre != 2) throw ConfigError("field 'bath.coupling_prefactor' must be 1 or 2");
        c.bath.coupling_prefactor = static_cast<CouplingPrefactor>(pre);
        read(j, "gamma0", c.bath.gamma0, "bath");
        read(j, "shared_spectrum", c.bath.shared_spectrum, "bath");
        read_opt(j, "couplings", c.bath.couplings, "bath");
    }
    if (doc.contains("system")) {
        const auto& j = doc.at("system");
        check_keys(j, {"mass", "omega", "x1", "x2"}, "system");
        read(j, "mass", c.system.mass, "system");
        read(j, "omega", c.system.omega_big, "system");
        read(j, "x1", c.system.x1, "system");
        read(j, "x2", c.system.x2, "system");
    }
    if (doc.contains("env")) {
        const auto& j = doc.at("env");
        check_keys(j, {"temperature", "squeezing_r", "beta"}, "env");
        read(j, "temperature", c.env.temperature, "env");
        read(j, "squeezing_r", c.env.squeezing_r, "env");
        read_opt(j, "beta", c.env.beta, "env");
    }
    if (doc.contains("partition")) {
        const auto& j = doc.at("partition");
        check_keys(j, {"unobserved", "macrofractions"}, "partition");
        read(j, "unobserved", c.partition.unobserved, "partition");
        read(j, "macrofractions", c.partition.macrofractions, "partition");
    }
    if (doc.contains("run")) {
        const auto& j = doc.at("run");
        check_keys(j, {"t_min", "t_max", "t_steps", "times", "tau", "n_samples", "epsilon", "threads", "physical_units"},
                   "run");
        read(j, "t_min", c.run.t_min, "run");
        read_opt(j, "t_max", c.run.t_max, "run");
        read(j, "t_steps", c.run.t_steps, "run");
        read_opt(j, "times", c.run.times, "run");
        read_opt(j, "tau", c.run.tau, "run");
        read_opt(j, "n_samples", c.run.n_samples, "run");
        read(j, "epsilon", c.run.epsilon, "run");
        read(j, "threads", c.run.threads, "run");
        read(j, "physical_units", c.run.physical_units, "run");
    }
    if (doc.contains("scan")) {
        const auto& j = doc.at("scan");
        check_keys(j, {"temperature", "squeezing"}, "scan");
        if (j.contains("temperature"))
            c.scan.temperature = axis_from_json(j.at("temperature"), "scan.temperature", c.scan.temperature);
        if (j.contains("squeezing"))
            c.scan.squeezing = axis_from_json(j.at("squeezing"), "scan.squeezing", c.scan.squeezing);
    }
    if (doc.contains("units")) {
        const auto& j = doc.at("units");
        check_keys(j, {"hbar", "k_boltzmann"}, "units");
        read(j, "hbar", c.units.hbar, "units");
        read(j, "k_boltzmann", c.units.k_boltzmann, "units");
    }
    if (doc.contains("output")) {
        const auto& j = doc.at("output");
        check_keys(j, {"path", "format"}, "output");
        read(j, "path", c.output.path, "output");
        std::string fmt = "csv";
        read(j, "format", fmt, "output");
        if (fmt == "csv")
            c.output.format = OutputFormat::csv;
        else if (fmt == "json")
            c.output.format = OutputFormat::json;
        else
            throw ConfigError("field 'output.format' must be 'csv' or 'json'");
    }
    return c;
}

RunConfig parse(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(doc);
}

std::string serialize(const RunConfig& config) { return to_json(config).dump(2) + "\n"; }

RunConfig load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

namespace {

void field(bool ok, const std::string& name, const std::string& what) {
    if (!ok) throw ConfigError("field '" + name + "' " + what);
}

} // namespace

void validate(const RunConfig& c) {
    field(c.bath.n >= 1, "bath.n", "must be >= 1");
    field(c.bath.omega_bar > 0.0, "bath.omega_bar", "must be positive");
    field(c.bath.delta >= 0.0, "bath.delta", "must be >= 0");
    field(c.bath.omega_bar - 0.5 * c.bath.delta > 0.0, "bath.delta", "puts the lower band edge at or below zero");
    field(c.bath.mass > 0.0, "bath.mass", "must be positive");
    field(c.bath.gamma0 > 0.0, "bath.gamma0", "must be positive");
    if (c.bath.couplings) {
        field(c.bath.couplings->size() == c.bath.n, "bath.couplings", "must have length bath.n");
        for (double v : *c.bath.couplings) field(v >= 0.0, "bath.couplings", "entries must be >= 0");
    }
    field(c.system.mass > 0.0, "system.mass", "must be positive");
    field(c.system.omega_big >= 0.0, "system.omega", "must be >= 0");
    field(c.env.temperature > 0.0, "env.temperature", "must be positive");
    if (c.env.beta) field(*c.env.beta > 0.0, "env.beta", "must be positive");
    std::size_t used = c.partition.unobserved;
    for (std::size_t s : c.partition.macrofractions) {
        field(s >= 1, "partition.macrofractions", "entries must be >= 1");
        used += s;
    }
    field(used <= c.bath.n, "partition", "uses more oscillators than bath.n");
    field(c.run.t_steps >= 1, "run.t_steps", "must be >= 1");
    if (c.run.t_max) field(*c.run.t_max > c.run.t_min, "run.t_max", "must exceed run.t_min");
    field(c.run.t_min >= 0.0, "run.t_min", "must be >= 0");
    if (c.run.times)
        for (double t : *c.run.times) field(t >= 0.0, "run.times", "entries must be >= 0");
    if (c.run.tau) field(*c.run.tau > 0.0, "run.tau", "must be positive");
    if (c.run.n_samples) field(*c.run.n_samples >= 1000, "run.n_samples", "must be >= 1000");
    field(c.run.epsilon > 0.0 && c.run.epsilon < 1.0, "run.epsilon", "must lie in (0, 1)");
    field(c.scan.temperature.points >= 1, "scan.temperature.points", "must be >= 1");
    field(c.scan.squeezing.points >= 1, "scan.squeezing.points", "must be >= 1");
    field(c.scan.temperature.min > 0.0, "scan.temperature.min", "must be positive");
    field(c.scan.temperature.max >= c.scan.temperature.min, "scan.temperature.max", "must be >= min");
    field(!c.scan.temperature.include_zero, "scan.temperature.include_zero", "must be false");
    field(c.scan.squeezing.max >= c.scan.squeezing.min, "scan.squeezing.max", "must be >= min");
    if (c.scan.squeezing.log) field(c.scan.squeezing.min > 0.0, "scan.squeezing.min", "must be positive on a log axis");
    field(c.units.hbar > 0.0, "units.hbar", "must be positive");
    field(c.units.k_boltzmann > 0.0, "units.k_boltzmann", "must be positive");
    field(!c.output.path.empty(), "output.path", "must not be empty");
}

Partition build_partition(const RunConfig& config) {
    return make_partition(config.bath.n, config.partition.unobserved, config.partition.macrofractions);
}

} // namespace qbm::config
