#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbm/bath.hpp"
#include "qbm/errors.hpp"
#include "qbm/sbs.hpp"
#include "qbm/units.hpp"

namespace qbm::config {

// Bad configuration; the message names the offending field.
class ConfigError : public InputError {
public:
    using InputError::InputError;
};

struct EnvConfig {
    double temperature{1e-3};
    double squeezing_r{0.0};
    std::optional<double> beta;  // dimensionless beta for the qml regime

    bool operator==(const EnvConfig&) const = default;
};

struct PartitionConfig {
    std::size_t unobserved{10};
    std::vector<std::size_t> macrofractions{10};

    bool operator==(const PartitionConfig&) const = default;
};

struct RunParams {
    double t_min{0.0};
    std::optional<double> t_max;
    std::size_t t_steps{200};
    std::optional<std::vector<double>> times;
    std::optional<double> tau;
    std::optional<std::size_t> n_samples;
    double epsilon{sbs::default_epsilon};
    unsigned threads{0};
    bool physical_units{false};

    bool operator==(const RunParams&) const = default;
};

struct ScanConfig {
    sbs::AxisRange temperature{1e-4, 10.0, 9, true, false};
    sbs::AxisRange squeezing{0.01, 3.0, 9, true, true};

    bool operator==(const ScanConfig&) const = default;
};

enum class OutputFormat { csv, json };

struct OutputConfig {
    std::string path{"qbm_out.csv"};
    OutputFormat format{OutputFormat::csv};

    bool operator==(const OutputConfig&) const = default;
};

// One archived run. Defaults mirror the squeezed-thermal numerics:
// M = 1e-5 kg, Omega = 3e8 1/s, omega_k in [3, 6]e9 1/s, |X - X'| = 1e-9 m,
// gamma0 = 0.33e18 1/s^2, C_k = 2 sqrt(M m_k gamma0 / pi), 10 + 10 split.
struct RunConfig {
    sbs::Regime regime{sbs::Regime::full};
    BathRecipe bath;
    SystemSpec system;
    EnvConfig env;
    PartitionConfig partition;
    RunParams run;
    ScanConfig scan;
    UnitContext units;
    OutputConfig output;

    bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);
// Rejects unknown keys and wrongly typed values.
RunConfig from_json(const nlohmann::json& doc);

RunConfig parse(const std::string& text);
std::string serialize(const RunConfig& config);
RunConfig load_file(const std::string& path);

// Range and consistency checks that do not depend on the subcommand.
void validate(const RunConfig& config);

Partition build_partition(const RunConfig& config);

} // namespace qbm::config
