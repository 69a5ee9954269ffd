#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "qbm/config.hpp"

namespace qbm::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_config = 2,
    exit_numerical_guard = 3,
    exit_selftest = 4,
};

// Command-line values that take precedence over the config document.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<double> epsilon;
    std::optional<unsigned> threads;
    std::optional<double> temperature;
    std::optional<double> squeezing;
    std::optional<double> beta;
    std::optional<double> tau;
    std::optional<std::size_t> n_samples;
    std::optional<double> t_max;
    std::optional<std::size_t> t_steps;
};

void apply(config::RunConfig& config, const Overrides& overrides);

// Runs qml | pqml | full | scan | selftest and writes the output files.
// Errors are reported on `log` and mapped to an ExitCode.
int run_subcommand(const std::string& name, config::RunConfig config, std::ostream& log);

// Full command-line entry point (argument parsing included).
int main_entry(int argc, char** argv);

} // namespace qbm::cli
