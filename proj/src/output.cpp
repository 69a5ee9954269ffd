#include "qbm/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qbm/errors.hpp"

namespace qbm::output {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

void write_series_csv(std::ostream& out, const full::FactorSeries& series) {
    out << "t,gamma,b\n";
    for (std::size_t i = 0; i < series.times.size(); ++i)
        out << format_double(series.times[i]) << ',' << format_double(series.gamma[i]) << ','
            << format_double(series.b[i]) << '\n';
}

void write_grid_csv(std::ostream& out, const sbs::ScanGrid& grid) {
    out << "T,r,avg_gamma,avg_b\n";
    for (std::size_t i = 0; i < grid.t_values.size(); ++i)
        for (std::size_t j = 0; j < grid.r_values.size(); ++j)
            out << format_double(grid.t_values[i]) << ',' << format_double(grid.r_values[j]) << ','
                << format_double(grid.gamma_at(i, j)) << ',' << format_double(grid.b_at(i, j)) << '\n';
}

nlohmann::json grid_to_json(const sbs::ScanGrid& grid) {
    return {{"temperatures", grid.t_values},
            {"squeezings", grid.r_values},
            {"avg_gamma", grid.avg_gamma},
            {"avg_b", grid.avg_b},
            {"log_avg_gamma", grid.log_avg_gamma},
            {"log_avg_b", grid.log_avg_b},
            {"convergence_gamma", grid.convergence_gamma},
            {"convergence_b", grid.convergence_b},
            {"bath", {{"seed", grid.bath.seed}, {"omega_bar", grid.bath.omega_bar}, {"delta", grid.bath.delta}, {"n", grid.bath.n}}},
            {"partition", {{"unobserved_size", grid.unobserved_size}, {"observed_size", grid.observed_size}}},
            {"tau", grid.tau},
            {"n_samples", grid.n_samples}};
}

nlohmann::json series_to_json(const full::FactorSeries& series) {
    return {{"label", series.label}, {"t", series.times}, {"gamma", series.gamma}, {"b", series.b}};
}

std::string sidecar_path(const std::string& csv_path) {
    std::filesystem::path p(csv_path);
    if (p.extension() == ".json") return p.string() + ".meta.json";
    p.replace_extension(".json");
    return p.string();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write output file '" + path + "'");
    out << contents;
    if (!out) throw InputError("failed writing output file '" + path + "'");
}

} // namespace qbm::output
