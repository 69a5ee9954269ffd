#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "qbm/full_model.hpp"
#include "qbm/sbs.hpp"

namespace qbm::output {

// Scientific notation, 17 significant digits (round-trips a double).
std::string format_double(double x);

// Header "t,gamma,b", LF line endings.
void write_series_csv(std::ostream& out, const full::FactorSeries& series);

// Long format, header "T,r,avg_gamma,avg_b", temperature-major order.
void write_grid_csv(std::ostream& out, const sbs::ScanGrid& grid);

nlohmann::json grid_to_json(const sbs::ScanGrid& grid);
nlohmann::json series_to_json(const full::FactorSeries& series);

// Sidecar path next to a CSV output: same stem, ".json" extension.
std::string sidecar_path(const std::string& csv_path);

void write_text_file(const std::string& path, const std::string& contents);

} // namespace qbm::output
