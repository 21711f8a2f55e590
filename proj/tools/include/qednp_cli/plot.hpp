#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qednp/csv.hpp"

namespace qednp::cli {

struct PlotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PlotSpec {
    std::string x_column;                // empty: first column
    std::vector<std::string> y_columns;  // empty: every other column
    bool log_y = false;
    std::string title;
};

// Static SVG line plot. Presentation only; values are drawn as read.
std::string render_svg(const CsvTable& table, const PlotSpec& spec);

// Reads `csv_path`, writes `svg_path` atomically.
void plot_csv(const std::string& csv_path, const std::string& svg_path, const PlotSpec& spec);

}  // namespace qednp::cli
