#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qednp/csv.hpp"
#include "qednp_cli/config.hpp"

namespace qednp::cli {

// A module error with the scenario (and sweep point) it came from.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Table {
    std::string name;
    CsvTable csv;
    std::string raw;  // pre-formatted CSV text for tables with text columns
    bool plottable = true;
};

struct PointResult {
    std::vector<Table> tables;
    std::vector<std::pair<std::string, double>> summary;
    std::vector<std::string> notes;     // written as '#' comments
    std::vector<std::string> warnings;  // surfaced in the run report
};

// One scenario evaluation, no I/O besides reading input files named in the
// parameters. Pure, so sweep points can run on any thread.
PointResult evaluate(ScenarioKind kind, const ParamSet& params);

struct RunOptions {
    std::optional<std::string> out_dir;  // overrides [output] dir
    unsigned jobs = 0;                   // 0: hardware concurrency
    std::optional<bool> plot;            // overrides [output] plot
};

struct OutputFile {
    std::string path;
    std::size_t rows;
};

struct FailedPoint {
    std::size_t index;
    double value;
    std::string message;
};

struct RunReport {
    std::string id;
    double wall_seconds = 0.0;
    std::size_t points = 1;
    std::vector<OutputFile> files;
    std::vector<std::string> warnings;
    std::vector<FailedPoint> failed;

    int exit_code() const { return failed.empty() ? 0 : 4; }
    std::string to_text() const;
};

// QEDNP_JOBS, when set to a positive integer, wins over `requested`.
unsigned resolve_jobs(unsigned requested);

// Throws ScenarioError when a scenario without a sweep fails.
RunReport run(const ScenarioConfig& cfg, const RunOptions& opt = {});

}  // namespace qednp::cli
