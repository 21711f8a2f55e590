#include "qednp_cli/run.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>

#include "qednp/csv.hpp"
#include "qednp_cli/plot.hpp"

namespace fs = std::filesystem;

namespace qednp::cli {

namespace {

std::size_t count_rows(const std::string& csv_text) {
    std::size_t rows = 0;
    bool header = false;
    std::istringstream in(csv_text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        ++rows;
    }
    return rows;
}

std::string table_text(const Table& t, const std::vector<std::string>& notes) {
    if (!t.raw.empty()) return t.raw;
    CsvTable c = t.csv;
    c.comments.insert(c.comments.begin(), notes.begin(), notes.end());
    return to_csv_text(c);
}

std::string padded(std::size_t i, std::size_t n) {
    const std::size_t width = std::to_string(n - 1).size();
    std::string s = std::to_string(i);
    return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

class Writer {
public:
    Writer(fs::path dir, bool plot, bool log_scale, RunReport& report)
        : dir_(std::move(dir)), plot_(plot), log_scale_(log_scale), report_(report) {}

    void write(const std::string& name, const std::string& text, bool plottable) {
        const fs::path path = dir_ / (name + ".csv");
        write_text_atomic(path.string(), text);
        report_.files.push_back({path.string(), count_rows(text)});
        if (plot_ && plottable) {
            const fs::path svg = dir_ / (name + ".svg");
            try {
                plot_csv(path.string(), svg.string(), PlotSpec{{}, {}, log_scale_, name});
                report_.files.push_back({svg.string(), 0});
            } catch (const PlotError& e) {
                report_.warnings.push_back(std::string("plot skipped: ") + e.what());
            }
        }
    }

private:
    fs::path dir_;
    bool plot_;
    bool log_scale_;
    RunReport& report_;
};

}  // namespace

std::string RunReport::to_text() const {
    std::ostringstream out;
    out << "scenario " << id << ": " << points << (points == 1 ? " point" : " points") << ", "
        << format_number(std::round(wall_seconds * 1e3) / 1e3) << " s\n";
    for (const auto& f : files) {
        out << "  " << f.path;
        if (f.path.size() > 4 && f.path.compare(f.path.size() - 4, 4, ".csv") == 0) out << "  " << f.rows << " rows";
        out << "\n";
    }
    for (const auto& w : warnings) out << "warning: " << w << "\n";
    for (const auto& f : failed)
        out << "failed point " << f.index << " (" << format_number(f.value) << "): " << f.message << "\n";
    return out.str();
}

unsigned resolve_jobs(unsigned requested) {
    if (const char* env = std::getenv("QEDNP_JOBS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

RunReport run(const ScenarioConfig& cfg, const RunOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report;
    report.id = cfg.id;
    const fs::path dir = opt.out_dir ? fs::path(*opt.out_dir) : fs::path(cfg.output.dir);
    fs::create_directories(dir);
    Writer writer(dir, opt.plot.value_or(cfg.output.plot), cfg.output.log_scale, report);

    const auto plan = sweep_plan(cfg);
    if (plan.empty()) {
        PointResult r;
        try {
            r = evaluate(cfg.kind, cfg.params);
        } catch (const std::exception& e) {
            throw ScenarioError("scenario " + cfg.id + " (" + kind_name(cfg.kind) + "): " + e.what());
        }
        for (const auto& t : r.tables) writer.write(cfg.id + "_" + t.name, table_text(t, r.notes), t.plottable);
        if (!r.summary.empty()) {
            CsvTable s;
            s.comments = r.notes;
            for (const auto& [k, v] : r.summary) {
                s.header.push_back(k);
                s.columns.push_back({v});
            }
            writer.write(cfg.id + "_summary", to_csv_text(s), false);
        }
        report.warnings.insert(report.warnings.end(), r.warnings.begin(), r.warnings.end());
        report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return report;
    }

    const std::size_t n = plan.size();
    report.points = n;
    std::vector<std::optional<PointResult>> results(n);
    std::vector<std::string> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            ParamSet p = cfg.params;
            p.set_number(cfg.sweep->param, plan[i]);
            try {
                results[i] = evaluate(cfg.kind, p);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const unsigned jobs = std::min<std::size_t>(resolve_jobs(opt.jobs), n);
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    // Everything below runs in plan order, so output does not depend on
    // scheduling.
    const std::string& param = cfg.sweep->param;
    const std::string unit = internal_unit(cfg.params.values().at(param).dim);
    CsvTable sweep;
    sweep.comments.push_back("sweep over " + param + (unit.empty() ? "" : " (" + unit + ")"));
    sweep.header = {param};
    sweep.columns.assign(1, {});
    bool summary_header = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!results[i]) {
            report.failed.push_back({i, plan[i], errors[i]});
            continue;
        }
        const auto& r = *results[i];
        auto notes = r.notes;
        notes.insert(notes.begin(), param + " = " + format_number(plan[i]) + (unit.empty() ? "" : " " + unit));
        for (const auto& t : r.tables)
            writer.write(cfg.id + "_" + t.name + "_" + padded(i, n), table_text(t, notes), t.plottable);
        if (!summary_header) {
            for (const auto& [k, v] : r.summary) sweep.header.push_back(k);
            sweep.columns.resize(sweep.header.size());
            summary_header = true;
        }
        sweep.columns[0].push_back(plan[i]);
        for (std::size_t k = 0; k + 1 < sweep.columns.size(); ++k)
            sweep.columns[k + 1].push_back(r.summary.at(k).second);
        for (const auto& w : r.warnings) report.warnings.push_back("point " + std::to_string(i) + ": " + w);
    }
    if (summary_header) writer.write(cfg.id + "_sweep", to_csv_text(sweep), sweep.header.size() > 1);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace qednp::cli
