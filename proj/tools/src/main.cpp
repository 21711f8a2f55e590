#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "qednp/csv.hpp"
#include "qednp_cli/config.hpp"
#include "qednp_cli/plot.hpp"
#include "qednp_cli/run.hpp"

using namespace qednp::cli;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericError = 3;

int execute(const ScenarioConfig& cfg, const RunOptions& opt) {
    const auto report = run(cfg, opt);
    std::cout << report.to_text();
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qednp: quantum-optics scenarios for emitters in nanophotonic structures"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    unsigned jobs = 0;
    bool plot = false;
    auto* run_cmd = app.add_subcommand("run", "run a scenario config and write CSV output");
    run_cmd->add_option("config", config_path, "scenario config (INI)")->required();
    run_cmd->add_option("--out", out_dir, "output directory (overrides [output] dir)");
    run_cmd->add_option("--jobs", jobs, "worker threads for sweeps; QEDNP_JOBS overrides");
    run_cmd->add_flag("--plot", plot, "also write an SVG next to each curve CSV");

    std::string validate_path;
    bool print_canonical = false;
    auto* val_cmd = app.add_subcommand("validate", "parse and check a config without running it");
    val_cmd->add_option("config", validate_path, "scenario config (INI)")->required();
    val_cmd->add_flag("--print", print_canonical, "print the canonical form");

    std::string curve_path;
    std::string model = "biexp";
    std::string fit_out = ".";
    auto* fit_cmd = app.add_subcommand("fit", "fit a decay curve (columns t_ns, counts)");
    fit_cmd->add_option("curve", curve_path, "decay curve CSV")->required()->check(CLI::ExistingFile);
    fit_cmd->add_option("--model", model, "decay model")->check(CLI::IsMember({"biexp"}));
    fit_cmd->add_option("--out", fit_out, "output directory");

    std::string plot_csv_path;
    std::string plot_svg;
    bool plot_log = false;
    auto* plot_cmd = app.add_subcommand("plot", "render a CSV as an SVG line plot");
    plot_cmd->add_option("csv", plot_csv_path, "input CSV")->required();
    plot_cmd->add_option("--svg", plot_svg, "output path (default: next to the CSV)");
    plot_cmd->add_flag("--log", plot_log, "logarithmic y axis");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            const auto cfg = load_config(config_path);
            RunOptions opt;
            if (!out_dir.empty()) opt.out_dir = out_dir;
            opt.jobs = jobs;
            if (plot) opt.plot = true;
            return execute(cfg, opt);
        }
        if (*val_cmd) {
            const auto cfg = load_config(validate_path);
            if (print_canonical) std::cout << to_text(cfg);
            const auto plan = sweep_plan(cfg);
            std::cout << validate_path << ": ok (" << kind_name(cfg.kind) << ", "
                      << (plan.empty() ? std::size_t{1} : plan.size()) << " point(s))\n";
            return kOk;
        }
        if (*fit_cmd) {
            const std::string stem = std::filesystem::path(curve_path).stem().string();
            const auto cfg = parse_config("[scenario]\nkind = fit-biexp\nid = " + stem + "_" + model +
                                          "\n[params]\ninput = " + curve_path + "\n");
            RunOptions opt;
            opt.out_dir = fit_out;
            return execute(cfg, opt);
        }
        if (*plot_cmd) {
            std::string svg = plot_svg;
            if (svg.empty()) svg = std::filesystem::path(plot_csv_path).replace_extension(".svg").string();
            plot_csv(plot_csv_path, svg, PlotSpec{{}, {}, plot_log, std::filesystem::path(plot_csv_path).stem().string()});
            std::cout << svg << "\n";
            return kOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericError;
    }
    return kOk;
}
