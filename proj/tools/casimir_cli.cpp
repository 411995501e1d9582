// Command-line front end: gradient sweeps, thermal corrections, classical
// regime thresholds, electrostatic calibration, and experiment-theory
// comparison, all driven by one plain-text config file.

#include "casimir/commands.hpp"
#include "casimir/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

struct CliArgs {
    std::string config_path;
    std::vector<std::string> sets;
    int threads = -1;
    std::string output_dir;
    bool freestanding = false;
    bool ideal_metal = false;
    std::string shifts_csv;
    std::string measurements_csv;
};

int dispatch(const std::string& cmd, const CliArgs& args) {
    casimir::config::RunConfig cfg = casimir::config::load(args.config_path, args.sets);
    if (args.threads >= 0) cfg.threads = args.threads;
    if (!args.output_dir.empty()) cfg.output_dir = args.output_dir;
    cfg.freestanding = args.freestanding;
    cfg.ideal_metal = args.ideal_metal;

    if (cmd == "gradient") {
        const auto rows = casimir::commands::cmd_gradient(cfg);
        std::printf("gradient: wrote %s/gradient.csv (%zu rows)\n",
                    cfg.output_dir.c_str(), rows.size());
    } else if (cmd == "thermal") {
        const auto rows = casimir::commands::cmd_thermal(cfg);
        std::printf("thermal: wrote %s/thermal.csv (%zu rows)\n",
                    cfg.output_dir.c_str(), rows.size());
    } else if (cmd == "regime") {
        const auto rows = casimir::commands::cmd_regime(cfg);
        std::printf("regime: wrote %s/regime.csv (%zu rows)\n",
                    cfg.output_dir.c_str(), rows.size());
    } else if (cmd == "calibrate") {
        const auto out = casimir::commands::cmd_calibrate(cfg, args.shifts_csv);
        std::printf("calibrate: V0 = %s V, z0 = %s nm, C = %s s/kg\n",
                    casimir::io::format_number(out.fit.v0_v).c_str(),
                    casimir::io::format_number(out.fit.z0_nm).c_str(),
                    casimir::io::format_number(out.fit.c_s_per_kg).c_str());
        std::printf("calibrate: wrote %s/calibration.json and %s/extracted.csv (%zu separations)\n",
                    cfg.output_dir.c_str(), cfg.output_dir.c_str(), out.samples.size());
    } else if (cmd == "compare") {
        const auto out = casimir::commands::cmd_compare(cfg, args.measurements_csv);
        std::printf("compare: %zu points, %zu excluded interval(s)\n",
                    out.report.differences.size(), out.report.excluded_intervals.size());
        for (const auto& iv : out.report.excluded_intervals)
            std::printf("compare: excluded [%s, %s] nm\n",
                        casimir::io::format_number(iv.a_lo_nm).c_str(),
                        casimir::io::format_number(iv.a_hi_nm).c_str());
        std::printf("compare: wrote %s/compare.csv and %s/compare.json\n",
                    cfg.output_dir.c_str(), cfg.output_dir.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermal Casimir force gradients for graphene-coated systems"};
    app.require_subcommand(1);

    CliArgs args;
    app.add_option("-c,--config", args.config_path, "Config file (defaults apply if omitted)")
        ->check(CLI::ExistingFile);
    app.add_option("--set", args.sets, "Override a config value, section.key=value");
    app.add_option("--threads", args.threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("-o,--output", args.output_dir, "Output directory");

    auto* gradient = app.add_subcommand("gradient", "Force-gradient sweep with error bands");
    gradient->add_flag("--freestanding", args.freestanding,
                       "Replace the plate substrate with vacuum");
    gradient->add_flag("--ideal-metal", args.ideal_metal,
                       "Ideal-metal sphere and plate (debug reference)");

    auto* thermal = app.add_subcommand("thermal", "Thermal correction vs separation");
    thermal->add_flag("--freestanding", args.freestanding,
                      "Replace the plate substrate with vacuum");

    app.add_subcommand("regime", "Classical-regime onset separations");

    auto* calibrate = app.add_subcommand("calibrate", "Fit V0, z0, C from shift data");
    calibrate->add_option("--shifts", args.shifts_csv, "shifts.csv input")
        ->required()
        ->check(CLI::ExistingFile);

    auto* compare = app.add_subcommand("compare", "Compare measurements against theory");
    compare->add_option("--measurements", args.measurements_csv, "measurements.csv input")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), args);
    } catch (const casimir::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const casimir::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const casimir::NumericsError& e) {
        std::fprintf(stderr, "numerics error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
