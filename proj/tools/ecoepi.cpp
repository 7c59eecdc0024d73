// Command-line front end: analyze, simulate, sweep, r0.
//
// Exit codes: 0 success, 2 config/usage error, 3 numerical failure, 4 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ecoepi/config.hpp"
#include "ecoepi/error.hpp"
#include "ecoepi/report.hpp"
#include "ecoepi/stability.hpp"
#include "ecoepi/sweep.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kNumericalError = 3, kIoError = 4 };

int exit_code_for(ecoepi::ErrorKind kind) {
    using ecoepi::ErrorKind;
    switch (kind) {
        case ErrorKind::Config:
        case ErrorKind::InvalidParams:
        case ErrorKind::InvalidInput: return kConfigError;
        case ErrorKind::Io: return kIoError;
        default: return kNumericalError;
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ecoepi::Error(ecoepi::ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << content;
    out.close();
    if (!out) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw ecoepi::Error(ecoepi::ErrorKind::Io, "failed writing '" + path + "'");
    }
}

ecoepi::ScenarioConfig load(const std::string& path, bool allow_q) {
    auto cfg = ecoepi::load_config(path);
    ecoepi::validate(cfg.params, {.allow_conversion_ge_one = allow_q});
    for (const auto& w : ecoepi::lint(cfg.params)) std::cerr << "warning: " << w << '\n';
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eco-epidemiological predator-prey model toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, param, timestamp;
    double from = 0.0, to = 0.0;
    int steps = 0;
    bool allow_q = false;
    bool serial = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "scenario file (key = value)")->required();
        sub->add_flag("--allow-q-ge-one", allow_q, "accept conversion efficiencies >= 1");
    };

    auto* analyze = app.add_subcommand("analyze", "equilibria, stability and R0 as JSON");
    add_common(analyze);
    analyze->add_option("--out", out_path, "output JSON file")->required();
    analyze->add_option("--timestamp", timestamp, "timestamp string recorded in the report");

    auto* simulate = app.add_subcommand("simulate", "integrate and write a CSV time series");
    add_common(simulate);
    simulate->add_option("--out", out_path, "output CSV file")->required();

    auto* sweep = app.add_subcommand("sweep", "parameter sweep as CSV");
    add_common(sweep);
    sweep->add_option("--param", param, "parameter key")->required();
    sweep->add_option("--from", from, "first value")->required();
    sweep->add_option("--to", to, "last value")->required();
    sweep->add_option("--steps", steps, "number of grid points (>= 2)")->required();
    sweep->add_option("--out", out_path, "output CSV file")->required();
    sweep->add_flag("--serial", serial, "evaluate grid points on one thread");

    auto* r0cmd = app.add_subcommand("r0", "print the basic reproduction number");
    add_common(r0cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        const auto cfg = load(config_path, allow_q);
        if (*analyze) {
            ecoepi::AnalysisOptions opts;
            if (!timestamp.empty()) opts.timestamp = timestamp;
            write_file(out_path, ecoepi::analysis_report(cfg, opts).dump(2) + "\n");
        } else if (*simulate) {
            write_file(out_path, ecoepi::simulate_csv(cfg));
        } else if (*sweep) {
            const auto grid = ecoepi::sweep_grid(from, to, steps);
            const auto points =
                serial ? ecoepi::sweep_serial(cfg, param, grid) : ecoepi::sweep_parallel(cfg, param, grid);
            write_file(out_path, ecoepi::sweep_csv(points, param, cfg.disease_free));
        } else if (*r0cmd) {
            const auto r = ecoepi::r0(cfg.params);
            nlohmann::ordered_json o{{"r0", r.value}, {"S1", r.S1}, {"V1", r.V1}, {"endemic", r.endemic}};
            std::cout << o.dump() << '\n';
        }
    } catch (const ecoepi::Error& e) {
        std::cerr << "error (" << ecoepi::to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericalError;
    }
    return kOk;
}
