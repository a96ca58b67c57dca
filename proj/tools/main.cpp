// graphdim: simulate time-changed Brownian motion and measure the fractal
// geometry of its graphs. Subcommands: preset, list-presets, simulate,
// estimate.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphdim/estimators.hpp"
#include "graphdim/experiment.hpp"
#include "graphdim/ifs.hpp"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void print_report(const graphdim::ExperimentReport& report) {
    for (const auto& c : report.checks) {
        std::printf("  [%s] %-28s %s  (%.2fs)\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                    c.asserted ? "" : "(report-only)", c.wall_seconds);
        if (!c.passed && c.details.contains("error"))
            std::printf("         error: %s\n", c.details.at("error").get<std::string>().c_str());
    }
    std::printf("%s in %.2fs\n", report.all_passed ? "all asserted checks passed" : "FAILURES present",
                report.wall_seconds);
}

void write_report(const graphdim::ExperimentReport& report, const std::string& out_dir,
                  const std::string& name) {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    const auto file = std::filesystem::path(out_dir) / ("report-" + name + ".json");
    std::ofstream out(file);
    out << report.to_json().dump(2) << "\n";
    std::printf("report written to %s\n", file.string().c_str());
}

json config_from_flags(const std::string& v_kind, double beta, const std::string& ifs_name,
                       double hurst, std::size_t grid_size, std::size_t ensemble,
                       std::uint64_t seed) {
    json config;
    config["v"] = {{"kind", v_kind}};
    if (v_kind == "power-law") config["v"]["beta"] = beta;
    if (v_kind == "self-similar-cdf" || v_kind == "iterated-cdf") config["v"]["ifs"] = ifs_name;
    config["hurst"] = hurst;
    config["grid_size"] = grid_size;
    config["ensemble"] = ensemble;
    config["root_seed"] = seed;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-changed Brownian motion: simulation and dimension measurement"};
    app.require_subcommand(1);

    std::string preset_dir;
    app.add_option("--preset-dir", preset_dir, "directory holding preset JSON files");

    // ---- preset ----
    auto* cmd_preset = app.add_subcommand("preset", "run a named experiment preset");
    std::string preset_name;
    std::vector<std::string> overrides;
    std::string preset_out;
    std::uint64_t preset_seed = 0;
    std::size_t preset_ensemble = 0, preset_grid = 0;
    cmd_preset->add_option("name", preset_name, "preset name")->required();
    cmd_preset->add_option("--override", overrides, "dotted.path=value config override");
    cmd_preset->add_option("--out", preset_out, "directory for the JSON report");
    auto* opt_seed = cmd_preset->add_option("--seed", preset_seed, "override root seed");
    auto* opt_ensemble =
        cmd_preset->add_option("--ensemble", preset_ensemble, "override ensemble size");
    auto* opt_grid = cmd_preset->add_option("--grid-size", preset_grid, "override grid size");

    // ---- list-presets ----
    auto* cmd_list = app.add_subcommand("list-presets", "list available presets");

    // ---- simulate ----
    auto* cmd_sim = app.add_subcommand("simulate", "sample paths and dump t,x CSV files");
    std::string sim_v = "identity", sim_ifs = "cantor3", sim_out = "paths";
    double sim_beta = 6.0, sim_hurst = 0.5;
    std::size_t sim_grid = 1025, sim_ensemble = 1;
    std::uint64_t sim_seed = 0;
    cmd_sim->add_option("--v", sim_v, "variance kind: identity|power-law|cantor|self-similar-cdf|iterated-cdf");
    cmd_sim->add_option("--beta", sim_beta, "power-law exponent");
    cmd_sim->add_option("--ifs", sim_ifs, "IFS preset for CDF kinds");
    cmd_sim->add_option("--hurst", sim_hurst, "Hurst index");
    cmd_sim->add_option("--grid-size", sim_grid, "grid points");
    cmd_sim->add_option("--ensemble", sim_ensemble, "number of paths");
    cmd_sim->add_option("--seed", sim_seed, "root seed");
    cmd_sim->add_option("--out", sim_out, "output directory")->required();

    // ---- estimate ----
    auto* cmd_est = app.add_subcommand("estimate", "run one estimator on simulated paths");
    std::string est_kind = "box-dim", est_v = "identity", est_ifs = "cantor3", est_out;
    double est_beta = 6.0, est_hurst = 0.5, est_q = 2.0, est_rho = 2.0 / 3.0, est_t = 0.0;
    std::size_t est_grid = 131073, est_ensemble = 1;
    std::uint64_t est_seed = 0;
    int est_nmin = 4, est_nmax = 12, est_angles = 64;
    cmd_est->add_option("--estimator", est_kind,
                        "box-dim|fourier-alpha|tau-empirical|holder-upper|holder-lower");
    cmd_est->add_option("--t", est_t, "evaluation point for the holder estimators");
    cmd_est->add_option("--v", est_v, "variance kind");
    cmd_est->add_option("--beta", est_beta, "power-law exponent");
    cmd_est->add_option("--ifs", est_ifs, "IFS preset for CDF kinds");
    cmd_est->add_option("--hurst", est_hurst, "Hurst index");
    cmd_est->add_option("--grid-size", est_grid, "grid points");
    cmd_est->add_option("--ensemble", est_ensemble, "number of paths");
    cmd_est->add_option("--seed", est_seed, "root seed");
    cmd_est->add_option("--levels", est_nmin, "coarsest dyadic level");
    cmd_est->add_option("--levels-max", est_nmax, "finest dyadic level");
    cmd_est->add_option("--q", est_q, "moment order for tau-empirical");
    cmd_est->add_option("--angles", est_angles, "angles per magnitude level");
    cmd_est->add_option("--rho", est_rho, "cone decomposition exponent");
    cmd_est->add_option("--out", est_out, "directory for the JSON report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_list) {
            for (const auto& name : graphdim::preset_names(preset_dir)) std::printf("%s\n", name.c_str());
            return kExitPass;
        }
        if (*cmd_preset) {
            std::vector<std::string> all = overrides;
            if (opt_seed->count()) all.push_back("root_seed=" + std::to_string(preset_seed));
            if (opt_ensemble->count())
                all.push_back("ensemble=" + std::to_string(preset_ensemble));
            if (opt_grid->count()) all.push_back("grid_size=" + std::to_string(preset_grid));
            graphdim::ExperimentReport report;
            try {
                report = graphdim::run_preset(preset_name, all, preset_dir);
            } catch (const std::invalid_argument& e) {
                std::fprintf(stderr, "error: %s\n", e.what());
                return kExitUsage;
            }
            std::printf("preset %s\n", preset_name.c_str());
            print_report(report);
            write_report(report, preset_out, preset_name);
            return report.all_passed ? kExitPass : kExitFail;
        }
        if (*cmd_sim) {
            const json config =
                config_from_flags(sim_v, sim_beta, sim_ifs, sim_hurst, sim_grid, sim_ensemble, sim_seed);
            const auto files = graphdim::dump_paths(config, sim_out);
            std::printf("wrote %zu files to %s\n", files.size(), sim_out.c_str());
            return kExitPass;
        }
        if (*cmd_est) {
            json config =
                config_from_flags(est_v, est_beta, est_ifs, est_hurst, est_grid, est_ensemble, est_seed);
            json check{{"kind", est_kind}, {"name", est_kind}, {"assert", false}};
            if (est_kind == "box-dim") {
                check["n_min"] = est_nmin;
                check["n_max"] = est_nmax;
            } else if (est_kind == "fourier-alpha") {
                check["angles"] = est_angles;
                check["rho"] = est_rho;
                if (!est_out.empty()) check["scan_csv_dir"] = est_out;
            } else if (est_kind == "tau-empirical") {
                check["q"] = est_q;
            } else if (est_kind == "holder-upper" || est_kind == "holder-lower") {
                check["kind"] = "holder-indices";
                json variance = config["v"];
                check["cases"] = json::array(
                    {{{"v", variance},
                      {"t", est_t},
                      {"which", est_kind == "holder-upper" ? "upper" : "lower"},
                      {"min", -1e300},
                      {"max", 1e300}}});
            }
            config["checks"] = json::array({check});
            const auto report = graphdim::run_config(config);
            print_report(report);
            std::printf("%s\n", report.checks.at(0).details.dump(2).c_str());
            write_report(report, est_out, est_kind);
            return kExitPass;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFail;
    }
    return kExitUsage;
}
