// pathwalk: run walk experiments from the command line and emit CSV/JSON.
//
// Subcommands: spectrum, timeavg, limit-check, stationary.
// Exit codes: 0 success, 2 usage/validation error, 3 internal
// numerical-consistency failure.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pathwalk/pathwalk.hpp"

namespace {

void add_model_options(CLI::App* cmd, pathwalk::RunConfig& config) {
    cmd->add_option("--n", config.n, "interior vertex count (path has n+2 vertices)")
        ->required();
    cmd->add_option("--p", config.p, "right-step probability in (0,1)")->required();
}

void add_output_options(CLI::App* cmd, pathwalk::RunConfig& config) {
    cmd->add_option("--format", config.format, "output format: csv|json (default csv)");
    cmd->add_option("--out", config.out, "output path (default: standard output)");
}

int emit(const pathwalk::RunConfig& config) {
    const pathwalk::Table table = pathwalk::run_command(config);
    if (config.out.empty()) {
        pathwalk::write_table(table, config, std::cout);
        return 0;
    }
    std::ofstream file(config.out, std::ios::trunc);
    if (!file) {
        std::cerr << "pathwalk: cannot open output file '" << config.out << "'\n";
        return 2;
    }
    pathwalk::write_table(table, config, file);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coined walk on the finite path: spectra, time averages, limit checks"};
    app.require_subcommand(1);
    pathwalk::RunConfig config;

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "eigenphases of the one-step operator with per-pair residuals");
    add_model_options(spectrum, config);
    add_output_options(spectrum, config);

    CLI::App* timeavg =
        app.add_subcommand("timeavg", "time-averaged position distribution");
    add_model_options(timeavg, config);
    timeavg->add_option("--start", config.start, "starting vertex in [0, n+1]")->required();
    timeavg->add_option("--chirality", config.chirality,
                        "initial coin: L|R|mixed (default mixed; forced at boundaries)");
    timeavg->add_option("--method", config.method,
                        "route: spectral|closed-form|cesaro (default spectral)");
    timeavg->add_option("--steps", config.steps, "Cesaro step count T (required for cesaro)");
    add_output_options(timeavg, config);

    CLI::App* limit_check = app.add_subcommand(
        "limit-check", "scaled CDF against the limiting mixture, with Kolmogorov distance");
    add_model_options(limit_check, config);
    limit_check->add_option("--start", config.start, "starting vertex in [0, n+1]")->required();
    limit_check->add_option("--chirality", config.chirality,
                            "initial coin: L|R|mixed (default mixed; forced at boundaries)");
    limit_check->add_option("--grid", config.grid, "CDF grid size (default 99)");
    add_output_options(limit_check, config);

    CLI::App* stationary = app.add_subcommand(
        "stationary", "stationary measure next to squared +1-eigenvector components");
    add_model_options(stationary, config);
    add_output_options(stationary, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return 2;
    }

    for (CLI::App* cmd : {spectrum, timeavg, limit_check, stationary})
        if (cmd->parsed()) config.subcommand = cmd->get_name();

    try {
        return emit(config);
    } catch (const pathwalk::ValidationError& e) {
        std::cerr << "pathwalk: " << e.what() << "\n";
        return 2;
    } catch (const pathwalk::ConsistencyError& e) {
        std::cerr << "pathwalk: numerical consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "pathwalk: internal error: " << e.what() << "\n";
        return 3;
    }
}
