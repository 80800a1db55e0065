#pragma once

// Table-producing commands behind the CLI, plus the CSV/JSON writers.  Every
// command validates its configuration fully before computing, and the writers
// only run on a finished table, so invalid input never yields partial output.
//
// CSV: one header row, data rows, then one '#'-prefixed comment line with
// key=value diagnostics (when any).  Floats are printed with 17 significant
// digits, '.' decimal separator, '\n' line endings, so output is byte-stable.
// JSON: a single document {config, rows, diagnostics} with rows keyed by
// column name.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pathwalk/errors.hpp"
#include "pathwalk/evolution.hpp"
#include "pathwalk/jacobi.hpp"
#include "pathwalk/limit.hpp"
#include "pathwalk/time_average.hpp"
#include "pathwalk/unitary_spectrum.hpp"
#include "pathwalk/walk.hpp"

namespace pathwalk {

struct RunConfig {
    std::string subcommand;
    int n = 0;
    double p = 0.0;
    int start = 0;
    std::string chirality = "mixed";  // L | R | mixed
    std::string method = "spectral";  // spectral | closed-form | cesaro
    std::int64_t steps = 0;           // cesaro step count T
    int grid = 99;
    std::string format = "csv";  // csv | json
    std::string out;             // empty = stdout
    std::uint64_t seed = 0;      // reserved; the model is deterministic
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> diagnostics;
};

namespace detail {

inline std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

// Resolve the chirality flag against the start vertex: boundaries force their
// unique branch (an explicit conflicting flag is an error), interior vertices
// take the flag at face value.
inline ChiralityMode resolve_mode(const WalkParameters& params, int start,
                                  const std::string& chirality) {
    if (chirality != "L" && chirality != "R" && chirality != "mixed")
        throw ValidationError("chirality must be L, R or mixed, got '" + chirality + "'");
    if (start == 0) {
        if (chirality == "L")
            throw ValidationError("start vertex 0 admits only the R chirality");
        return ChiralityMode::FixedR;
    }
    if (start == params.n + 1) {
        if (chirality == "R")
            throw ValidationError("start vertex n+1 admits only the L chirality");
        return ChiralityMode::FixedL;
    }
    if (chirality == "L") return ChiralityMode::FixedL;
    if (chirality == "R") return ChiralityMode::FixedR;
    return ChiralityMode::MixedHalfHalf;
}

}  // namespace detail

// Eigenphases and residuals of U: rows (k, re_mu, im_mu, phi, residual),
// phi = arg(mu) in (-pi, pi].
inline Table cmd_spectrum(const RunConfig& config) {
    const WalkParameters params(config.n, config.p);
    const EvolutionKernel kernel(params);
    Table table{{"k", "re_mu", "im_mu", "phi", "residual"}, {}, {}};
    table.rows.reserve(params.state_dim());
    visit_eigenpairs(params, [&](int label, Complex mu, const WalkState& u) {
        const WalkState uu = kernel.step(u);
        double residual = 0.0;
        for (int r = 0; r < u.dim(); ++r)
            residual = std::max(residual, std::abs(uu.amplitudes[r] - mu * u.amplitudes[r]));
        table.rows.push_back({static_cast<double>(label), mu.real(), mu.imag(), std::arg(mu),
                              residual});
    });
    return table;
}

// Time-averaged distribution by the selected route: rows (j, pbar).
inline Table cmd_timeavg(const RunConfig& config) {
    const WalkParameters params(config.n, config.p);
    const InitialSpec spec{config.start, detail::resolve_mode(params, config.start,
                                                              config.chirality)};
    validate_initial_spec(params, spec);

    TimeAveragedDistribution pbar{params, spec, AverageMethod::Spectral, {}};
    if (config.method == "spectral") {
        pbar = time_averaged_spectral(params, spec);
    } else if (config.method == "closed-form") {
        pbar = time_averaged_closed_form(params, spec);
    } else if (config.method == "cesaro") {
        if (config.steps < 1)
            throw ValidationError("method cesaro requires --steps <T> with T >= 1");
        pbar = time_averaged_cesaro(EvolutionKernel(params), spec, config.steps);
    } else {
        throw ValidationError("method must be spectral, closed-form or cesaro, got '" +
                              config.method + "'");
    }

    Table table{{"j", "pbar"}, {}, {}};
    for (int j = 0; j <= params.n + 1; ++j)
        table.rows.push_back({static_cast<double>(j), pbar.masses[j]});
    if (pbar.cesaro_error_estimate)
        table.diagnostics.emplace_back("est_err", *pbar.cesaro_error_estimate);
    return table;
}

// Empirical scaled CDF against the limiting mixture: rows (a, F_n, F_limit)
// on a = k/grid for k = 0..grid; diagnostics ks (interior grid) and c.
inline Table cmd_limit_check(const RunConfig& config) {
    const WalkParameters params(config.n, config.p);
    if (config.grid < 2) throw ValidationError("--grid must be >= 2");
    const InitialSpec spec{config.start, detail::resolve_mode(params, config.start,
                                                              config.chirality)};
    validate_initial_spec(params, spec);
    // The mixture coefficient is derived for the half-half coin mixture
    // (boundary starts have a forced branch); a fixed interior branch would
    // be compared against the wrong limit.
    if (spec.start_vertex >= 1 && spec.start_vertex <= params.n &&
        spec.mode != ChiralityMode::MixedHalfHalf)
        throw ValidationError("limit-check requires the mixed chirality at interior starts");

    const double c = c_coefficient(params, config.start);
    const LimitMixture mixture{c};
    const TimeAveragedDistribution pbar = time_averaged_spectral(params, spec);

    Table table{{"a", "F_n", "F_limit"}, {}, {}};
    for (int k = 0; k <= config.grid; ++k) {
        const double a = static_cast<double>(k) / config.grid;
        table.rows.push_back({a, scaled_cdf(pbar, a), mixture.cdf(a)});
    }
    table.diagnostics.emplace_back("ks", kolmogorov_distance(pbar, mixture, config.grid));
    table.diagnostics.emplace_back("c", c);
    return table;
}

// Stationary measure next to the squared +1-eigenvector components:
// rows (i, pi, v0_sq); the two columns agree to roundoff.
inline Table cmd_stationary(const RunConfig& config) {
    const WalkParameters params(config.n, config.p);
    const std::vector<double> pi = stationary_measure(params);
    const std::vector<double> v0 = jacobi_eigenvector(params, 0);
    Table table{{"i", "pi", "v0_sq"}, {}, {}};
    for (int i = 0; i <= params.n + 1; ++i)
        table.rows.push_back({static_cast<double>(i), pi[i], v0[i] * v0[i]});
    return table;
}

inline void write_csv(const Table& table, std::ostream& os) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << (c ? "," : "") << table.columns[c];
    os << "\n";
    for (const std::vector<double>& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << detail::format_double(row[c]);
        os << "\n";
    }
    if (!table.diagnostics.empty()) {
        os << "#";
        for (const auto& [key, value] : table.diagnostics)
            os << " " << key << "=" << detail::format_double(value);
        os << "\n";
    }
}

inline void write_json(const Table& table, const RunConfig& config, std::ostream& os) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json cfg;
    cfg["subcommand"] = config.subcommand;
    cfg["n"] = config.n;
    cfg["p"] = config.p;
    if (config.subcommand == "timeavg" || config.subcommand == "limit-check") {
        cfg["start"] = config.start;
        cfg["chirality"] = config.chirality;
    }
    if (config.subcommand == "timeavg") {
        cfg["method"] = config.method;
        if (config.method == "cesaro") cfg["steps"] = config.steps;
    }
    if (config.subcommand == "limit-check") cfg["grid"] = config.grid;
    doc["config"] = std::move(cfg);

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const std::vector<double>& row : table.rows) {
        nlohmann::ordered_json jrow;
        for (std::size_t c = 0; c < row.size(); ++c) jrow[table.columns[c]] = row[c];
        rows.push_back(std::move(jrow));
    }
    doc["rows"] = std::move(rows);

    nlohmann::ordered_json diag = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.diagnostics) diag[key] = value;
    doc["diagnostics"] = std::move(diag);

    os << doc.dump(2) << "\n";
}

inline Table run_command(const RunConfig& config) {
    if (config.subcommand == "spectrum") return cmd_spectrum(config);
    if (config.subcommand == "timeavg") return cmd_timeavg(config);
    if (config.subcommand == "limit-check") return cmd_limit_check(config);
    if (config.subcommand == "stationary") return cmd_stationary(config);
    throw ValidationError("unknown subcommand '" + config.subcommand + "'");
}

inline void write_table(const Table& table, const RunConfig& config, std::ostream& os) {
    if (config.format == "csv")
        write_csv(table, os);
    else if (config.format == "json")
        write_json(table, config, os);
    else
        throw ValidationError("format must be csv or json, got '" + config.format + "'");
}

}  // namespace pathwalk
