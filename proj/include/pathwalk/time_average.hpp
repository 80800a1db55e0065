#pragma once

// The limiting Cesaro (time-averaged) position distribution, computed three
// independent ways:
//
//   Spectral    sum over eigenpairs k of (|u_k(x,L)|^2 + |u_k(x,R)|^2) times
//               the squared overlap with the initial state, averaged over the
//               coin branches; exact because the spectrum is simple.  Offered
//               both on a materialized spectrum and as a streaming variant
//               that builds each eigenpair on the fly (O(n) memory, so large
//               instances stay cheap).
//   ClosedForm  the explicit formula: a stationary-measure product for the
//               +-1 eigenpairs plus a Chebyshev sum over the band eigenpairs.
//   Cesaro      finite-T empirical average of the per-step distributions.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "pathwalk/errors.hpp"
#include "pathwalk/evolution.hpp"
#include "pathwalk/jacobi.hpp"
#include "pathwalk/unitary_spectrum.hpp"
#include "pathwalk/walk.hpp"

namespace pathwalk {

enum class AverageMethod { Spectral, ClosedForm, Cesaro };

struct TimeAveragedDistribution {
    WalkParameters params;
    InitialSpec spec;
    AverageMethod method;
    std::vector<double> masses;  // over vertices 0..n+1
    std::int64_t cesaro_steps = 0;
    std::optional<double> cesaro_error_estimate{};  // max-norm T vs T/2, T >= 2
};

namespace detail {

// Branch-averaged weight of one eigenvector at the initial state.
inline double start_weight(const WalkParameters& params, const InitialSpec& spec,
                           const WalkState& u) {
    double w = 0.0;
    const std::vector<Chirality> branches = branches_of(spec);
    for (Chirality c : branches)
        w += std::norm(u.amplitudes[basis_index(params, spec.start_vertex, c)]);
    return w / static_cast<double>(branches.size());
}

}  // namespace detail

// Spectral route on a materialized, validated spectrum.
inline TimeAveragedDistribution time_averaged_spectral(const UnitarySpectrum& spectrum,
                                                       const InitialSpec& spec) {
    const WalkParameters& params = spectrum.params;
    validate_initial_spec(params, spec);
    const int n = params.n;
    std::vector<double> masses(n + 2, 0.0);
    for (const WalkState& u : spectrum.eigenvectors) {
        const double wt = detail::start_weight(params, spec, u);
        const std::vector<double> marginal = position_distribution(params, u);
        for (int x = 0; x <= n + 1; ++x) masses[x] += wt * marginal[x];
    }
    return {params, spec, AverageMethod::Spectral, std::move(masses)};
}

// Streaming spectral route: identical sum, one eigenpair at a time.  The +-m
// conjugate pair shares its position marginal and start weight (the cross
// terms depend on cos(phi) only), so each m contributes twice one real-valued
// computation; nothing larger than O(n) is ever held.
inline TimeAveragedDistribution time_averaged_spectral(const WalkParameters& params,
                                                       const InitialSpec& spec) {
    validate_initial_spec(params, spec);
    eigenphases(params);  // degeneracy guard
    const int n = params.n;
    const double sq = std::sqrt(params.q);
    const double sp = std::sqrt(params.p);
    const std::vector<double> lam = jacobi_eigenvalues(params);

    std::vector<double> masses(n + 2, 0.0);
    std::vector<double> aL(n + 2), aR(n + 2), bL(n + 2), bR(n + 2), w(n + 2);
    for (int m = 0; m <= n + 1; ++m) {
        const std::vector<double> v = jacobi_eigenvector(params, m);
        aL[0] = 0.0;
        aR[0] = v[0];
        for (int j = 1; j <= n; ++j) {
            aL[j] = sq * v[j];
            aR[j] = sp * v[j];
        }
        aL[n + 1] = v[n + 1];
        aR[n + 1] = 0.0;
        // b = S a: bL(j) = aR(j-1), bR(j) = aL(j+1)
        bL[0] = 0.0;
        for (int j = 1; j <= n + 1; ++j) bL[j] = aR[j - 1];
        for (int j = 0; j <= n; ++j) bR[j] = aL[j + 1];
        bR[n + 1] = 0.0;

        if (m == 0 || m == n + 1) {
            double wt = 0.0;
            const std::vector<Chirality> branches = branches_of(spec);
            for (Chirality c : branches) {
                const double amp = c == Chirality::L ? aL[spec.start_vertex] : aR[spec.start_vertex];
                wt += amp * amp;
            }
            wt /= static_cast<double>(branches.size());
            for (int x = 0; x <= n + 1; ++x)
                masses[x] += wt * (aL[x] * aL[x] + aR[x] * aR[x]);
        } else {
            const double l = lam[m];
            const double inv = 1.0 / (2.0 * (1.0 - l * l));  // 1/(2 sin^2 phi)
            auto wl = [&](int x) { return (aL[x] * aL[x] + bL[x] * bL[x] - 2.0 * l * aL[x] * bL[x]) * inv; };
            auto wr = [&](int x) { return (aR[x] * aR[x] + bR[x] * bR[x] - 2.0 * l * aR[x] * bR[x]) * inv; };
            double wt = 0.0;
            const std::vector<Chirality> branches = branches_of(spec);
            for (Chirality c : branches)
                wt += c == Chirality::L ? wl(spec.start_vertex) : wr(spec.start_vertex);
            wt /= static_cast<double>(branches.size());
            for (int x = 0; x <= n + 1; ++x) w[x] = wl(x) + wr(x);
            for (int x = 0; x <= n + 1; ++x) masses[x] += 2.0 * wt * w[x];
        }
    }
    return {params, spec, AverageMethod::Spectral, std::move(masses)};
}

// Closed-form route.  Valid for start 0 (pure R) and interior starts with the
// half-half coin mixture; targets j = 0..n are explicit and j = n+1 is the
// complement.  Start n+1 is reachable through the p<->q mirror instead.
inline TimeAveragedDistribution time_averaged_closed_form(const WalkParameters& params,
                                                          const InitialSpec& spec) {
    validate_initial_spec(params, spec);
    const int n = params.n;
    const int i = spec.start_vertex;
    if (i == n + 1)
        throw ValidationError(
            "time_averaged_closed_form: start n+1 is not covered; evaluate the mirrored "
            "instance (p -> q, start 0) and reverse the result");
    if (i >= 1 && spec.mode != ChiralityMode::MixedHalfHalf)
        throw ValidationError(
            "time_averaged_closed_form: interior starts are derived for the half-half "
            "coin mixture only");

    const std::vector<double> pi = stationary_measure(params);
    const double kappa = i == 0 ? 2.0 * pi[0] : pi[i];
    std::vector<double> masses(n + 2, 0.0);
    for (int j = 0; j <= n; ++j) masses[j] = kappa * pi[j];

    // Band contribution: for each theta_m, the bracket
    //   T(j) = p U_j^2 - cos(2 phi_m) U_{j-1}^2 + q U_{j-2}^2
    // with U_k = sin((k+1)theta)/sin(theta), U_{-1} = 0, and T(0) = p.
    const double band = 2.0 * std::sqrt(params.p * params.q);
    std::vector<double> cheb(n + 2);
    for (int m = 1; m <= n; ++m) {
        const double theta = m * std::numbers::pi / (n + 1);
        const double lambda = band * std::cos(theta);
        const double sin2phi = 1.0 - lambda * lambda;
        const double cos2phi = 2.0 * lambda * lambda - 1.0;
        const double sin2theta = std::sin(theta) * std::sin(theta);
        const double factor = (sin2theta / sin2phi) * (sin2theta / sin2phi);

        cheb[0] = 0.0;  // U_{-1}
        cheb[1] = 1.0;  // U_0
        const double x = 2.0 * std::cos(theta);
        for (int k = 1; k <= n; ++k) cheb[k + 1] = x * cheb[k] - cheb[k - 1];
        auto bracket = [&](int j) {
            if (j == 0) return params.p;
            const double u2 = cheb[j + 1], u1 = cheb[j], u0 = cheb[j - 1];
            return params.p * u2 * u2 - cos2phi * u1 * u1 + params.q * u0 * u0;
        };

        const double scale = i == 0 ? 2.0 * params.p * factor : factor * bracket(i);
        for (int j = 0; j <= n; ++j) masses[j] += scale * bracket(j) / ((n + 1.0) * (n + 1.0));
    }

    double total = 0.0;
    for (int j = 0; j <= n; ++j) total += masses[j];
    masses[n + 1] = 1.0 - total;
    return {params, spec, AverageMethod::ClosedForm, std::move(masses)};
}

// Finite-T empirical average.  Deterministic; carries the max-norm distance
// between the T and floor(T/2) partial averages as an error estimate (T >= 2).
inline TimeAveragedDistribution time_averaged_cesaro(const EvolutionKernel& kernel,
                                                     const InitialSpec& spec, std::int64_t steps) {
    const WalkParameters& params = kernel.parameters();
    validate_initial_spec(params, spec);
    if (steps < 1) throw ValidationError("time_averaged_cesaro: T must be >= 1");

    const int n = params.n;
    const std::vector<Chirality> branches = branches_of(spec);
    const double branch_weight = 1.0 / static_cast<double>(branches.size());
    const std::int64_t half = steps / 2;

    std::vector<double> acc(n + 2, 0.0), acc_half(n + 2, 0.0);
    for (Chirality branch : branches) {
        WalkState state = basis_state(params, spec, branch);
        std::vector<double> sum(n + 2, 0.0);
        for (std::int64_t t = 0; t < steps; ++t) {
            if (t == half)
                for (int x = 0; x <= n + 1; ++x) acc_half[x] += branch_weight * sum[x];
            const Complex* amp = state.amplitudes.data();
            sum[0] += std::norm(amp[0]);
            for (int v = 1; v <= n; ++v)
                sum[v] += std::norm(amp[2 * v - 1]) + std::norm(amp[2 * v]);
            sum[n + 1] += std::norm(amp[2 * n + 1]);
            kernel.step_inplace(state);
        }
        for (int x = 0; x <= n + 1; ++x) acc[x] += branch_weight * sum[x];
    }

    TimeAveragedDistribution result{params, spec, AverageMethod::Cesaro, {}};
    result.cesaro_steps = steps;
    result.masses.resize(n + 2);
    for (int x = 0; x <= n + 1; ++x) result.masses[x] = acc[x] / static_cast<double>(steps);
    if (steps >= 2) {
        double dist = 0.0;
        for (int x = 0; x <= n + 1; ++x)
            dist = std::max(dist, std::abs(result.masses[x] -
                                           acc_half[x] / static_cast<double>(half)));
        result.cesaro_error_estimate = dist;
    }
    return result;
}

// Contribution of the +-1 eigenpairs alone (the localized part of the
// spectral sum).  Factorizes as kappa * pi(j): kappa = 2 pi(0) from vertex 0,
// pi(i) from an interior mixed start, 2 pi(n+1) from vertex n+1.
inline std::vector<double> origin_mass_term(const JacobiSpectrum& jacobi,
                                            const InitialSpec& spec) {
    const WalkParameters& params = jacobi.params;
    validate_initial_spec(params, spec);
    const int n = params.n;
    std::vector<double> term(n + 2, 0.0);
    const std::vector<Chirality> branches = branches_of(spec);
    for (int m : {0, n + 1}) {
        const std::vector<double>& v = jacobi.eigenvectors[m];
        double wt = 0.0;
        for (Chirality c : branches) {
            const int i = spec.start_vertex;
            double chi_weight = 1.0;  // |<i,c| lift(v) >|^2 = chi_weight * v(i)^2
            if (i >= 1 && i <= n) chi_weight = c == Chirality::L ? params.q : params.p;
            wt += chi_weight * v[i] * v[i];
        }
        wt /= static_cast<double>(branches.size());
        for (int x = 0; x <= n + 1; ++x) term[x] += wt * v[x] * v[x];
    }
    return term;
}

}  // namespace pathwalk
