#pragma once

// Full eigensystem of the one-step operator U, lifted from the Jacobi
// spectrum.  Each Jacobi eigenvector v_m yields a two-dimensional invariant
// subspace spanned by
//   a_m = v_m(0)|0,R> + sum_j v_m(j) (sqrt(q)|j,L> + sqrt(p)|j,R>) + v_m(n+1)|n+1,L>
//   b_m = S a_m,
// on which U acts as ((0,-1),(1,2*lambda)); the eigenphases are e^{+-i phi_m}
// with cos(phi_m) = lambda_m, and the eigenvectors (a_m - e^{+-i phi} b_m) /
// (sqrt(2) sin phi).  lambda = +-1 contribute a_0 and a_{n+1} directly.
// Eigenphase order everywhere: 0, +1, -1, +2, -2, ..., +n, -n, n+1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "pathwalk/errors.hpp"
#include "pathwalk/evolution.hpp"
#include "pathwalk/jacobi.hpp"
#include "pathwalk/walk.hpp"

namespace pathwalk {

// Eigenpair labels in canonical order: 0, +1, -1, ..., +n, -n, n+1.
inline std::vector<int> eigenpair_labels(const WalkParameters& params) {
    std::vector<int> labels;
    labels.reserve(params.state_dim());
    labels.push_back(0);
    for (int m = 1; m <= params.n; ++m) {
        labels.push_back(m);
        labels.push_back(-m);
    }
    labels.push_back(params.n + 1);
    return labels;
}

namespace detail {

inline void check_phase_gaps(const std::vector<Complex>& phases) {
    std::vector<double> args;
    args.reserve(phases.size());
    for (const Complex& mu : phases) args.push_back(std::arg(mu));
    std::sort(args.begin(), args.end());
    double min_gap = 2.0 * std::numbers::pi - (args.back() - args.front());
    for (std::size_t i = 1; i < args.size(); ++i)
        min_gap = std::min(min_gap, args[i] - args[i - 1]);
    if (min_gap < 1e-12)
        throw ConsistencyError("eigenphases: near-degenerate pair (gap " +
                               std::to_string(min_gap) + "); time averages would be invalid");
}

}  // namespace detail

// All 2n+2 eigenphases of U.  Guards against (numerically) degenerate phases,
// which would invalidate the diagonal time-average formula.
inline std::vector<Complex> eigenphases(const WalkParameters& params) {
    const std::vector<double> lam = jacobi_eigenvalues(params);
    std::vector<Complex> mu;
    mu.reserve(params.state_dim());
    mu.emplace_back(1.0, 0.0);
    for (int m = 1; m <= params.n; ++m) {
        // real part is lambda_m itself; sin(phi_m) = sqrt(1 - lambda^2) > 0
        const double s = std::sqrt(1.0 - lam[m] * lam[m]);
        mu.emplace_back(lam[m], s);
        mu.emplace_back(lam[m], -s);
    }
    mu.emplace_back(-1.0, 0.0);
    detail::check_phase_gaps(mu);
    return mu;
}

struct LiftedPair {
    WalkState a;
    WalkState b;  // S a
    double lambda;
};

// Embed a real Jacobi eigenvector into the walk space (chirality weights
// sqrt(q), sqrt(p) at interior vertices, boundary components carried over).
inline WalkState lift_to_walk_space(const WalkParameters& params, const std::vector<double>& v) {
    WalkState a(params.state_dim());
    a.amplitudes[0] = v[0];
    const double sq = std::sqrt(params.q);
    const double sp = std::sqrt(params.p);
    for (int j = 1; j <= params.n; ++j) {
        a.amplitudes[2 * j - 1] = sq * v[j];
        a.amplitudes[2 * j] = sp * v[j];
    }
    a.amplitudes[2 * params.n + 1] = v[params.n + 1];
    return a;
}

// Build (a_m, b_m) and verify the defining relations U a = b,
// U b = 2 lambda b - a, <a,b> = lambda.
inline LiftedPair lifted_pair(const WalkParameters& params, const JacobiSpectrum& jacobi, int m) {
    if (m < 0 || m > params.n + 1) throw ValidationError("lifted_pair: index m out of range");
    const EvolutionKernel kernel(params);
    LiftedPair pair{lift_to_walk_space(params, jacobi.eigenvectors[m]), WalkState{},
                    jacobi.eigenvalues[m]};
    pair.b = kernel.apply_shift(pair.a);

    const int d = params.state_dim();
    const WalkState ua = kernel.step(pair.a);
    const WalkState ub = kernel.step(pair.b);
    double worst = 0.0;
    Complex dot{0.0, 0.0};
    for (int r = 0; r < d; ++r) {
        worst = std::max(worst, std::abs(ua.amplitudes[r] - pair.b.amplitudes[r]));
        worst = std::max(worst, std::abs(ub.amplitudes[r] - 2.0 * pair.lambda * pair.b.amplitudes[r] +
                                         pair.a.amplitudes[r]));
        dot += std::conj(pair.a.amplitudes[r]) * pair.b.amplitudes[r];
    }
    worst = std::max(worst, std::abs(dot - pair.lambda));
    if (worst > 1e-12)
        throw ConsistencyError("lifted_pair: invariant-subspace relations violated by " +
                               std::to_string(worst) + " at m=" + std::to_string(m));
    return pair;
}

enum class PhaseSign { Plus, Minus };

namespace detail {

// Rotate so the first component of nonnegligible modulus is real positive.
inline void fix_global_phase(WalkState& u) {
    for (const Complex& z : u.amplitudes) {
        if (std::abs(z) > 1e-12) {
            const Complex rot = std::conj(z) / std::abs(z);
            for (Complex& w : u.amplitudes) w *= rot;
            return;
        }
    }
}

}  // namespace detail

// Unit eigenvector of U from a lifted pair: (a - e^{+-i phi} b)/(sqrt(2) sin phi)
// for |lambda| < 1; for lambda = +-1 the pair is one-dimensional and a itself
// is the eigenvector.  Global phase: first nonzero component real positive.
inline WalkState unitary_eigenvector(const WalkParameters& params, const LiftedPair& pair,
                                     PhaseSign sign) {
    const int d = params.state_dim();
    if (std::abs(pair.lambda) >= 1.0) {
        if (std::abs(std::abs(pair.lambda) - 1.0) > 1e-14)
            throw ValidationError("unitary_eigenvector: |lambda| > 1 is impossible");
        throw ValidationError(
            "unitary_eigenvector: lambda = +-1 pairs are one-dimensional; use pair.a");
    }
    const double s = std::sqrt(1.0 - pair.lambda * pair.lambda);  // sin(phi)
    const Complex mu{pair.lambda, sign == PhaseSign::Plus ? s : -s};
    WalkState u(d);
    const double scale = 1.0 / (std::sqrt(2.0) * s);
    for (int r = 0; r < d; ++r)
        u.amplitudes[r] = (pair.a.amplitudes[r] - mu * pair.b.amplitudes[r]) * scale;
    detail::fix_global_phase(u);
    return u;
}

// Visit all 2n+2 eigenpairs in canonical order without materializing the
// spectrum; callback(label, mu, u).  Memory stays O(n), so this scales to
// instance sizes where the full spectrum would not fit.
template <typename Callback>
void visit_eigenpairs(const WalkParameters& params, Callback&& callback) {
    const EvolutionKernel kernel(params);
    const std::vector<double> lam = jacobi_eigenvalues(params);
    for (int m = 0; m <= params.n + 1; ++m) {
        WalkState a = lift_to_walk_space(params, jacobi_eigenvector(params, m));
        if (m == 0 || m == params.n + 1) {
            callback(m == 0 ? 0 : params.n + 1, Complex{lam[m], 0.0}, a);
            continue;
        }
        WalkState b = kernel.apply_shift(a);
        const LiftedPair pair{std::move(a), std::move(b), lam[m]};
        const double s = std::sqrt(1.0 - lam[m] * lam[m]);
        callback(m, Complex{lam[m], s}, unitary_eigenvector(params, pair, PhaseSign::Plus));
        callback(-m, Complex{lam[m], -s}, unitary_eigenvector(params, pair, PhaseSign::Minus));
    }
}

struct UnitarySpectrum {
    WalkParameters params;
    std::vector<int> labels;            // 0, +1, -1, ..., +n, -n, n+1
    std::vector<Complex> eigenphases;   // same order
    std::vector<WalkState> eigenvectors;
    std::vector<double> residuals;      // per pair, max|U u - mu u|
    double gram_deviation = 0.0;        // max |<u_i,u_j> - delta_ij|
    double closed_form_discrepancy = 0.0;  // vs trig/geometric component formulas
};

namespace detail {

// Component formulas for the eigenvectors, independent of the a/b
// construction: geometric in mu*sqrt(p/q) for lambda = +-1, Chebyshev ratios
// for the rest.  Used as a cross-check, matched up to one global phase.
inline WalkState closed_form_eigenvector(const WalkParameters& params, int label,
                                         const JacobiSpectrum& jacobi) {
    const int n = params.n;
    WalkState u(params.state_dim());
    if (label == 0 || label == n + 1) {
        const Complex mu = label == 0 ? Complex{1.0, 0.0} : Complex{-1.0, 0.0};
        const double ratio = std::sqrt(params.p / params.q);
        const double c0 = std::sqrt(stationary_measure(params)[0]);
        u.amplitudes[0] = mu * c0;  // (0,R): mu * c * (mu*ratio)^0
        Complex g{1.0, 0.0};        // (mu * ratio)^{j-1}
        for (int j = 1; j <= n; ++j) {
            u.amplitudes[2 * j - 1] = c0 * g;        // (j,L): c * (mu*ratio)^{j-1}
            u.amplitudes[2 * j] = c0 * g * ratio;    // (j,R): mu * c * (mu*ratio)^j, mu^2 = 1
            g *= mu * ratio;
        }
        u.amplitudes[2 * n + 1] = c0 * g;  // (n+1,L)
        return u;
    }
    const int m = std::abs(label);
    const double theta = jacobi.thetas[m - 1];
    const double phi = jacobi.phis[m - 1];
    const Complex mu{std::cos(phi), label > 0 ? std::sin(phi) : -std::sin(phi)};
    const double sqp = std::sqrt(params.q / params.p);
    const double norm = std::sqrt((n + 1) / params.p) * std::sin(phi) / std::sin(theta);
    const Complex pref = Complex{0.0, -1.0} / norm;
    auto cheb = [&](int k) { return chebyshev_u(k, theta); };
    for (int j = 1; j <= n + 1; ++j)
        u.amplitudes[basis_index(params, j, Chirality::L)] =
            pref * (cheb(j - 1) - mu * sqp * cheb(j - 2));
    for (int j = 0; j <= n; ++j)
        u.amplitudes[basis_index(params, j, Chirality::R)] =
            pref * (mu * cheb(j) - sqp * cheb(j - 1));
    return u;
}

inline double phase_aligned_distance(const WalkState& u, const WalkState& ref) {
    Complex dot{0.0, 0.0};
    for (int r = 0; r < u.dim(); ++r) dot += std::conj(ref.amplitudes[r]) * u.amplitudes[r];
    const Complex rot = std::abs(dot) > 0.0 ? std::conj(dot) / std::abs(dot) : Complex{1.0, 0.0};
    double worst = 0.0;
    for (int r = 0; r < u.dim(); ++r)
        worst = std::max(worst, std::abs(rot * u.amplitudes[r] - ref.amplitudes[r]));
    return worst;
}

}  // namespace detail

// Assemble and validate the complete eigensystem.  Throws ConsistencyError if
// any residual exceeds 1e-10 or the Gram matrix strays from the identity.
inline UnitarySpectrum full_eigensystem(const WalkParameters& params) {
    const JacobiSpectrum jacobi = jacobi_spectrum(params);
    const EvolutionKernel kernel(params);
    const int d = params.state_dim();

    UnitarySpectrum spec{params, eigenpair_labels(params), eigenphases(params), {}, {}};
    spec.eigenvectors.reserve(d);

    for (int m = 0; m <= params.n + 1; ++m) {
        LiftedPair pair = lifted_pair(params, jacobi, m);
        if (m == 0 || m == params.n + 1) {
            spec.eigenvectors.push_back(std::move(pair.a));
        } else {
            spec.eigenvectors.push_back(unitary_eigenvector(params, pair, PhaseSign::Plus));
            spec.eigenvectors.push_back(unitary_eigenvector(params, pair, PhaseSign::Minus));
        }
    }

    spec.residuals.resize(d);
    double worst_residual = 0.0;
    int worst_k = 0;
    for (int k = 0; k < d; ++k) {
        const WalkState uu = kernel.step(spec.eigenvectors[k]);
        double r = 0.0;
        for (int i = 0; i < d; ++i)
            r = std::max(r, std::abs(uu.amplitudes[i] -
                                     spec.eigenphases[k] * spec.eigenvectors[k].amplitudes[i]));
        spec.residuals[k] = r;
        if (r > worst_residual) {
            worst_residual = r;
            worst_k = k;
        }
    }
    if (worst_residual > 1e-10)
        throw ConsistencyError("full_eigensystem: residual " + std::to_string(worst_residual) +
                               " at eigenpair label " + std::to_string(spec.labels[worst_k]));

    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            Complex dot{0.0, 0.0};
            for (int r = 0; r < d; ++r)
                dot += std::conj(spec.eigenvectors[i].amplitudes[r]) *
                       spec.eigenvectors[j].amplitudes[r];
            const double dev = std::abs(dot - (i == j ? 1.0 : 0.0));
            spec.gram_deviation = std::max(spec.gram_deviation, dev);
        }
    }
    if (spec.gram_deviation > 1e-10)
        throw ConsistencyError("full_eigensystem: Gram deviation " +
                               std::to_string(spec.gram_deviation));

    for (int k = 0; k < d; ++k) {
        const WalkState ref = detail::closed_form_eigenvector(params, spec.labels[k], jacobi);
        spec.closed_form_discrepancy =
            std::max(spec.closed_form_discrepancy,
                     detail::phase_aligned_distance(spec.eigenvectors[k], ref));
    }
    return spec;
}

}  // namespace pathwalk
