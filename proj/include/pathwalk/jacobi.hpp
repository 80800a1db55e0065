#pragma once

// Jacobi matrix of the reflecting birth-death chain on the path and its
// closed-form spectrum.  The (n+2)x(n+2) matrix has zero diagonal and
// off-diagonals (sqrt(q), sqrt(pq), ..., sqrt(pq), sqrt(p)); its eigenvalues
// are 1, 2*sqrt(pq)*cos(m*pi/(n+1)) for m=1..n, and -1.  Eigenvectors come
// from the characteristic-minor sequence P_k: component j of the
// unnormalized eigenvector is P_j(lambda) / (b_1 ... b_j).
//
// The same P/E minor recurrences provide char_poly_D, an evaluation of
// det(lambda*I - J_k) that root-finding tests use as an oracle against the
// closed-form eigenvalues.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pathwalk/errors.hpp"
#include "pathwalk/walk.hpp"

namespace pathwalk {

struct JacobiMatrix {
    int dimension;                      // n + 2
    std::vector<double> off_diagonals;  // b_1..b_{n+1}; entry (j-1,j) = b_j

    // Dense symmetric matrix, row-major; for small-n oracle tests.
    std::vector<std::vector<double>> dense() const {
        std::vector<std::vector<double>> m(dimension, std::vector<double>(dimension, 0.0));
        for (int j = 1; j < dimension; ++j) {
            m[j - 1][j] = off_diagonals[j - 1];
            m[j][j - 1] = off_diagonals[j - 1];
        }
        return m;
    }
};

inline JacobiMatrix jacobi_matrix(const WalkParameters& params) {
    const int n = params.n;
    std::vector<double> b(n + 1);
    b[0] = std::sqrt(params.q);
    for (int j = 1; j < n; ++j) b[j] = std::sqrt(params.p * params.q);
    b[n] = std::sqrt(params.p);
    return JacobiMatrix{n + 2, std::move(b)};
}

// Eigenvalues in descending order: lambda_0 = 1, lambda_m = 2 sqrt(pq) cos(m pi/(n+1)),
// lambda_{n+1} = -1.
inline std::vector<double> jacobi_eigenvalues(const WalkParameters& params) {
    const int n = params.n;
    std::vector<double> lam(n + 2);
    lam[0] = 1.0;
    const double band = 2.0 * std::sqrt(params.p * params.q);
    for (int m = 1; m <= n; ++m)
        lam[m] = band * std::cos(m * std::numbers::pi / (n + 1));
    lam[n + 1] = -1.0;
    return lam;
}

// sin((k+1)theta)/sin(theta) for k >= -1; the degree-k second-kind Chebyshev
// value at 2cos(theta) in monic normalization.
inline double chebyshev_u(int k, double theta) {
    if (k < -1) throw ValidationError("chebyshev_u: k must be >= -1");
    const double s = std::sin(theta);
    if (s == 0.0 || !(theta > 0.0) || !(theta < std::numbers::pi))
        throw ValidationError("chebyshev_u: theta must lie strictly inside (0, pi)");
    if (k == -1) return 0.0;
    return std::sin((k + 1) * theta) / s;
}

// det(lambda*I_k - J_k) for the size-k member of the family, 3 <= k <= n+2,
// via D_k = lambda^2 E_{k-2} - lambda E_{k-3} + pq E_{k-4} with
// E_j = lambda E_{j-1} - pq E_{j-2}, E_{-1} = 0, E_0 = 1.
inline double char_poly_D(const WalkParameters& params, double lambda, int k) {
    if (k < 3 || k > params.n + 2)
        throw ValidationError("char_poly_D: k must lie in [3, n+2], got " + std::to_string(k));
    const double pq = params.p * params.q;
    double e_prev = 0.0;  // E_{j-1}
    double e_cur = 1.0;   // E_j, starting at j = 0
    double e_km4 = 0.0, e_km3 = 0.0;
    for (int j = 1; j <= k - 2; ++j) {  // advance to E_{k-2}, keeping two trailing values
        const double next = lambda * e_cur - pq * e_prev;
        e_km4 = e_prev;
        e_km3 = e_cur;
        e_prev = e_cur;
        e_cur = next;
    }
    return lambda * lambda * e_cur - lambda * e_km3 + pq * e_km4;
}

namespace detail {

// Unnormalized lambda=+1 eigenvector for p <= q: P_j(1) = p^{j-1} over the
// off-diagonal products collapses to a geometric sequence in sqrt(p/q).
inline std::vector<double> plus_one_eigvec_raw(const WalkParameters& params) {
    const int n = params.n;
    const double ratio = std::sqrt(params.p / params.q);
    std::vector<double> w(n + 2);
    w[0] = 1.0;
    const double inv_sq = 1.0 / std::sqrt(params.q);
    double g = 1.0;
    for (int j = 1; j <= n; ++j) {
        w[j] = inv_sq * g;
        g *= ratio;
    }
    w[n + 1] = g;
    return w;
}

inline void normalize_sign_fixed(std::vector<double>& w) {
    double s = 0.0;
    for (double x : w) s += x * x;
    const double inv = 1.0 / std::sqrt(s);
    for (double& x : w) x *= inv;
    if (w[0] < 0.0)
        for (double& x : w) x = -x;
}

}  // namespace detail

// Unit eigenvector of J_{n+2} for the m-th eigenvalue (descending order),
// component 0 positive.  Interior m uses the scaled minor recurrence
// w_{j+1} = (lambda w_j - b_j w_{j-1}) / b_{j+1}; for lambda = +-1 that
// recurrence admits a growing spurious mode, so the exact geometric form of
// P_j(+-1)/(b_1..b_j) is evaluated instead (mirrored through p<->q when p > q
// so the stored terms never overflow).
inline std::vector<double> jacobi_eigenvector(const WalkParameters& params, int m) {
    const int n = params.n;
    if (m < 0 || m > n + 1)
        throw ValidationError("jacobi_eigenvector: index m out of range");

    if (m == 0 || m == n + 1) {
        std::vector<double> w;
        if (params.p <= params.q) {
            w = detail::plus_one_eigvec_raw(params);
        } else {
            w = detail::plus_one_eigvec_raw(params.mirrored());
            std::reverse(w.begin(), w.end());
        }
        if (m == n + 1)  // lambda=-1 companion: flip the odd components
            for (int j = 1; j <= n + 1; j += 2) w[j] = -w[j];
        detail::normalize_sign_fixed(w);
        return w;
    }

    const double lambda = jacobi_eigenvalues(params)[m];
    const JacobiMatrix jm = jacobi_matrix(params);
    const std::vector<double>& b = jm.off_diagonals;
    std::vector<double> w(n + 2);
    w[0] = 1.0;
    w[1] = lambda / b[0];
    for (int j = 1; j <= n; ++j)
        w[j + 1] = (lambda * w[j] - b[j - 1] * w[j - 1]) / b[j];
    detail::normalize_sign_fixed(w);
    return w;
}

struct JacobiSpectrum {
    WalkParameters params;
    std::vector<double> eigenvalues;                // descending, length n+2
    std::vector<std::vector<double>> eigenvectors;  // unit, component 0 positive
    std::vector<double> thetas;                     // m pi/(n+1), m = 1..n
    std::vector<double> phis;                       // arccos(lambda_m), m = 1..n
};

inline JacobiSpectrum jacobi_spectrum(const WalkParameters& params) {
    const int n = params.n;
    JacobiSpectrum spec{params, jacobi_eigenvalues(params), {}, {}, {}};
    spec.eigenvectors.reserve(n + 2);
    for (int m = 0; m <= n + 1; ++m) spec.eigenvectors.push_back(jacobi_eigenvector(params, m));
    spec.thetas.resize(n);
    spec.phis.resize(n);
    for (int m = 1; m <= n; ++m) {
        spec.thetas[m - 1] = m * std::numbers::pi / (n + 1);
        spec.phis[m - 1] = std::acos(spec.eigenvalues[m]);
    }
    return spec;
}

// Stationary measure of the reflecting chain (right/left step probabilities
// p/q, sure reflection at the ends).  Geometric branch for p != q, uniform
// with half-weight endpoints for p == q; the p > q case is evaluated through
// the p<->q mirror so large-n powers stay bounded.
inline std::vector<double> stationary_measure(const WalkParameters& params) {
    const int n = params.n;
    std::vector<double> pi(n + 2);
    if (params.p == params.q) {
        const double interior = 1.0 / (n + 1);
        for (int i = 1; i <= n; ++i) pi[i] = interior;
        pi[0] = pi[n + 1] = 0.5 * interior;
        return pi;
    }
    if (params.p > params.q) {
        pi = stationary_measure(params.mirrored());
        std::reverse(pi.begin(), pi.end());
        return pi;
    }
    const double r = params.p / params.q;
    const double head = (1.0 - r) / (2.0 * (1.0 - std::pow(r, n + 1)));
    pi[0] = head;
    double g = 1.0;
    for (int i = 1; i <= n; ++i) {
        pi[i] = head / params.q * g;
        g *= r;
    }
    pi[n + 1] = head * g;
    return pi;
}

}  // namespace pathwalk
