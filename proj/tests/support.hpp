#pragma once

// Shared test helpers: dense linear-algebra oracles, the bisection root
// finder driven by char_poly_D, and deterministic random states.  Everything
// here is independent of the library's own spectral construction so it can
// serve as a cross-check.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "pathwalk/evolution.hpp"
#include "pathwalk/jacobi.hpp"
#include "pathwalk/walk.hpp"

namespace testsupport {

using pathwalk::Complex;
using pathwalk::WalkParameters;
using pathwalk::WalkState;

// y = M x for a dense matrix stored as columns.
inline WalkState dense_apply(const std::vector<WalkState>& columns, const WalkState& x) {
    const int d = x.dim();
    WalkState y(d);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) y.amplitudes[i] += columns[k].amplitudes[i] * x.amplitudes[k];
    return y;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline double max_abs_diff(const WalkState& a, const WalkState& b) {
    double worst = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        worst = std::max(worst, std::abs(a.amplitudes[i] - b.amplitudes[i]));
    return worst;
}

inline WalkState random_unit_state(const WalkParameters& params, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    WalkState state(params.state_dim());
    for (Complex& a : state.amplitudes) a = Complex{gauss(rng), gauss(rng)};
    const double inv = 1.0 / state.norm();
    for (Complex& a : state.amplitudes) a *= inv;
    return state;
}

// Residual of an eigenpair of the Jacobi matrix, computed against the matrix
// entries directly.
inline double jacobi_residual(const WalkParameters& params, double lambda,
                              const std::vector<double>& v) {
    const pathwalk::JacobiMatrix jm = pathwalk::jacobi_matrix(params);
    const std::vector<double>& b = jm.off_diagonals;
    const int n = params.n;
    double worst = std::abs(b[0] * v[1] - lambda * v[0]);
    for (int j = 1; j <= n; ++j)
        worst = std::max(worst, std::abs(b[j - 1] * v[j - 1] + b[j] * v[j + 1] - lambda * v[j]));
    worst = std::max(worst, std::abs(b[n] * v[n] - lambda * v[n + 1]));
    return worst;
}

struct BisectionResult {
    std::vector<double> roots;  // one per bracket with a sign change
    int brackets_with_sign_change = 0;
};

// Bracket each closed-form eigenvalue by half the gap to its neighbours and
// bisect det(lambda I - J) there.  Exactly n+2 sign changes are expected for
// a simple spectrum.
inline BisectionResult bisect_char_poly(const WalkParameters& params, double tol = 1e-13,
                                        int max_iter = 200) {
    const std::vector<double> lam = pathwalk::jacobi_eigenvalues(params);
    const int count = static_cast<int>(lam.size());
    const int k = params.n + 2;
    BisectionResult result;
    for (int idx = 0; idx < count; ++idx) {
        const double gap_up = idx > 0 ? lam[idx - 1] - lam[idx] : 2.0 * (1.0 - lam[1]);
        const double gap_dn = idx < count - 1 ? lam[idx] - lam[idx + 1] : 2.0 * (lam[count - 2] + 1.0);
        const double g = 0.49 * std::min(gap_up, gap_dn);
        double lo = lam[idx] - g, hi = lam[idx] + g;
        double flo = pathwalk::char_poly_D(params, lo, k);
        const double fhi = pathwalk::char_poly_D(params, hi, k);
        if (flo == 0.0 || fhi == 0.0 || (flo < 0.0) != (fhi < 0.0)) {
            ++result.brackets_with_sign_change;
        } else {
            continue;
        }
        for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = pathwalk::char_poly_D(params, mid, k);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((flo < 0.0) != (fm < 0.0)) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        result.roots.push_back(0.5 * (lo + hi));
    }
    return result;
}

// Transition matrix of the reflecting chain, row-stochastic.
inline std::vector<std::vector<double>> reflecting_chain(const WalkParameters& params) {
    const int n = params.n;
    std::vector<std::vector<double>> P(n + 2, std::vector<double>(n + 2, 0.0));
    P[0][1] = 1.0;
    for (int i = 1; i <= n; ++i) {
        P[i][i - 1] = params.q;
        P[i][i + 1] = params.p;
    }
    P[n + 1][n] = 1.0;
    return P;
}

}  // namespace testsupport
