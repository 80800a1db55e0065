#pragma once

// Scaling-limit checks for the time-averaged distribution: the limiting
// mixture c * delta_0 + (1-c) * U(0,1), coefficients c_i, empirical CDFs of
// X/n, Kolmogorov distances on a grid, and the density-of-states quadrature
// whose value equals 1 - c_i.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "pathwalk/errors.hpp"
#include "pathwalk/jacobi.hpp"
#include "pathwalk/time_average.hpp"
#include "pathwalk/walk.hpp"

namespace pathwalk {

// Atom at 0 of mass c plus a uniform remainder on [0,1].
struct LimitMixture {
    double c;

    double cdf(double a) const {
        if (a < 0.0 || a > 1.0)
            throw ValidationError("LimitMixture::cdf: argument outside [0,1]");
        return c + (1.0 - c) * a;
    }
};

// Limiting atom mass at the origin for a walk started at vertex i (i fixed as
// n grows).  Zero unless p < q.
inline double c_coefficient(const WalkParameters& params, int i) {
    if (i < 0) throw ValidationError("c_coefficient: start vertex must be >= 0");
    if (params.p >= params.q) return 0.0;
    const double ratio = params.p / params.q;
    if (i == 0) return 1.0 - ratio;
    return (1.0 - ratio) * std::pow(ratio, i - 1) / (2.0 * params.q);
}

// P(X/n <= a) = sum of masses up to vertex floor(a*n).
inline double scaled_cdf(const TimeAveragedDistribution& pbar, double a) {
    if (a < 0.0 || a > 1.0) throw ValidationError("scaled_cdf: argument outside [0,1]");
    const int cutoff = static_cast<int>(std::floor(a * pbar.params.n));
    double s = 0.0;
    for (int j = 0; j <= cutoff; ++j) s += pbar.masses[j];
    return s;
}

// Max CDF gap over the interior grid {1/g, ..., (g-1)/g}.  a = 0 is excluded:
// the atom makes the comparison there depend on how the single vertex 0 maps
// onto the continuum point 0.
inline double kolmogorov_distance(const TimeAveragedDistribution& pbar,
                                  const LimitMixture& mixture, int grid_size) {
    if (grid_size < 2) throw ValidationError("kolmogorov_distance: grid size must be >= 2");
    double worst = 0.0;
    for (int k = 1; k < grid_size; ++k) {
        const double a = static_cast<double>(k) / grid_size;
        worst = std::max(worst, std::abs(scaled_cdf(pbar, a) - mixture.cdf(a)));
    }
    return worst;
}

namespace detail {

// Integrand of the uniform-component mass: the band density of states
// against the squared Chebyshev bracket of the start vertex.
// cos(phi(k)) = 2 sqrt(pq) cos k, so sin^2 phi = 1 - 4pq cos^2 k, evaluated
// in the cancellation-free form (p-q)^2 + 4pq sin^2 k.
inline double tail_integrand(const WalkParameters& params, int i, double k) {
    const double sin_k = std::sin(k);
    const double diff = params.p - params.q;
    const double sin2phi = diff * diff + 4.0 * params.p * params.q * sin_k * sin_k;
    if (sin2phi < 1e-14) return 1.0;  // p = q endpoint; removable, limit is 1
    if (i == 0) return 2.0 * params.p * sin_k * sin_k / sin2phi;
    const double cos2phi = 1.0 - 2.0 * sin2phi;
    const double s2 = std::sin((i + 1) * k), s1 = std::sin(i * k), s0 = std::sin((i - 1) * k);
    return (params.p * s2 * s2 - cos2phi * s1 * s1 + params.q * s0 * s0) / sin2phi;
}

}  // namespace detail

// (1/pi) * integral over [0, pi] of the uniform-component density for start
// vertex i; equals 1 - c_i.  Composite Simpson, 2^16 panels (the integrand is
// smooth: sin^2 phi >= (p-q)^2 > 0 for p != q, and constant 1 for p = q).
inline double uniform_tail_integral(const WalkParameters& params, int i) {
    if (i < 0) throw ValidationError("uniform_tail_integral: start vertex must be >= 0");
    constexpr int panels = 1 << 16;
    const double h = std::numbers::pi / (2 * panels);
    double odd = 0.0, even = 0.0;
    for (int j = 1; j < 2 * panels; ++j) {
        const double value = detail::tail_integrand(params, i, j * h);
        (j % 2 == 1 ? odd : even) += value;
    }
    const double ends =
        detail::tail_integrand(params, i, 0.0) + detail::tail_integrand(params, i, std::numbers::pi);
    return (h / 3.0) * (ends + 4.0 * odd + 2.0 * even) / std::numbers::pi;
}

struct GrowingStartReport {
    std::vector<int> sizes;
    std::vector<int> starts;
    std::vector<double> distances;  // Kolmogorov distance to pure U(0,1)
    bool decreasing = false;
    double final_distance = 0.0;
};

// Start vertex growing with n (rule(n) in [1, n]): the limit loses its atom,
// so measure distances to the pure uniform mixture across a size sweep.
inline GrowingStartReport growing_start_check(double p, const std::vector<int>& sizes,
                                              const std::function<int(int)>& rule,
                                              int grid_size = 99) {
    if (sizes.empty()) throw ValidationError("growing_start_check: empty size sweep");
    GrowingStartReport report;
    report.sizes = sizes;
    const LimitMixture uniform{0.0};
    for (int n : sizes) {
        const WalkParameters params(n, p);
        const int start = rule(n);
        if (start < 1 || start > n)
            throw ValidationError("growing_start_check: rule(" + std::to_string(n) +
                                  ") = " + std::to_string(start) + " outside [1, n]");
        report.starts.push_back(start);
        const TimeAveragedDistribution pbar =
            time_averaged_spectral(params, InitialSpec{start, ChiralityMode::MixedHalfHalf});
        report.distances.push_back(kolmogorov_distance(pbar, uniform, grid_size));
    }
    report.decreasing = true;
    for (std::size_t k = 1; k < report.distances.size(); ++k)
        report.decreasing = report.decreasing && report.distances[k] < report.distances[k - 1];
    report.final_distance = report.distances.back();
    return report;
}

}  // namespace pathwalk
