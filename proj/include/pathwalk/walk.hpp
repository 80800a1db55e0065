#pragma once

// Core model types for the coined walk on the path with n interior vertices
// (vertices 0..n+1, reflecting ends). The walker state lives on the 2n+2
// admissible (vertex, chirality) pairs; (0,L) and (n+1,R) do not exist.
//
// Canonical basis order, used by every module and file format:
//   (0,R), (1,L), (1,R), ..., (n,L), (n,R), (n+1,L)

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "pathwalk/errors.hpp"

namespace pathwalk {

using Complex = std::complex<double>;

enum class Chirality { L, R };

inline Chirality flipped(Chirality c) {
    return c == Chirality::L ? Chirality::R : Chirality::L;
}

struct WalkParameters {
    int n;     // interior vertex count; the path has n+2 vertices
    double p;  // right-step probability, 0 < p < 1
    double q;  // 1 - p

    WalkParameters(int n_, double p_) : n(n_), p(p_), q(1.0 - p_) {
        if (n_ < 1)
            throw ValidationError("WalkParameters: n must be >= 1, got " + std::to_string(n_));
        if (!(p_ > 0.0) || !(p_ < 1.0))
            throw ValidationError("WalkParameters: p must lie in (0,1), got " + std::to_string(p_));
    }

    int vertex_count() const { return n + 2; }
    int state_dim() const { return 2 * n + 2; }

    WalkParameters mirrored() const { return WalkParameters(n, q); }
};

struct BasisIndex {
    int vertex;
    Chirality chirality;
};

inline bool is_admissible(const WalkParameters& params, int vertex, Chirality chirality) {
    if (vertex < 0 || vertex > params.n + 1) return false;
    if (vertex == 0 && chirality == Chirality::L) return false;
    if (vertex == params.n + 1 && chirality == Chirality::R) return false;
    return true;
}

// Offset of (vertex, chirality) in the canonical order; bijective onto [0, 2n+2).
inline int basis_index(const WalkParameters& params, int vertex, Chirality chirality) {
    if (!is_admissible(params, vertex, chirality))
        throw ValidationError("basis_index: inadmissible pair (vertex=" + std::to_string(vertex) +
                              ", " + (chirality == Chirality::L ? "L" : "R") + ") for n=" +
                              std::to_string(params.n));
    if (vertex == 0) return 0;
    if (vertex == params.n + 1) return 2 * params.n + 1;
    return chirality == Chirality::L ? 2 * vertex - 1 : 2 * vertex;
}

// Inverse of basis_index.
inline BasisIndex basis_at(const WalkParameters& params, int offset) {
    if (offset < 0 || offset >= params.state_dim())
        throw ValidationError("basis_at: offset " + std::to_string(offset) + " out of range");
    if (offset == 0) return {0, Chirality::R};
    if (offset == 2 * params.n + 1) return {params.n + 1, Chirality::L};
    return (offset % 2 == 1) ? BasisIndex{(offset + 1) / 2, Chirality::L}
                             : BasisIndex{offset / 2, Chirality::R};
}

struct WalkState {
    std::vector<Complex> amplitudes;  // canonical order, length 2n+2

    WalkState() = default;
    explicit WalkState(int dim) : amplitudes(dim, Complex{0.0, 0.0}) {}

    int dim() const { return static_cast<int>(amplitudes.size()); }

    double norm() const {
        double s = 0.0;
        for (const Complex& a : amplitudes) s += std::norm(a);
        return std::sqrt(s);
    }
};

enum class ChiralityMode { FixedL, FixedR, MixedHalfHalf };

struct InitialSpec {
    int start_vertex;
    ChiralityMode mode;
};

// Boundary starts force a unique branch; MixedHalfHalf is interior-only.
inline void validate_initial_spec(const WalkParameters& params, const InitialSpec& spec) {
    if (spec.start_vertex < 0 || spec.start_vertex > params.n + 1)
        throw ValidationError("InitialSpec: start vertex " + std::to_string(spec.start_vertex) +
                              " outside [0," + std::to_string(params.n + 1) + "]");
    if (spec.start_vertex == 0 && spec.mode != ChiralityMode::FixedR)
        throw ValidationError("InitialSpec: start vertex 0 admits only the R chirality");
    if (spec.start_vertex == params.n + 1 && spec.mode != ChiralityMode::FixedL)
        throw ValidationError("InitialSpec: start vertex n+1 admits only the L chirality");
}

// The chirality branches the spec spans (one for fixed modes, two for mixed).
inline std::vector<Chirality> branches_of(const InitialSpec& spec) {
    switch (spec.mode) {
        case ChiralityMode::FixedL: return {Chirality::L};
        case ChiralityMode::FixedR: return {Chirality::R};
        case ChiralityMode::MixedHalfHalf: return {Chirality::L, Chirality::R};
    }
    return {};
}

// Unit basis vector |start_vertex, branch> for one branch of the spec.
inline WalkState basis_state(const WalkParameters& params, const InitialSpec& spec,
                             Chirality branch) {
    validate_initial_spec(params, spec);
    bool branch_ok = false;
    for (Chirality c : branches_of(spec)) branch_ok = branch_ok || (c == branch);
    if (!branch_ok)
        throw ValidationError("basis_state: branch inconsistent with the initial spec");
    WalkState state(params.state_dim());
    state.amplitudes[basis_index(params, spec.start_vertex, branch)] = Complex{1.0, 0.0};
    return state;
}

// Per-vertex probabilities |<x,L|psi>|^2 + |<x,R|psi>|^2 (missing pairs omitted).
inline std::vector<double> position_distribution(const WalkParameters& params,
                                                 const WalkState& state) {
    if (state.dim() != params.state_dim())
        throw ValidationError("position_distribution: state has length " +
                              std::to_string(state.dim()) + ", expected " +
                              std::to_string(params.state_dim()));
    const int n = params.n;
    std::vector<double> prob(n + 2, 0.0);
    prob[0] = std::norm(state.amplitudes[0]);
    for (int v = 1; v <= n; ++v)
        prob[v] = std::norm(state.amplitudes[2 * v - 1]) + std::norm(state.amplitudes[2 * v]);
    prob[n + 1] = std::norm(state.amplitudes[2 * n + 1]);
    return prob;
}

}  // namespace pathwalk
