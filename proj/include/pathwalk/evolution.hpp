#pragma once

// Single-step evolution U = S C of the coined walk and its iterates.
//
// C applies the 2x2 reflection coin G = 2|phi><phi| - I (|phi> = sqrt(q)|L> +
// sqrt(p)|R>) at every interior vertex and leaves the two boundary amplitudes
// untouched.  S maps (i,R) -> (i+1,L) and (i,L) -> (i-1,R); in the canonical
// order that is exactly a swap of the amplitude pairs (2j, 2j+1), so one step
// is O(n) and needs no matrix.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pathwalk/errors.hpp"
#include "pathwalk/walk.hpp"

namespace pathwalk {

struct CoinSpec {
    double ll, lr;  // G = ((ll, lr), (lr, -ll)); ll = q - p, lr = 2 sqrt(pq)

    static CoinSpec for_parameters(const WalkParameters& params) {
        return CoinSpec{params.q - params.p, 2.0 * std::sqrt(params.p * params.q)};
    }
};

class EvolutionKernel {
public:
    explicit EvolutionKernel(const WalkParameters& params)
        : params_(params), coin_(CoinSpec::for_parameters(params)) {}

    const WalkParameters& parameters() const { return params_; }
    const CoinSpec& coin() const { return coin_; }

    void apply_coin_inplace(WalkState& state) const {
        check_dim(state);
        const int n = params_.n;
        Complex* amp = state.amplitudes.data();
        for (int v = 1; v <= n; ++v) {
            const Complex l = amp[2 * v - 1];
            const Complex r = amp[2 * v];
            amp[2 * v - 1] = coin_.ll * l + coin_.lr * r;
            amp[2 * v] = coin_.lr * l - coin_.ll * r;
        }
    }

    void apply_shift_inplace(WalkState& state) const {
        check_dim(state);
        Complex* amp = state.amplitudes.data();
        for (int j = 0; j <= params_.n; ++j) std::swap(amp[2 * j], amp[2 * j + 1]);
    }

    void step_inplace(WalkState& state) const {
        apply_coin_inplace(state);
        apply_shift_inplace(state);
    }

    WalkState apply_coin(WalkState state) const {
        apply_coin_inplace(state);
        return state;
    }

    WalkState apply_shift(WalkState state) const {
        apply_shift_inplace(state);
        return state;
    }

    WalkState step(WalkState state) const {
        step_inplace(state);
        return state;
    }

    WalkState evolve(WalkState state, std::int64_t t) const {
        if (t < 0) throw ValidationError("evolve: step count must be nonnegative");
        for (std::int64_t i = 0; i < t; ++i) step_inplace(state);
        return state;
    }

    // Position distribution at time t, averaged over the spec's branches.
    std::vector<double> pmf_at_time(const InitialSpec& spec, std::int64_t t) const {
        validate_initial_spec(params_, spec);
        const std::vector<Chirality> branches = branches_of(spec);
        const double weight = 1.0 / static_cast<double>(branches.size());
        std::vector<double> pmf(params_.vertex_count(), 0.0);
        for (Chirality branch : branches) {
            WalkState state = evolve(basis_state(params_, spec, branch), t);
            const std::vector<double> dist = position_distribution(params_, state);
            for (int x = 0; x < params_.vertex_count(); ++x) pmf[x] += weight * dist[x];
        }
        return pmf;
    }

    // Dense one-step matrix, column k = step(e_k); oracle use only.  Verifies
    // U^dag U = I to 1e-12 before returning.
    std::vector<WalkState> unitary_matrix(int dense_cap = 512) const {
        if (params_.n > dense_cap)
            throw ValidationError("unitary_matrix: n=" + std::to_string(params_.n) +
                                  " exceeds the dense cap " + std::to_string(dense_cap));
        const int d = params_.state_dim();
        std::vector<WalkState> cols;
        cols.reserve(d);
        for (int k = 0; k < d; ++k) {
            WalkState e(d);
            e.amplitudes[k] = Complex{1.0, 0.0};
            cols.push_back(step(std::move(e)));
        }
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j) {
                Complex dot{0.0, 0.0};
                for (int r = 0; r < d; ++r)
                    dot += std::conj(cols[i].amplitudes[r]) * cols[j].amplitudes[r];
                const double expected = (i == j) ? 1.0 : 0.0;
                if (std::abs(dot - expected) > 1e-12)
                    throw ConsistencyError("unitary_matrix: U^dag U deviates from identity at (" +
                                           std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
        return cols;
    }

private:
    void check_dim(const WalkState& state) const {
        if (state.dim() != params_.state_dim())
            throw ValidationError("EvolutionKernel: state has length " +
                                  std::to_string(state.dim()) + ", expected " +
                                  std::to_string(params_.state_dim()));
    }

    WalkParameters params_;
    CoinSpec coin_;
};

}  // namespace pathwalk
