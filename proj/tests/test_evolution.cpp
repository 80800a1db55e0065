#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "pathwalk/evolution.hpp"
#include "support.hpp"

using namespace pathwalk;
using Catch::Matchers::WithinAbs;

TEST_CASE("coin matrix is a reflection") {
    for (double p : {0.1, 0.3, 0.5, 0.9}) {
        const CoinSpec g = CoinSpec::for_parameters(WalkParameters(2, p));
        CHECK_THAT(g.ll, WithinAbs(1.0 - 2.0 * p, 1e-15));
        CHECK_THAT(g.lr, WithinAbs(2.0 * std::sqrt(p * (1.0 - p)), 1e-15));
        // G^2 = I
        CHECK_THAT(g.ll * g.ll + g.lr * g.lr, WithinAbs(1.0, 1e-15));
    }
}

TEST_CASE("coin action") {
    const WalkParameters half(2, 0.5);
    const EvolutionKernel kernel(half);

    WalkState s = basis_state(half, {0, ChiralityMode::FixedR}, Chirality::R);
    WalkState c = kernel.apply_coin(s);
    CHECK(testsupport::max_abs_diff(c, s) == 0.0);  // boundary amplitude untouched

    s = basis_state(half, {3, ChiralityMode::FixedL}, Chirality::L);
    c = kernel.apply_coin(s);
    CHECK(testsupport::max_abs_diff(c, s) == 0.0);

    // p = q: G swaps the chirality pair
    s = basis_state(half, {1, ChiralityMode::MixedHalfHalf}, Chirality::L);
    c = kernel.apply_coin(s);
    CHECK_THAT(std::abs(c.amplitudes[2] - 1.0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(c.amplitudes[1]), WithinAbs(0.0, 1e-15));

    const WalkParameters biased(2, 0.3);
    const EvolutionKernel kb(biased);
    s = basis_state(biased, {1, ChiralityMode::MixedHalfHalf}, Chirality::L);
    c = kb.apply_coin(s);
    CHECK_THAT(std::abs(c.amplitudes[1] - 0.4), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(c.amplitudes[2] - 2.0 * std::sqrt(0.21)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(c.norm(), WithinAbs(1.0, 1e-14));
}

TEST_CASE("shift action") {
    const WalkParameters params(2, 0.3);
    const EvolutionKernel kernel(params);

    WalkState s = basis_state(params, {0, ChiralityMode::FixedR}, Chirality::R);
    WalkState t = kernel.apply_shift(s);
    CHECK(t.amplitudes[basis_index(params, 1, Chirality::L)] == Complex{1.0, 0.0});

    s = basis_state(params, {3, ChiralityMode::FixedL}, Chirality::L);
    t = kernel.apply_shift(s);
    CHECK(t.amplitudes[basis_index(params, 2, Chirality::R)] == Complex{1.0, 0.0});

    // S is an involutive permutation
    std::mt19937 rng(11);
    s = testsupport::random_unit_state(params, rng);
    t = kernel.apply_shift(kernel.apply_shift(s));
    CHECK(testsupport::max_abs_diff(t, s) == 0.0);
}

TEST_CASE("single steps") {
    const WalkParameters half(2, 0.5);
    const EvolutionKernel kernel(half);

    WalkState s = kernel.step(basis_state(half, {0, ChiralityMode::FixedR}, Chirality::R));
    CHECK_THAT(std::abs(s.amplitudes[basis_index(half, 1, Chirality::L)] - 1.0),
               WithinAbs(0.0, 1e-15));

    // p = q: coin swaps (1,L) -> (1,R), shift carries it to (2,L)
    s = kernel.step(basis_state(half, {1, ChiralityMode::MixedHalfHalf}, Chirality::L));
    CHECK_THAT(std::abs(s.amplitudes[basis_index(half, 2, Chirality::L)] - 1.0),
               WithinAbs(0.0, 1e-15));

    std::mt19937 rng(23);
    for (double p : {0.2, 0.5, 0.8}) {
        const WalkParameters params(7, p);
        const EvolutionKernel k(params);
        for (int rep = 0; rep < 10; ++rep) {
            const WalkState psi = testsupport::random_unit_state(params, rng);
            REQUIRE_THAT(k.step(psi).norm(), WithinAbs(1.0, 1e-14));
        }
    }
}

TEST_CASE("evolve") {
    const WalkParameters params(2, 0.5);
    const EvolutionKernel kernel(params);
    std::mt19937 rng(5);
    const WalkState psi = testsupport::random_unit_state(params, rng);
    CHECK(testsupport::max_abs_diff(kernel.evolve(psi, 0), psi) == 0.0);
    CHECK_THROWS_AS(kernel.evolve(psi, -1), ValidationError);

    const std::vector<double> pmf = kernel.pmf_at_time({0, ChiralityMode::FixedR}, 1);
    CHECK(testsupport::max_abs_diff(pmf, {0.0, 1.0, 0.0, 0.0}) < 1e-15);

    // norm drift stays at rounding level over many steps
    const WalkParameters big(16, 0.3);
    const EvolutionKernel kb(big);
    std::mt19937 rng2(17);
    WalkState state = testsupport::random_unit_state(big, rng2);
    state = kb.evolve(std::move(state), 10000);
    CHECK(std::abs(state.norm() - 1.0) < 1e-10);
}

TEST_CASE("pmf at time") {
    const WalkParameters params(2, 0.3);
    const EvolutionKernel kernel(params);

    std::vector<double> pmf = kernel.pmf_at_time({0, ChiralityMode::FixedR}, 0);
    CHECK(pmf[0] == 1.0);

    // one step from |1,L>: (q-p)^2 lands at 0, 4pq at 2
    pmf = kernel.pmf_at_time({1, ChiralityMode::FixedL}, 1);
    CHECK_THAT(pmf[0], WithinAbs(0.16, 1e-15));
    CHECK_THAT(pmf[1], WithinAbs(0.0, 1e-16));
    CHECK_THAT(pmf[2], WithinAbs(0.84, 1e-15));
    CHECK_THAT(pmf[3], WithinAbs(0.0, 1e-16));

    for (int t : {0, 1, 5, 40}) {
        pmf = kernel.pmf_at_time({1, ChiralityMode::MixedHalfHalf}, t);
        double total = 0.0;
        for (double x : pmf) total += x;
        REQUIRE_THAT(total, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("dense one-step matrix") {
    const WalkParameters params(1, 0.5);
    const EvolutionKernel kernel(params);
    const std::vector<WalkState> u = kernel.unitary_matrix();  // validates U^dag U = I
    REQUIRE(u.size() == 4);
    // at p = q and n = 1 every column is a basis vector up to sign
    for (const WalkState& col : u) {
        int nonzero = 0;
        for (const Complex& z : col.amplitudes) {
            if (std::abs(z) > 1e-15) {
                ++nonzero;
                REQUIRE_THAT(std::abs(std::abs(z) - 1.0), WithinAbs(0.0, 1e-15));
            }
        }
        REQUIRE(nonzero == 1);
    }

    CHECK_THROWS_AS(EvolutionKernel(WalkParameters(9, 0.4)).unitary_matrix(8), ValidationError);

    std::mt19937 rng(31);
    for (double p : {0.25, 0.6}) {
        const WalkParameters pr(5, p);
        const EvolutionKernel k(pr);
        const std::vector<WalkState> m = k.unitary_matrix();
        for (int rep = 0; rep < 8; ++rep) {
            const WalkState psi = testsupport::random_unit_state(pr, rng);
            REQUIRE(testsupport::max_abs_diff(testsupport::dense_apply(m, psi), k.step(psi)) <
                    1e-13);
        }
    }
}

TEST_CASE("mirror symmetry of distributions") {
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> pick_n(1, 16);
    std::uniform_real_distribution<double> pick_p(0.05, 0.95);
    std::uniform_int_distribution<int> pick_t(0, 50);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = pick_n(rng);
        const double p = pick_p(rng);
        const int i = std::uniform_int_distribution<int>(0, n + 1)(rng);
        const int t = pick_t(rng);
        Chirality branch = std::bernoulli_distribution(0.5)(rng) ? Chirality::L : Chirality::R;
        if (i == 0) branch = Chirality::R;
        if (i == n + 1) branch = Chirality::L;

        const WalkParameters params(n, p);
        const WalkParameters mirror = params.mirrored();
        const ChiralityMode mode = branch == Chirality::L ? ChiralityMode::FixedL
                                                          : ChiralityMode::FixedR;
        const ChiralityMode mode_m = branch == Chirality::L ? ChiralityMode::FixedR
                                                            : ChiralityMode::FixedL;
        const std::vector<double> d =
            EvolutionKernel(params).pmf_at_time({i, mode}, t);
        std::vector<double> dm =
            EvolutionKernel(mirror).pmf_at_time({n + 1 - i, mode_m}, t);
        std::reverse(dm.begin(), dm.end());
        REQUIRE(testsupport::max_abs_diff(d, dm) < 1e-12);
    }
}

TEST_CASE("parity of the support") {
    const WalkParameters params(9, 0.35);
    const EvolutionKernel kernel(params);
    for (int i : {0, 3, 6, 10}) {
        const ChiralityMode mode = i == 0              ? ChiralityMode::FixedR
                                   : i == params.n + 1 ? ChiralityMode::FixedL
                                                       : ChiralityMode::MixedHalfHalf;
        for (int t : {0, 1, 2, 7, 20}) {
            const std::vector<double> pmf = kernel.pmf_at_time({i, mode}, t);
            for (int x = 0; x <= params.n + 1; ++x)
                if ((x + i + t) % 2 == 1) REQUIRE(pmf[x] == 0.0);
        }
    }
}
