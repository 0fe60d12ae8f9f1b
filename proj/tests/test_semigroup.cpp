// Copyright 2026 The qchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "qchan/random.hpp"
#include "qchan/semigroup.hpp"
#include "qchan/transforms.hpp"

using namespace qchan;

namespace {

HolevoChannel constant_channel(const DensityMatrix& sigma) {
    return HolevoChannel({ComplexMatrix::identity(sigma.dim())}, {sigma});
}

}  // namespace

TEST_CASE("stochastic_of") {
    SECTION("Holevo form of the rank-one preconditioner maps to the identity matrix") {
        for (const auto& u : {fourier_unitary(3), sine_unitary(4), hartley_unitary(2)}) {
            const auto a = stochastic_of(holevo_from_preconditioner(u));
            validate_stochastic(a, 1e-10);
            for (std::size_t i = 0; i < a.size; ++i)
                for (std::size_t j = 0; j < a.size; ++j)
                    REQUIRE(std::abs(a(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
        }
    }
    SECTION("constant channel maps to the 1x1 matrix (1)") {
        std::mt19937_64 rng(41);
        const auto a = stochastic_of(constant_channel(random_density(rng, 3)));
        REQUIRE(a.size == 1);
        REQUIRE(a(0, 0) == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("columns are probability vectors for random channels") {
        std::mt19937_64 rng(42);
        for (int t = 0; t < 10; ++t) {
            const auto a = stochastic_of(random_holevo(rng, 3, 3));
            for (std::size_t j = 0; j < 3; ++j) {
                std::vector<double> column(3);
                for (std::size_t i = 0; i < 3; ++i) column[i] = a(i, j);
                REQUIRE_NOTHROW(validate_probability_vector(column, 1e-10));
            }
        }
        std::vector<double> bad{0.5, 0.6};
        REQUIRE_THROWS_AS(validate_probability_vector(bad), std::invalid_argument);
    }
}

TEST_CASE("cross_stochastic") {
    std::mt19937_64 rng(43);

    SECTION("coordinate projections pair to the identity") {
        const auto ps = rank_one_projections(ComplexMatrix::identity(3));
        std::vector<DensityMatrix> densities;
        for (const auto& p : ps.projections) densities.emplace_back(p);
        const auto m = cross_stochastic(ps.projections, densities);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < 3; ++k)
                REQUIRE(std::abs(m[i][k] - (i == k ? 1.0 : 0.0)) <= 1e-14);
    }
    SECTION("identity POVM element pairs to a row of ones") {
        std::vector<DensityMatrix> densities{random_density(rng, 2), random_density(rng, 2)};
        const auto m = cross_stochastic({ComplexMatrix::identity(2)}, densities);
        REQUIRE(m.size() == 1);
        REQUIRE(m[0][0] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(m[0][1] == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("entries stay in [0, 1] for valid inputs") {
        const auto povm = random_povm(rng, 3, 4);
        std::vector<DensityMatrix> densities;
        for (int k = 0; k < 3; ++k) densities.push_back(random_density(rng, 3));
        for (const auto& row : cross_stochastic(povm, densities))
            for (double v : row) {
                REQUIRE(v >= -1e-10);
                REQUIRE(v <= 1.0 + 1e-10);
            }
    }
}

TEST_CASE("modified_product") {
    std::mt19937_64 rng(44);

    SECTION("two copies of the rank-one form multiply to the identity") {
        const auto hc = holevo_from_preconditioner(fourier_unitary(3));
        const auto prod = modified_product(hc, hc);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                REQUIRE(std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
    }
    SECTION("agrees with the composed channel's stochastic matrix") {
        for (int t = 0; t < 25; ++t) {
            auto rng_t = trial_engine(99, static_cast<std::uint64_t>(t));
            std::uniform_int_distribution<std::size_t> dims(2, 4);
            const std::size_t n = dims(rng_t), m1 = dims(rng_t), m2 = dims(rng_t);
            const auto ch1 = random_holevo(rng_t, n, m1);
            const auto ch2 = random_holevo(rng_t, n, m2);
            const auto direct = stochastic_of(holevo_compose(ch1, ch2));
            const auto factored = modified_product(ch1, ch2);
            REQUIRE(max_abs_diff(direct, factored) <= 1e-9);
        }
    }
    SECTION("composition with a constant channel gives a rank-one matrix") {
        const auto sigma = random_density(rng, 2);
        const auto ch1 = random_holevo(rng, 2, 3);
        const auto prod = modified_product(ch1, constant_channel(sigma));
        REQUIRE(prod.size == 1);
        REQUIRE(prod(0, 0) == Catch::Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("is_idempotent_stochastic") {
    SECTION("identity") {
        StochasticMatrix id{3, {1, 0, 0, 0, 1, 0, 0, 0, 1}};
        REQUIRE(is_idempotent_stochastic(id));
    }
    SECTION("rank-one column-constant matrix") {
        // Columns all equal to the same probability vector v: (v 1^t)^2 = v 1^t.
        StochasticMatrix a{3, {0.5, 0.5, 0.5, 0.3, 0.3, 0.3, 0.2, 0.2, 0.2}};
        REQUIRE(is_idempotent_stochastic(a));
    }
    SECTION("a swap is not idempotent") {
        StochasticMatrix swap{2, {0, 1, 1, 0}};
        REQUIRE_FALSE(is_idempotent_stochastic(swap));
    }
}

TEST_CASE("is_idempotent_operational") {
    SECTION("preconditioner channels are idempotent") {
        REQUIRE(is_idempotent_operational(Channel(rank_one_preconditioner(fourier_unitary(4)))));
        REQUIRE(is_idempotent_operational(
            Channel(block_preconditioner(sine_unitary(4), {{0, 2}, {1, 3}}))));
    }
    SECTION("a 3-cycle permutation channel is not") {
        const auto ch = permutation_channel(hartley_unitary(3), {1, 2, 0});
        REQUIRE_FALSE(is_idempotent_operational(Channel(ch)));
    }
}

TEST_CASE("is_idempotent_holevo") {
    std::mt19937_64 rng(45);

    SECTION("Holevo form of the rank-one preconditioner is idempotent with a tiny residual") {
        const auto report = is_idempotent_holevo(holevo_from_preconditioner(sine_unitary(3)));
        REQUIRE(report.status == HolevoIdempotencyStatus::Idempotent);
        REQUIRE(report.max_residual <= 1e-12);
    }
    SECTION("constant channel is idempotent") {
        const auto report = is_idempotent_holevo(constant_channel(random_density(rng, 2)));
        REQUIRE(report.status == HolevoIdempotencyStatus::Idempotent);
    }
    SECTION("agrees with the operational oracle on random channels") {
        for (int t = 0; t < 50; ++t) {
            auto rng_t = trial_engine(300, static_cast<std::uint64_t>(t));
            std::uniform_int_distribution<std::size_t> dims(2, 3);
            const std::size_t n = dims(rng_t);
            std::uniform_int_distribution<std::size_t> sizes(1, 3);
            const auto ch = random_holevo(rng_t, n, sizes(rng_t));
            const auto report = is_idempotent_holevo(ch, 1e-8);
            if (report.status == HolevoIdempotencyStatus::Inapplicable) continue;
            const bool operational = is_idempotent_operational(Channel(ch), 1e-8);
            REQUIRE((report.status == HolevoIdempotencyStatus::Idempotent) == operational);
        }
    }
    SECTION("linearly dependent densities are reported as inapplicable") {
        std::vector<ComplexMatrix> povm{Complex(0.5) * ComplexMatrix::identity(2),
                                        Complex(0.5) * ComplexMatrix::identity(2)};
        const auto sigma = random_density(rng, 2);
        std::vector<DensityMatrix> densities{sigma, sigma};
        const auto report = is_idempotent_holevo(HolevoChannel(povm, densities));
        REQUIRE(report.status == HolevoIdempotencyStatus::Inapplicable);
    }
}

TEST_CASE("generalized_inverse_probe") {
    SECTION("idempotents are their own generalized inverse") {
        const auto p = action_of(rank_one_preconditioner(fourier_unitary(3)));
        const auto r = generalized_inverse_probe(p, p);
        REQUIRE(r.generalized_inverse);
        REQUIRE(r.semi_inverse);
        REQUIRE(r.a_adag_idempotency <= 1e-10);
        REQUIRE(r.adag_a_idempotency <= 1e-10);
    }
    SECTION("permutation channels invert through the inverse permutation") {
        const auto u = sine_unitary(4);
        const std::vector<std::size_t> s{2, 0, 3, 1};
        std::vector<std::size_t> s_inv(4);
        for (std::size_t j = 0; j < 4; ++j) s_inv[s[j]] = j;
        const auto a = action_of(permutation_channel(u, s));
        const auto a_dag = action_of(permutation_channel(u, s_inv));
        const auto r = generalized_inverse_probe(a, a_dag);
        REQUIRE(r.generalized_inverse);
        REQUIRE(r.semi_inverse);
    }
    SECTION("a constant channel absorbs through the identity channel") {
        std::mt19937_64 rng(46);
        const auto sigma = random_density(rng, 2);
        const auto a = action_of(constant_channel(sigma));
        const auto id = action_of(identity_channel(2));
        const auto r = generalized_inverse_probe(a, id);
        REQUIRE(r.generalized_inverse);
    }
}

TEST_CASE("resource_destroying_check") {
    SECTION("the rank-one pinching against the refining block preconditioner satisfies absorption") {
        const auto u = hartley_unitary(4);
        const auto delta = action_of(rank_one_preconditioner(u));
        const auto phi = action_of(block_preconditioner(u, {{0, 1}, {2, 3}}));
        const auto r = resource_destroying_check(delta, phi);
        REQUIRE(r.commuting_absorption);
        REQUIRE(r.absorb_left <= 1e-10);
        REQUIRE(r.absorb_right <= 1e-10);
        REQUIRE(r.left_sandwich);
        REQUIRE(r.right_sandwich);
    }
    SECTION("identity against identity satisfies everything") {
        const auto id = action_of(identity_channel(3));
        const auto r = resource_destroying_check(id, id);
        REQUIRE(r.commuting_absorption);
        REQUIRE(r.left_sandwich);
        REQUIRE(r.right_sandwich);
    }
    SECTION("permutation channels commute with the rank-one preconditioner into the permutation itself") {
        const auto u = fourier_unitary(3);
        const auto delta = action_of(rank_one_preconditioner(u));
        const auto phi = action_of(permutation_channel(u, {2, 0, 1}));
        const auto phi_delta = compose_actions(phi, delta);
        const auto delta_phi = compose_actions(delta, phi);
        REQUIRE(basis_distance(phi_delta, phi) <= 1e-10);
        REQUIRE(basis_distance(delta_phi, phi) <= 1e-10);
        // Against a non-idempotent phi the absorption identities fail.
        const auto r = resource_destroying_check(delta, phi);
        REQUIRE_FALSE(r.commuting_absorption);
    }
}

TEST_CASE("density_spanning_set") {
    SECTION("members are valid densities and span the Hermitian space") {
        const auto set = density_spanning_set(3);
        REQUIRE(set.size() == 9);
        REQUIRE(densities_linearly_independent(set));
    }
}
