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

// Walk through the semigroup picture: the stochastic matrix of a
// measure-and-prepare channel, composition as a matrix product, idempotency
// through steady states, and the zero-error code of the rank-one channel.

#include <cstdio>

#include "qchan/info.hpp"
#include "qchan/random.hpp"
#include "qchan/semigroup.hpp"
#include "qchan/transforms.hpp"

int main() {
    using namespace qchan;

    const ComplexMatrix u = fourier_unitary(3);
    const HolevoChannel pinching_channel = holevo_from_preconditioner(u);

    const StochasticMatrix a = stochastic_of(pinching_channel);
    std::printf("stochastic matrix of the rank-one channel (identity expected):\n");
    for (std::size_t i = 0; i < a.size; ++i) {
        std::printf(" ");
        for (std::size_t j = 0; j < a.size; ++j) std::printf(" %7.4f", a(i, j));
        std::printf("\n");
    }

    std::mt19937_64 rng(2);
    const HolevoChannel other = random_holevo(rng, 3, 3);
    const double functor =
        max_abs_diff(stochastic_of(holevo_compose(pinching_channel, other)), modified_product(pinching_channel, other));
    std::printf("\ncomposition vs modified product: max entry difference %.3e\n", functor);

    const auto report = is_idempotent_holevo(pinching_channel);
    std::printf("steady-state idempotency: %s (max residual %.3e)\n",
                report.status == HolevoIdempotencyStatus::Idempotent ? "idempotent"
                                                                     : "not idempotent",
                report.max_residual);

    const Code code = capacity_achieving_code(u, 3, 2);
    const double pe =
        code_error_probability(kraus_from_preconditioner(rank_one_preconditioner(u)), code);
    std::printf("zero-error code, J = 3, block 2: error probability %.3e at rate %.3f bits\n", pe,
                preconditioner_capacity(3));
    return 0;
}
