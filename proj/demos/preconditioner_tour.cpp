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

// Tour of one preconditioner channel: build it from a Hartley unitary, check
// the channel axioms, and look at its Kraus and Choi representations.

#include <cstdio>

#include "qchan/channels.hpp"
#include "qchan/info.hpp"
#include "qchan/transforms.hpp"

int main() {
    using namespace qchan;

    const std::size_t n = 4;
    const ComplexMatrix u = hartley_unitary(n);
    const PreconditionerChannel ch = block_preconditioner(u, {{0, 1}, {2, 3}});

    std::printf("channel axioms for the blocked Hartley preconditioner (n = %zu):\n", n);
    for (const CheckResult& r : verify_channel_axioms(Channel(ch))) {
        std::printf("  %-22s residual %.3e  %s\n", r.check.c_str(), r.residual,
                    r.pass ? "ok" : "FAILED");
    }

    const KrausChannel kraus = kraus_from_preconditioner(ch);
    std::printf("\nstructural Kraus form: %zu operators, completeness residual %.3e\n",
                kraus.ops().size(), kraus.completeness_residual());

    const KrausChannel minimal = kraus_from_choi(choi_matrix(kraus));
    std::printf("Choi-extracted form:   %zu operators (Choi rank)\n", minimal.ops().size());

    std::printf("rank-one Kraus test:   %s\n",
                is_rank_one_kraus(kraus) ? "rank one (entanglement breaking)"
                                         : "has a block of rank >= 2");

    const auto pinching_channel = rank_one_preconditioner(u);
    std::printf("rank-one pinching:     %s\n",
                is_rank_one_kraus(kraus_from_preconditioner(pinching_channel)) ? "rank one (entanglement breaking)"
                                                                  : "unexpected");
    return 0;
}
