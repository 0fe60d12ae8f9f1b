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

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qchan/channels.hpp"
#include "qchan/info.hpp"
#include "qchan/random.hpp"
#include "qchan/semigroup.hpp"
#include "qchan/transforms.hpp"

namespace qchan {

// The release gate: every algebraic claim the library is built on, checked
// numerically at pinned tolerances over seeded sweeps. The CLI `suite` verb
// prints these rows as JSON lines; the acceptance binary aggregates them.

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::optional<double> tol_override;          // replaces the pinned tolerances
    std::optional<std::size_t> trials_override;  // replaces the pinned sweep lengths
    std::size_t memory_budget = 64;              // max composite dimension
};

namespace selftest_detail {

struct Family {
    const char* name;
    ComplexMatrix (*build)(std::size_t);
};

inline const Family kFamilies[] = {
    {"fourier", fourier_unitary},
    {"sine", sine_unitary},
    {"hartley", hartley_unitary},
};

inline double tol_of(const SuiteConfig& cfg, double pinned) {
    return cfg.tol_override.value_or(pinned);
}

inline std::size_t trials_of(const SuiteConfig& cfg, std::size_t pinned) {
    return cfg.trials_override.value_or(pinned);
}

inline std::string perm_label(const std::vector<std::size_t>& perm) {
    std::string s = "(";
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(perm[i]);
    }
    return s + ")";
}

inline std::vector<std::vector<std::size_t>> halves_partition(std::size_t n) {
    std::vector<std::size_t> lo, hi;
    for (std::size_t i = 0; i < n / 2; ++i) lo.push_back(i);
    for (std::size_t i = n / 2; i < n; ++i) hi.push_back(i);
    if (lo.empty()) return {hi};
    return {lo, hi};
}

inline std::vector<std::vector<std::size_t>> pair_partition(std::size_t n) {
    std::vector<std::vector<std::size_t>> blocks{{0, 1}};
    for (std::size_t i = 2; i < n; ++i) blocks.push_back({i});
    return blocks;
}

// Criteria 1 + 2: projection idempotency, trace preservation and the
// Pythagoras identity over the transform sweep.
inline void projection_sweep(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol_idem = tol_of(cfg, 1e-9);
    const double tol_trace = tol_of(cfg, 1e-10);
    const double tol_pyth = tol_of(cfg, 1e-8);
    const std::size_t trials = trials_of(cfg, 50);
    std::uint64_t stream = 1000;
    for (const Family& fam : kFamilies) {
        for (std::size_t n : {2u, 4u, 8u, 16u}) {
            const ComplexMatrix u = fam.build(n);
            const std::vector<std::pair<const char*, PreconditionerChannel>> channels = {
                {"rank_one", rank_one_preconditioner(u)},
                {"halves", block_preconditioner(u, halves_partition(n))},
            };
            for (const auto& [label, ch] : channels) {
                double idem = 0.0, trace_res = 0.0, pyth = 0.0;
                for (std::size_t t = 0; t < trials; ++t) {
                    auto rng = trial_engine(cfg.seed, stream++);
                    const ComplexMatrix a = random_matrix(rng, n);
                    const ComplexMatrix pa = preconditioner_apply(ch, a);
                    const double scale = std::max(1.0, frobenius_norm(a));
                    idem = std::max(idem,
                                    frobenius_norm(preconditioner_apply(ch, pa) - pa) / scale);
                    trace_res = std::max(trace_res, std::abs(trace(pa) - trace(a)));
                    const double lhs = std::pow(frobenius_norm(a - pa), 2);
                    const double rhs =
                        std::pow(frobenius_norm(a), 2) - std::pow(frobenius_norm(pa), 2);
                    pyth = std::max(pyth, std::abs(lhs - rhs) / std::max(1.0, lhs));
                }
                const std::string params =
                    std::string("family=") + fam.name + " n=" + std::to_string(n) +
                    " partition=" + label;
                out.push_back({"projection_idempotency", params, idem, tol_idem, idem <= tol_idem});
                out.push_back(
                    {"projection_trace", params, trace_res, tol_trace, trace_res <= tol_trace});
                out.push_back({"projection_pythagoras", params, pyth, tol_pyth, pyth <= tol_pyth});
            }
        }
    }
}

// The preconditioner is the orthogonal projection onto the
// pinched algebra, so it is self-adjoint for the Frobenius inner product.
inline void projection_self_adjointness(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol = tol_of(cfg, 1e-9);
    std::uint64_t stream = 2000;
    for (const Family& fam : kFamilies) {
        const std::size_t n = 6;
        const auto ch = block_preconditioner(fam.build(n), pair_partition(n));
        double worst = 0.0;
        for (std::size_t t = 0; t < trials_of(cfg, 20); ++t) {
            auto rng = trial_engine(cfg.seed, stream++);
            const ComplexMatrix a = random_matrix(rng, n);
            const ComplexMatrix b = random_matrix(rng, n);
            worst = std::max(worst, std::abs(frobenius_inner(preconditioner_apply(ch, a), b) -
                                             frobenius_inner(a, preconditioner_apply(ch, b))));
        }
        out.push_back({"projection_self_adjoint", std::string("family=") + fam.name, worst, tol,
                       worst <= tol});
    }
}

// Criterion 3: the direct formula, the structural Kraus form and the
// Choi-extracted Kraus form agree, with exact completeness.
inline void kraus_coherence(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol_routes = tol_of(cfg, 1e-8);
    const double tol_complete = tol_of(cfg, 1e-10);
    for (const Family& fam : kFamilies) {
        for (std::size_t n : {2u, 4u, 8u}) {
            for (const char* label : {"rank_one", "pair"}) {
                const ComplexMatrix u = fam.build(n);
                const PreconditionerChannel pc =
                    std::string(label) == "rank_one"
                        ? rank_one_preconditioner(u)
                        : block_preconditioner(u, pair_partition(n));
                const KrausChannel structural = kraus_from_preconditioner(pc);
                const KrausChannel extracted = kraus_from_choi(choi_matrix(structural));
                const double routes =
                    std::max(basis_distance(action_of(pc), action_of(structural)),
                             basis_distance(action_of(pc), action_of(extracted)));
                const double complete = structural.completeness_residual();
                const std::string params = std::string("family=") + fam.name +
                                           " n=" + std::to_string(n) + " partition=" + label;
                out.push_back({"kraus_route_agreement", params, routes, tol_routes,
                               routes <= tol_routes});
                out.push_back({"kraus_completeness", params, complete, tol_complete,
                               complete <= tol_complete});
            }
        }
    }
}

// Criterion 4: Choi positivity for constructed channels plus the transpose
// counterexample.
inline void choi_positivity(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol = tol_of(cfg, 1e-9);
    double worst_neg = 0.0;
    for (const Family& fam : kFamilies) {
        for (std::size_t n : {2u, 4u}) {
            const auto pc = block_preconditioner(fam.build(n), halves_partition(n));
            worst_neg = std::max(
                worst_neg, -min_eigenvalue(hermitian_part(choi_of_channel(Channel(pc)).mat)));
        }
    }
    std::uint64_t stream = 3000;
    for (std::size_t t = 0; t < trials_of(cfg, 10); ++t) {
        auto rng = trial_engine(cfg.seed, stream++);
        std::uniform_int_distribution<std::size_t> dims(2, 4);
        const std::size_t n = dims(rng);
        worst_neg = std::max(
            worst_neg, -min_eigenvalue(hermitian_part(choi_matrix(random_cptp_kraus(rng, n, 2)).mat)));
        worst_neg = std::max(
            worst_neg,
            -min_eigenvalue(hermitian_part(choi_of_channel(Channel(random_holevo(rng, n, 3))).mat)));
    }
    out.push_back({"choi_positivity", "constructed channels", std::max(0.0, worst_neg), tol,
                   worst_neg <= tol});

    const auto transpose_choi = choi_of_map(2, [](const ComplexMatrix& e) { return transpose(e); });
    const bool detected = !is_completely_positive(transpose_choi, tol);
    out.push_back({"choi_transpose_detected", "n=2", detected ? 0.0 : 1.0, 0.5, detected});
}

// Criterion 5: the stochastic matrix of the rank-one preconditioner form is
// the identity.
inline void stochastic_identity(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol = tol_of(cfg, 1e-12);
    for (const Family& fam : kFamilies) {
        for (std::size_t n : {2u, 4u, 8u}) {
            const StochasticMatrix a = stochastic_of(holevo_from_preconditioner(fam.build(n)));
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    worst = std::max(worst, std::abs(a(i, j) - (i == j ? 1.0 : 0.0)));
            const std::string params =
                std::string("family=") + fam.name + " n=" + std::to_string(n);
            out.push_back({"stochastic_identity", params, worst, tol, worst <= tol});
        }
    }
}

// Criterion 6: composition functoriality of the stochastic correspondence,
// action-level agreement, and density invariants of the composed channel.
inline void composition_functoriality(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol_stoch = tol_of(cfg, 1e-9);
    const double tol_density = tol_of(cfg, 1e-9);
    const std::size_t trials = trials_of(cfg, 100);
    double worst_stoch = 0.0, worst_density = 0.0, worst_action = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = trial_engine(cfg.seed, 4000 + t);
        std::uniform_int_distribution<std::size_t> dims(2, 4), sizes(1, 4);
        const std::size_t n = dims(rng);
        const HolevoChannel ch1 = random_holevo(rng, n, sizes(rng));
        const HolevoChannel ch2 = random_holevo(rng, n, sizes(rng));
        const HolevoChannel composed = holevo_compose(ch1, ch2);
        worst_stoch = std::max(
            worst_stoch, max_abs_diff(stochastic_of(composed), modified_product(ch1, ch2)));
        worst_action = std::max(
            worst_action,
            basis_distance(action_of(composed), compose_actions(action_of(ch1), action_of(ch2))));
        for (const DensityMatrix& l : composed.densities()) {
            const ComplexMatrix& m = l.mat();
            double res = frobenius_norm(m - adjoint(m));
            res = std::max(res, std::abs(trace(m).real() - 1.0));
            res = std::max(res, -std::min(0.0, min_eigenvalue(hermitian_part(m))));
            worst_density = std::max(worst_density, res);
        }
    }
    const std::string params = "trials=" + std::to_string(trials) + " n<=4 m<=4";
    out.push_back({"composition_stochastic_functor", params, worst_stoch, tol_stoch,
                   worst_stoch <= tol_stoch});
    out.push_back({"composition_action_agreement", params, worst_action, tol_stoch,
                   worst_action <= tol_stoch});
    out.push_back({"composition_density_invariants", params, worst_density, tol_density,
                   worst_density <= tol_density});
}

// Criterion 7: the steady-state idempotency characterization agrees with the
// operational oracle; disagreements carry their witness in the params.
inline void idempotency_characterization(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol = tol_of(cfg, 1e-8);
    const std::size_t trials = trials_of(cfg, 100);
    std::size_t disagreements = 0;
    std::string witness = "none";
    std::size_t applicable = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = trial_engine(cfg.seed, 5000 + t);
        std::uniform_int_distribution<std::size_t> dims(2, 3), sizes(1, 3);
        const HolevoChannel ch = random_holevo(rng, dims(rng), sizes(rng));
        const auto report = is_idempotent_holevo(ch, tol);
        if (report.status == HolevoIdempotencyStatus::Inapplicable) continue;
        ++applicable;
        const bool steady = report.status == HolevoIdempotencyStatus::Idempotent;
        const bool operational = is_idempotent_operational(Channel(ch), tol);
        if (steady != operational && disagreements++ == 0) {
            witness = "trial=" + std::to_string(t) +
                      " steady=" + (steady ? "true" : "false") +
                      " residual=" + std::to_string(report.max_residual);
        }
    }
    // Known idempotents exercise the accepting branch.
    for (const Family& fam : kFamilies) {
        const HolevoChannel ch = holevo_from_preconditioner(fam.build(3));
        const auto report = is_idempotent_holevo(ch, tol);
        ++applicable;
        if (report.status != HolevoIdempotencyStatus::Idempotent ||
            !is_idempotent_operational(Channel(ch), tol)) {
            ++disagreements;
            witness = std::string("family=") + fam.name;
        }
    }
    const std::string params = "trials=" + std::to_string(trials) +
                               " applicable=" + std::to_string(applicable) + " witness=" + witness;
    out.push_back({"idempotency_characterization", params, static_cast<double>(disagreements), 0.5,
                   disagreements == 0});
}

// Criterion 8: the explicit code reaches zero error at rate log2(J).
inline void capacity_codes(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol = tol_of(cfg, 1e-12);
    for (const Family& fam : kFamilies) {
        for (std::size_t message_count : {2u, 3u, 4u}) {
            for (std::size_t block : {1u, 2u, 3u}) {
                const ComplexMatrix u = fam.build(message_count);
                const Code code = capacity_achieving_code(u, message_count, block);
                const KrausChannel ch = kraus_from_preconditioner(rank_one_preconditioner(u));
                const double pe = code_error_probability(ch, code, cfg.memory_budget);
                const double rate_err =
                    std::abs(preconditioner_capacity(message_count) -
                             std::log2(static_cast<double>(message_count)));
                const std::string params = std::string("family=") + fam.name +
                                           " J=" + std::to_string(message_count) +
                                           " block=" + std::to_string(block);
                out.push_back({"capacity_zero_error", params, pe, tol, pe <= tol});
                out.push_back({"capacity_rate_exact", params, rate_err, 0.0, rate_err == 0.0});
            }
        }
    }
}

// Criterion 9: resource-destroying identities and the permutation-square
// dichotomy.
inline void resource_destroying(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol = tol_of(cfg, 1e-9);
    for (const Family& fam : kFamilies) {
        for (std::size_t n : {4u, 8u}) {
            const ComplexMatrix u = fam.build(n);
            const auto delta = action_of(rank_one_preconditioner(u));
            const auto phi = action_of(block_preconditioner(u, halves_partition(n)));
            const auto r = resource_destroying_check(delta, phi, tol);
            const double worst = std::max(r.absorb_left, r.absorb_right);
            const std::string params =
                std::string("family=") + fam.name + " n=" + std::to_string(n);
            out.push_back({"rdc_absorption", params, worst, tol, worst <= tol});
        }
    }
    for (std::size_t n : {2u, 3u, 4u}) {
        const ComplexMatrix u = fourier_unitary(n);
        const auto pinch = action_of(rank_one_preconditioner(u));
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            const auto shuffle = action_of(permutation_channel(u, perm));
            const double absorb =
                std::max(basis_distance(compose_actions(pinch, shuffle), shuffle),
                         basis_distance(compose_actions(shuffle, pinch), shuffle));
            const std::string params = "n=" + std::to_string(n) + " perm=" + perm_label(perm);
            out.push_back({"rdc_permutation_absorption", params, absorb, tol, absorb <= tol});

            std::vector<std::size_t> square(n);
            for (std::size_t i = 0; i < n; ++i) square[i] = perm[perm[i]];
            bool is_involution = true;
            for (std::size_t i = 0; i < n; ++i) is_involution = is_involution && square[i] == i;
            const double d = basis_distance(compose_actions(shuffle, shuffle), pinch);
            if (is_involution) {
                out.push_back({"permutation_square_is_projection", params, d, tol, d <= tol});
            } else {
                out.push_back({"permutation_square_differs", params, d, tol, d > tol});
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

// Criterion 10: entanglement fidelity values.
inline void fidelity_checks(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol_identity = tol_of(cfg, 1e-12);
    const double tol_examples = tol_of(cfg, 1e-10);
    double worst = 0.0;
    std::uint64_t stream = 6000;
    for (std::size_t t = 0; t < trials_of(cfg, 20); ++t) {
        auto rng = trial_engine(cfg.seed, stream++);
        std::uniform_int_distribution<std::size_t> dims(2, 4);
        const std::size_t n = dims(rng);
        worst = std::max(worst, std::abs(entanglement_fidelity(random_density(rng, n),
                                                               identity_channel(n)) -
                                         1.0));
    }
    out.push_back({"fidelity_identity", "random densities", worst, tol_identity,
                   worst <= tol_identity});

    const auto dephase = kraus_from_preconditioner(rank_one_preconditioner(ComplexMatrix::identity(2)));
    const DensityMatrix uniform(Complex(0.5) * ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}}));
    const DensityMatrix basis_state(ComplexMatrix::unit(2, 0, 0));
    std::mt19937_64 rng = trial_engine(cfg.seed, stream);
    const double ex1 = std::abs(entanglement_fidelity(random_density(rng, 3), identity_channel(3)) - 1.0);
    const double ex2 = std::abs(entanglement_fidelity(uniform, dephase) - 0.5);
    const double ex3 = std::abs(entanglement_fidelity(basis_state, dephase) - 1.0);
    const double worst_ex = std::max({ex1, ex2, ex3});
    out.push_back({"fidelity_examples", "identity/dephasing values", worst_ex, tol_examples,
                   worst_ex <= tol_examples});
}

// Criterion 11: the rank-one test accepts the rank-one form and rejects every
// blocked form, matching the structural verdict.
inline void rank_one_dichotomy(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol = tol_of(cfg, 1e-9);
    for (const Family& fam : kFamilies) {
        for (std::size_t n : {2u, 4u, 8u}) {
            const ComplexMatrix u = fam.build(n);
            const auto pinch = rank_one_preconditioner(u);
            const bool accepted = is_rank_one_kraus(kraus_from_preconditioner(pinch), tol) &&
                                  cq_structure_test(pinch) == CqVerdict::ClassicalQuantum;
            std::string params = std::string("family=") + fam.name + " n=" + std::to_string(n);
            out.push_back({"rank_one_accepts", params, accepted ? 0.0 : 1.0, 0.5, accepted});

            std::vector<std::pair<const char*, std::vector<std::vector<std::size_t>>>> blocked = {
                {"pair", pair_partition(n)},
                {"full", {std::vector<std::size_t>()}},
            };
            blocked[1].second[0].resize(n);
            std::iota(blocked[1].second[0].begin(), blocked[1].second[0].end(), 0);
            if (n >= 4) blocked.push_back({"halves", halves_partition(n)});
            for (const auto& [label, partition] : blocked) {
                const auto pc = block_preconditioner(u, partition);
                const bool rejected = !is_rank_one_kraus(kraus_from_preconditioner(pc), tol) &&
                                      cq_structure_test(pc) == CqVerdict::NotClassicalQuantum;
                out.push_back({"rank_one_rejects",
                               params + " partition=" + label,
                               rejected ? 0.0 : 1.0, 0.5, rejected});
            }
        }
    }
}

// Criterion 12 plus the reconstruction bound of the eigensolver.
inline void eigensolver_oracle(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol = tol_of(cfg, 1e-10);
    double worst = 0.0;
    const double vals[] = {-1.0, 0.0, 1.0};
    for (double a : vals)
        for (double d : vals)
            for (double re : vals)
                for (double im : vals) {
                    const auto m =
                        ComplexMatrix::from_rows({{a, Complex(re, im)}, {Complex(re, -im), d}});
                    const auto dec = hermitian_eig(m);
                    const double tr = a + d;
                    const double det = a * d - (re * re + im * im);
                    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
                    worst = std::max(worst, std::abs(dec.eigenvalues[0] - (0.5 * tr - disc)));
                    worst = std::max(worst, std::abs(dec.eigenvalues[1] - (0.5 * tr + disc)));
                }
    out.push_back({"eigensolver_oracle", "81 integer 2x2 Hermitian", worst, tol, worst <= tol});

    const double tol_rec = tol_of(cfg, 1e-9);
    double worst_rec = 0.0;
    std::uint64_t stream = 7000;
    for (std::size_t n : {4u, 16u, 32u}) {
        auto rng = trial_engine(cfg.seed, stream++);
        const ComplexMatrix h = random_hermitian(rng, n);
        const auto dec = hermitian_eig(h);
        ComplexMatrix lam(n);
        for (std::size_t i = 0; i < n; ++i) lam(i, i) = dec.eigenvalues[i];
        const double res = frobenius_norm(dec.eigenvectors * lam * adjoint(dec.eigenvectors) - h) /
                           std::max(1.0, frobenius_norm(h));
        worst_rec = std::max(worst_rec, res);
    }
    out.push_back({"eigensolver_reconstruction", "random Hermitian n<=32", worst_rec, tol_rec,
                   worst_rec <= tol_rec});
}

// Transform constructors stay unitary over the full desk-scale range.
inline void transform_unitarity(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
    const double tol = tol_of(cfg, 1e-9);
    for (const Family& fam : kFamilies) {
        double worst = 0.0;
        for (std::size_t n = 1; n <= 32; ++n) {
            const ComplexMatrix u = fam.build(n);
            const ComplexMatrix id = ComplexMatrix::identity(n);
            worst = std::max(worst, frobenius_norm(adjoint(u) * u - id));
            worst = std::max(worst, frobenius_norm(u * adjoint(u) - id));
        }
        out.push_back({"transform_unitarity", std::string("family=") + fam.name + " n<=32", worst,
                       tol, worst <= tol});
    }
}

}  // namespace selftest_detail

inline std::vector<CheckResult> run_invariant_suite(const SuiteConfig& cfg = {}) {
    std::vector<CheckResult> out;
    selftest_detail::projection_sweep(cfg, out);
    selftest_detail::projection_self_adjointness(cfg, out);
    selftest_detail::kraus_coherence(cfg, out);
    selftest_detail::choi_positivity(cfg, out);
    selftest_detail::stochastic_identity(cfg, out);
    selftest_detail::composition_functoriality(cfg, out);
    selftest_detail::idempotency_characterization(cfg, out);
    selftest_detail::capacity_codes(cfg, out);
    selftest_detail::resource_destroying(cfg, out);
    selftest_detail::fidelity_checks(cfg, out);
    selftest_detail::rank_one_dichotomy(cfg, out);
    selftest_detail::eigensolver_oracle(cfg, out);
    selftest_detail::transform_unitarity(cfg, out);
    std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) {
        return a.check != b.check ? a.check < b.check : a.params < b.params;
    });
    return out;
}

}  // namespace qchan
