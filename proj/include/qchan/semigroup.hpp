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

#include <string>
#include <vector>

#include "qchan/channels.hpp"
#include "qchan/matrix.hpp"

namespace qchan {

// --------------------------- stochastic matrices -----------------------------

/// Real nonnegative square matrix whose columns sum to one.
struct StochasticMatrix {
    std::size_t size = 0;
    std::vector<double> entries;  // row-major

    double operator()(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
    double& operator()(std::size_t i, std::size_t j) { return entries[i * size + j]; }
};

inline void validate_stochastic(const StochasticMatrix& a, double tol = kDefaultTol) {
    if (a.entries.size() != a.size * a.size) {
        throw std::invalid_argument("StochasticMatrix: entries.size() != size^2");
    }
    for (double v : a.entries) {
        if (!std::isfinite(v)) throw std::invalid_argument("StochasticMatrix: non-finite entry");
        if (v < -tol) throw std::invalid_argument("StochasticMatrix: negative entry");
    }
    for (std::size_t j = 0; j < a.size; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < a.size; ++i) col += a(i, j);
        if (std::abs(col - 1.0) > tol) {
            throw std::invalid_argument("StochasticMatrix: column does not sum to one");
        }
    }
}

inline void validate_probability_vector(const std::vector<double>& v, double tol = kDefaultTol) {
    double sum = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) throw std::invalid_argument("ProbabilityVector: non-finite entry");
        if (x < -tol) throw std::invalid_argument("ProbabilityVector: negative entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol) throw std::invalid_argument("ProbabilityVector: entries do not sum to one");
}

inline double max_abs_diff(const StochasticMatrix& a, const StochasticMatrix& b) {
    if (a.size != b.size) throw std::invalid_argument("max_abs_diff: size mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries.size(); ++k)
        worst = std::max(worst, std::abs(a.entries[k] - b.entries[k]));
    return worst;
}

/// The stochastic matrix of a Holevo channel: A[i][j] = Tr(F_i R_j). Columns
/// are probability vectors because the POVM resolves the identity.
inline StochasticMatrix stochastic_of(const HolevoChannel& ch) {
    const std::size_t m = ch.size();
    StochasticMatrix a{m, std::vector<double>(m * m)};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = trace(ch.povm()[i] * ch.densities()[j].mat()).real();
    return a;
}

/// Pairings M[i][k] = Tr(povm_i density_k); the rectangular building block of
/// the modified product.
inline std::vector<std::vector<double>> cross_stochastic(const std::vector<ComplexMatrix>& povm,
                                                         const std::vector<DensityMatrix>& densities) {
    std::vector<std::vector<double>> m(povm.size(), std::vector<double>(densities.size()));
    for (std::size_t i = 0; i < povm.size(); ++i)
        for (std::size_t k = 0; k < densities.size(); ++k) {
            if (povm[i].dim() != densities[k].dim()) {
                throw std::invalid_argument("cross_stochastic: dimension mismatch");
            }
            m[i][k] = trace(povm[i] * densities[k].mat()).real();
        }
    return m;
}

/// Stochastic matrix of ch1 after ch2 computed without composing the
/// channels: B[i][k] = Tr(H_i R_k) against C[k][j] = Tr(F_k S_j) with
/// ch1 = (F, R) and ch2 = (H, S).
inline StochasticMatrix modified_product(const HolevoChannel& ch1, const HolevoChannel& ch2) {
    if (ch1.dim() != ch2.dim()) throw std::invalid_argument("modified_product: dimension mismatch");
    const auto b = cross_stochastic(ch2.povm(), ch1.densities());      // m2 x m1
    const auto c = cross_stochastic(ch1.povm(), ch2.densities());      // m1 x m2
    const std::size_t m2 = ch2.size(), m1 = ch1.size();
    StochasticMatrix out{m2, std::vector<double>(m2 * m2, 0.0)};
    for (std::size_t i = 0; i < m2; ++i)
        for (std::size_t k = 0; k < m1; ++k)
            for (std::size_t j = 0; j < m2; ++j) out(i, j) += b[i][k] * c[k][j];
    return out;
}

/// Direct idempotency residual check A A = A.
inline bool is_idempotent_stochastic(const StochasticMatrix& a, double tol = kDefaultTol) {
    validate_stochastic(a, tol);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size; ++i)
        for (std::size_t j = 0; j < a.size; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.size; ++k) acc += a(i, k) * a(k, j);
            s += (acc - a(i, j)) * (acc - a(i, j));
        }
    return std::sqrt(s) <= tol;
}

// -------------------------- idempotency of channels --------------------------

/// Phi(Phi(E_ij)) = Phi(E_ij) on every matrix unit; linearity makes the basis
/// check sufficient.
inline bool is_idempotent_operational(const ChannelAction& ch, double tol = kDefaultTol) {
    return basis_distance(compose_actions(ch, ch), ch) <= tol;
}

inline bool is_idempotent_operational(const Channel& ch, double tol = kDefaultTol) {
    return is_idempotent_operational(channel_action(ch), tol);
}

/// Spanning set of n^2 density matrices for the Hermitian space: E_ii, the
/// symmetric pair states (E_ii + E_jj + E_ij + E_ji)/2 and the skew pair
/// states (E_ii + E_jj + i E_ji - i E_ij)/2.
inline std::vector<DensityMatrix> density_spanning_set(std::size_t n) {
    std::vector<DensityMatrix> set;
    set.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) set.emplace_back(ComplexMatrix::unit(n, i, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            ComplexMatrix sym(n);
            sym(i, i) = 0.5;
            sym(j, j) = 0.5;
            sym(i, j) = 0.5;
            sym(j, i) = 0.5;
            set.emplace_back(std::move(sym));
            ComplexMatrix skew(n);
            skew(i, i) = 0.5;
            skew(j, j) = 0.5;
            skew(i, j) = Complex(0.0, -0.5);
            skew(j, i) = Complex(0.0, 0.5);
            set.emplace_back(std::move(skew));
        }
    return set;
}

/// Numerical rank of the Gram matrix of the vectorized densities; the
/// steady-state characterization needs {R_k} linearly independent.
inline bool densities_linearly_independent(const std::vector<DensityMatrix>& densities,
                                           double tol = 1e-8) {
    const std::size_t m = densities.size();
    ComplexMatrix gram(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            gram(i, j) = frobenius_inner(densities[i].mat(), densities[j].mat());
    return numerical_rank(hermitian_part(gram), tol) == m;
}

enum class HolevoIdempotencyStatus { Idempotent, NotIdempotent, Inapplicable };

/// Steady-state test: true iff A(Phi) fixes every probability vector
/// (Tr(rho F_1), ..., Tr(rho F_m)) for rho in a spanning set of densities.
struct HolevoIdempotencyReport {
    HolevoIdempotencyStatus status = HolevoIdempotencyStatus::Inapplicable;
    double max_residual = 0.0;
    std::size_t worst_state = 0;  // index into density_spanning_set(dim)
};

inline HolevoIdempotencyReport is_idempotent_holevo(const HolevoChannel& ch,
                                                    double tol = kDefaultTol) {
    HolevoIdempotencyReport report;
    if (!densities_linearly_independent(ch.densities())) {
        report.status = HolevoIdempotencyStatus::Inapplicable;
        return report;
    }
    const StochasticMatrix a = stochastic_of(ch);
    const std::size_t m = ch.size();
    const auto states = density_spanning_set(ch.dim());
    for (std::size_t s = 0; s < states.size(); ++s) {
        std::vector<double> v(m);
        for (std::size_t k = 0; k < m; ++k)
            v[k] = trace(states[s].mat() * ch.povm()[k]).real();
        double resid = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double av = 0.0;
            for (std::size_t k = 0; k < m; ++k) av += a(i, k) * v[k];
            resid = std::max(resid, std::abs(av - v[i]));
        }
        if (resid > report.max_residual) {
            report.max_residual = resid;
            report.worst_state = s;
        }
    }
    report.status = report.max_residual <= tol ? HolevoIdempotencyStatus::Idempotent
                                               : HolevoIdempotencyStatus::NotIdempotent;
    return report;
}

// ------------------------- generalized inverse probe -------------------------

/// Residuals for a a† a = a, a† a a† = a†, and idempotency of a a† and a† a,
/// all measured on the matrix-unit basis.
struct GeneralizedInverseReport {
    double generalized_inverse_residual = 0.0;  // a a† a vs a
    double semi_inverse_residual = 0.0;         // a† a a† vs a†
    double a_adag_idempotency = 0.0;
    double adag_a_idempotency = 0.0;
    double tol = 0.0;
    bool generalized_inverse = false;
    bool semi_inverse = false;
};

inline GeneralizedInverseReport generalized_inverse_probe(const ChannelAction& a,
                                                          const ChannelAction& a_dagger,
                                                          double tol = kDefaultTol) {
    if (a.dim != a_dagger.dim) {
        throw std::invalid_argument("generalized_inverse_probe: dimension mismatch");
    }
    const ChannelAction a_ad = compose_actions(a, a_dagger);
    const ChannelAction ad_a = compose_actions(a_dagger, a);
    GeneralizedInverseReport r;
    r.tol = tol;
    r.generalized_inverse_residual = basis_distance(compose_actions(a, ad_a), a);
    r.semi_inverse_residual = basis_distance(compose_actions(a_dagger, a_ad), a_dagger);
    r.a_adag_idempotency = basis_distance(compose_actions(a_ad, a_ad), a_ad);
    r.adag_a_idempotency = basis_distance(compose_actions(ad_a, ad_a), ad_a);
    r.generalized_inverse = r.generalized_inverse_residual <= tol;
    r.semi_inverse = r.generalized_inverse && r.semi_inverse_residual <= tol;
    return r;
}

// ----------------------- resource-destroying identities ----------------------

/// Residuals of the three identities a resource-destroying idempotent delta
/// may satisfy against an encoding channel phi:
///   phi o delta = delta = delta o phi,
///   phi o delta = delta o phi o delta,
///   delta o phi = delta o phi o delta.
struct ResourceDestroyingReport {
    double absorb_left = 0.0;    // phi o delta vs delta
    double absorb_right = 0.0;   // delta o phi vs delta
    double sandwich_left = 0.0;  // phi o delta vs delta o phi o delta
    double sandwich_right = 0.0; // delta o phi vs delta o phi o delta
    double tol = 0.0;
    bool commuting_absorption = false;
    bool left_sandwich = false;
    bool right_sandwich = false;
};

inline ResourceDestroyingReport resource_destroying_check(const ChannelAction& delta,
                                                          const ChannelAction& phi,
                                                          double tol = kDefaultTol) {
    if (delta.dim != phi.dim) {
        throw std::invalid_argument("resource_destroying_check: dimension mismatch");
    }
    const ChannelAction phi_delta = compose_actions(phi, delta);
    const ChannelAction delta_phi = compose_actions(delta, phi);
    const ChannelAction sandwich = compose_actions(delta, phi_delta);
    ResourceDestroyingReport r;
    r.tol = tol;
    r.absorb_left = basis_distance(phi_delta, delta);
    r.absorb_right = basis_distance(delta_phi, delta);
    r.sandwich_left = basis_distance(phi_delta, sandwich);
    r.sandwich_right = basis_distance(delta_phi, sandwich);
    r.commuting_absorption = r.absorb_left <= tol && r.absorb_right <= tol;
    r.left_sandwich = r.sandwich_left <= tol;
    r.right_sandwich = r.sandwich_right <= tol;
    return r;
}

}  // namespace qchan
