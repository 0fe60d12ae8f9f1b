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

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qchan/matrix.hpp"
#include "qchan/transforms.hpp"

namespace qchan {

// ------------------------------- pinchings ----------------------------------

/// Pinching map A -> sum_k P_k A P_k for a validated projection set.
struct PinchingSpec {
    ProjectionSet projections;
};

inline PinchingSpec make_pinching(ProjectionSet ps, double tol = kDefaultTol) {
    validate_projection_set(ps, tol);
    return PinchingSpec{std::move(ps)};
}

inline ComplexMatrix pinching_apply(const PinchingSpec& spec, const ComplexMatrix& a) {
    if (a.dim() != spec.projections.dim) {
        throw std::invalid_argument("pinching_apply: dimension mismatch");
    }
    ComplexMatrix out(a.dim());
    for (const ComplexMatrix& p : spec.projections.projections) out = out + p * a * p;
    return out;
}

// -------------------------- preconditioner channels -------------------------

/// The channel A -> U Psi(U* A U) U* for a unitary U and pinching Psi. With a
/// rank-one pinching this is the map assigning to A its best approximation in
/// the algebra diagonalized by U.
class PreconditionerChannel {
public:
    PreconditionerChannel(ComplexMatrix unitary, ProjectionSet pinching, double tol = kDefaultTol)
        : unitary_(std::move(unitary)), pinching_{std::move(pinching)} {
        if (!is_unitary(unitary_, tol)) {
            throw std::invalid_argument("PreconditionerChannel: matrix is not unitary within tolerance");
        }
        if (pinching_.projections.dim != unitary_.dim()) {
            throw std::invalid_argument("PreconditionerChannel: pinching dimension mismatch");
        }
        validate_projection_set(pinching_.projections, tol);
    }

    std::size_t dim() const { return unitary_.dim(); }
    const ComplexMatrix& unitary() const { return unitary_; }
    const PinchingSpec& pinching() const { return pinching_; }

private:
    ComplexMatrix unitary_;
    PinchingSpec pinching_;
};

/// The special case with the rank-one coordinate pinching: the projection
/// onto the maximal abelian algebra diagonalized by U.
inline PreconditionerChannel rank_one_preconditioner(const ComplexMatrix& u,
                                                     double tol = kDefaultTol) {
    std::vector<std::vector<std::size_t>> singletons;
    singletons.reserve(u.dim());
    for (std::size_t i = 0; i < u.dim(); ++i) singletons.push_back({i});
    return PreconditionerChannel(u, block_projections(u.dim(), singletons), tol);
}

inline PreconditionerChannel block_preconditioner(const ComplexMatrix& u,
                                                  const std::vector<std::vector<std::size_t>>& partition,
                                                  double tol = kDefaultTol) {
    return PreconditionerChannel(u, block_projections(u.dim(), partition), tol);
}

inline ComplexMatrix preconditioner_apply(const PreconditionerChannel& ch, const ComplexMatrix& a) {
    if (a.dim() != ch.dim()) throw std::invalid_argument("preconditioner_apply: dimension mismatch");
    const ComplexMatrix& u = ch.unitary();
    return u * pinching_apply(ch.pinching(), adjoint(u) * a * u) * adjoint(u);
}

// ------------------------------ Kraus channels -------------------------------

/// Channel S -> sum_k V_k S V_k*. The trace-preserving flag records whether
/// the completeness relation sum_k V_k* V_k = I holds within tolerance.
class KrausChannel {
public:
    KrausChannel(std::size_t dim, std::vector<ComplexMatrix> ops, double tol = kDefaultTol)
        : dim_(dim), ops_(std::move(ops)) {
        if (dim_ == 0) throw std::invalid_argument("KrausChannel: dimension must be positive");
        ComplexMatrix sum = ComplexMatrix::zero(dim_);
        for (const ComplexMatrix& v : ops_) {
            if (v.dim() != dim_) throw std::invalid_argument("KrausChannel: operator dimension mismatch");
            if (!has_finite_entries(v)) throw std::invalid_argument("KrausChannel: non-finite entries");
            sum = sum + adjoint(v) * v;
        }
        completeness_residual_ = frobenius_norm(sum - ComplexMatrix::identity(dim_));
        trace_preserving_ = completeness_residual_ <= tol;
    }

    std::size_t dim() const { return dim_; }
    const std::vector<ComplexMatrix>& ops() const { return ops_; }
    bool trace_preserving() const { return trace_preserving_; }
    double completeness_residual() const { return completeness_residual_; }

private:
    std::size_t dim_;
    std::vector<ComplexMatrix> ops_;
    double completeness_residual_ = 0.0;
    bool trace_preserving_ = false;
};

inline KrausChannel identity_channel(std::size_t n) {
    return KrausChannel(n, {ComplexMatrix::identity(n)});
}

inline ComplexMatrix kraus_apply(const KrausChannel& ch, const ComplexMatrix& s) {
    if (s.dim() != ch.dim()) throw std::invalid_argument("kraus_apply: dimension mismatch");
    ComplexMatrix out(ch.dim());
    for (const ComplexMatrix& v : ch.ops()) out = out + v * s * adjoint(v);
    return out;
}

/// Kraus form of a preconditioner channel: V_k = U P_k U*.
inline KrausChannel kraus_from_preconditioner(const PreconditionerChannel& ch) {
    const ComplexMatrix& u = ch.unitary();
    std::vector<ComplexMatrix> ops;
    ops.reserve(ch.pinching().projections.projections.size());
    for (const ComplexMatrix& p : ch.pinching().projections.projections) {
        ops.push_back(u * p * adjoint(u));
    }
    return KrausChannel(ch.dim(), std::move(ops));
}

/// Composition ch1 after ch2: Kraus operators {V_{k,1} V_{l,2}} over all pairs.
inline KrausChannel compose_kraus(const KrausChannel& ch1, const KrausChannel& ch2) {
    if (ch1.dim() != ch2.dim()) throw std::invalid_argument("compose_kraus: dimension mismatch");
    std::vector<ComplexMatrix> ops;
    ops.reserve(ch1.ops().size() * ch2.ops().size());
    for (const ComplexMatrix& v1 : ch1.ops())
        for (const ComplexMatrix& v2 : ch2.ops()) ops.push_back(v1 * v2);
    return KrausChannel(ch1.dim(), std::move(ops));
}

// ------------------------------- Choi matrix ---------------------------------

/// Unnormalized Choi matrix C = sum_ij E_ij (x) Phi(E_ij); trace n for a
/// trace-preserving channel.
struct ChoiMatrix {
    ComplexMatrix mat;
    std::size_t input_dim = 0;
};

inline ChoiMatrix choi_matrix(const KrausChannel& ch) {
    const std::size_t n = ch.dim();
    ComplexMatrix c(n * n);
    for (const ComplexMatrix& v : ch.ops()) {
        // C += w w* with w[(i, r)] = V[r][i].
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < n; ++r) {
                const Complex wi = v(r, i);
                if (wi == Complex(0.0)) continue;
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t cc = 0; cc < n; ++cc)
                        c(i * n + r, j * n + cc) += wi * std::conj(v(cc, j));
            }
    }
    return {std::move(c), n};
}

/// Choi matrix of an arbitrary linear map given by its action on matrix units.
inline ChoiMatrix choi_of_map(std::size_t n,
                              const std::function<ComplexMatrix(const ComplexMatrix&)>& map) {
    ComplexMatrix c(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const ComplexMatrix block = map(ComplexMatrix::unit(n, i, j));
            if (block.dim() != n) throw std::invalid_argument("choi_of_map: map changed dimension");
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t cc = 0; cc < n; ++cc) c(i * n + r, j * n + cc) = block(r, cc);
        }
    return {std::move(c), n};
}

inline bool is_completely_positive(const ChoiMatrix& choi, double tol = kDefaultTol) {
    if (!is_hermitian(choi.mat, tol)) {
        throw std::invalid_argument("is_completely_positive: Choi matrix is not Hermitian");
    }
    return is_psd(choi.mat, tol);
}

/// Kraus operators from the spectral decomposition of a Choi matrix. Keeps
/// eigenvalues above rank_tol, so the operator count equals the numerical
/// rank; rejects eigenvalues below -rank_tol.
inline KrausChannel kraus_from_choi(const ChoiMatrix& choi, double rank_tol = kDefaultTol) {
    const std::size_t n = choi.input_dim;
    if (choi.mat.dim() != n * n) throw std::invalid_argument("kraus_from_choi: dimension mismatch");
    const auto dec = hermitian_eig(choi.mat);
    if (!dec.eigenvalues.empty() && dec.eigenvalues.front() < -rank_tol) {
        throw std::invalid_argument("kraus_from_choi: Choi matrix is not positive semidefinite");
    }
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < dec.eigenvalues.size(); ++k) {
        const double w = dec.eigenvalues[k];
        if (w <= rank_tol) continue;
        const double scale = std::sqrt(w);
        ComplexMatrix v(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < n; ++r) v(r, i) = scale * dec.eigenvectors(i * n + r, k);
        ops.push_back(std::move(v));
    }
    return KrausChannel(n, std::move(ops));
}

// --------------------------- Stinespring isometry ----------------------------

/// Isometry V : C^n -> C^d (x) C^n stacking the Kraus operators along the
/// environment index; row (k, r) maps to k * n + r.
struct StinespringIsometry {
    std::size_t sys_dim = 0;
    std::size_t env_dim = 0;
    std::vector<Complex> entries;  // row-major, (env_dim * sys_dim) x sys_dim

    Complex operator()(std::size_t row, std::size_t col) const {
        return entries[row * sys_dim + col];
    }
    std::size_t rows() const { return env_dim * sys_dim; }
    std::size_t cols() const { return sys_dim; }
};

inline StinespringIsometry stinespring_isometry(const KrausChannel& ch) {
    if (!ch.trace_preserving()) {
        throw std::invalid_argument("stinespring_isometry: channel is not trace-preserving");
    }
    const std::size_t n = ch.dim(), d = ch.ops().size();
    StinespringIsometry v{n, d, std::vector<Complex>(d * n * n)};
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) v.entries[((k * n + r)) * n + c] = ch.ops()[k](r, c);
    return v;
}

/// || V* V - I ||_F.
inline double isometry_residual(const StinespringIsometry& v) {
    const std::size_t n = v.cols();
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex t = 0.0;
            for (std::size_t r = 0; r < v.rows(); ++r) t += std::conj(v(r, i)) * v(r, j);
            g(i, j) = t;
        }
    return frobenius_norm(g - ComplexMatrix::identity(n));
}

/// Channel action through the dilation: Tr_E( V S V* ).
inline ComplexMatrix stinespring_apply(const StinespringIsometry& v, const ComplexMatrix& s) {
    if (s.dim() != v.sys_dim) throw std::invalid_argument("stinespring_apply: dimension mismatch");
    const std::size_t big = v.rows();
    ComplexMatrix vsv(big);
    for (std::size_t r = 0; r < big; ++r)
        for (std::size_t c = 0; c < big; ++c) {
            Complex t = 0.0;
            for (std::size_t a = 0; a < v.sys_dim; ++a)
                for (std::size_t b = 0; b < v.sys_dim; ++b) t += v(r, a) * s(a, b) * std::conj(v(c, b));
            vsv(r, c) = t;
        }
    return partial_trace_first(vsv, v.env_dim, v.sys_dim);
}

// ------------------------------ Holevo channels ------------------------------

/// Measure-and-prepare channel S -> sum_k Tr(S F_k) R_k for a POVM {F_k} and
/// output densities {R_k}.
class HolevoChannel {
public:
    HolevoChannel(std::vector<ComplexMatrix> povm, std::vector<DensityMatrix> densities,
                  double tol = kDefaultTol)
        : povm_(std::move(povm)), densities_(std::move(densities)) {
        if (povm_.empty() || povm_.size() != densities_.size()) {
            throw std::invalid_argument("HolevoChannel: povm/density lists must be nonempty and equal length");
        }
        const std::size_t n = povm_.front().dim();
        ComplexMatrix sum = ComplexMatrix::zero(n);
        for (const ComplexMatrix& f : povm_) {
            if (f.dim() != n) throw std::invalid_argument("HolevoChannel: POVM dimension mismatch");
            if (!is_hermitian(f, tol)) throw std::invalid_argument("HolevoChannel: POVM element not Hermitian");
            if (min_eigenvalue(f, tol) < -tol) {
                throw std::invalid_argument("HolevoChannel: POVM element not positive semidefinite");
            }
            sum = sum + f;
        }
        if (frobenius_norm(sum - ComplexMatrix::identity(n)) > tol) {
            throw std::invalid_argument("HolevoChannel: POVM does not resolve the identity");
        }
        for (const DensityMatrix& r : densities_) {
            if (r.dim() != n) throw std::invalid_argument("HolevoChannel: density dimension mismatch");
        }
    }

    std::size_t dim() const { return povm_.front().dim(); }
    std::size_t size() const { return povm_.size(); }
    const std::vector<ComplexMatrix>& povm() const { return povm_; }
    const std::vector<DensityMatrix>& densities() const { return densities_; }

private:
    std::vector<ComplexMatrix> povm_;
    std::vector<DensityMatrix> densities_;
};

/// Linear extension of the Holevo action to arbitrary matrices.
inline ComplexMatrix holevo_apply_linear(const HolevoChannel& ch, const ComplexMatrix& a) {
    if (a.dim() != ch.dim()) throw std::invalid_argument("holevo_apply_linear: dimension mismatch");
    ComplexMatrix out(ch.dim());
    for (std::size_t k = 0; k < ch.size(); ++k) {
        out = out + trace(a * ch.povm()[k]) * ch.densities()[k].mat();
    }
    return out;
}

inline DensityMatrix holevo_apply(const HolevoChannel& ch, const DensityMatrix& rho,
                                  double tol = kDefaultTol) {
    return DensityMatrix(holevo_apply_linear(ch, rho.mat()), tol);
}

/// Holevo form of the rank-one preconditioner: POVM and densities both equal to the rank-one
/// projections from the columns of U.
inline HolevoChannel holevo_from_preconditioner(const ComplexMatrix& u, double tol = kDefaultTol) {
    const ProjectionSet ps = rank_one_projections(u, tol);
    std::vector<DensityMatrix> densities;
    densities.reserve(ps.projections.size());
    for (const ComplexMatrix& p : ps.projections) densities.emplace_back(p, tol);
    return HolevoChannel(ps.projections, std::move(densities), tol);
}

/// Composition ch1 after ch2 in Holevo form: keeps ch2's POVM and prepares
/// the densities sum_k Tr(F_k S_j) R_k.
inline HolevoChannel holevo_compose(const HolevoChannel& ch1, const HolevoChannel& ch2,
                                    double tol = kDefaultTol) {
    if (ch1.dim() != ch2.dim()) throw std::invalid_argument("holevo_compose: dimension mismatch");
    std::vector<DensityMatrix> composed;
    composed.reserve(ch2.size());
    for (std::size_t j = 0; j < ch2.size(); ++j) {
        ComplexMatrix l(ch1.dim());
        for (std::size_t k = 0; k < ch1.size(); ++k) {
            const double w = trace(ch1.povm()[k] * ch2.densities()[j].mat()).real();
            l = l + Complex(w) * ch1.densities()[k].mat();
        }
        composed.emplace_back(std::move(l), tol);
    }
    return HolevoChannel(ch2.povm(), std::move(composed), tol);
}

// ---------------------------- permutation channels ---------------------------

inline void validate_permutation(const std::vector<std::size_t>& perm, std::size_t n) {
    if (perm.size() != n) throw std::invalid_argument("permutation: wrong length");
    std::vector<bool> seen(n, false);
    for (std::size_t v : perm) {
        if (v >= n || seen[v]) throw std::invalid_argument("permutation: not a bijection");
        seen[v] = true;
    }
}

/// Channel T -> sum_j u_{S(j)} (u_j* T u_j) u_{S(j)}*: conjugate to the U
/// eigenbasis, pinch to the diagonal, permute the diagonal by S, conjugate
/// back. Kraus operators are the rank-one u_{S(j)} u_j*.
inline KrausChannel permutation_channel(const ComplexMatrix& u, const std::vector<std::size_t>& perm,
                                        double tol = kDefaultTol) {
    if (!is_unitary(u, tol)) {
        throw std::invalid_argument("permutation_channel: matrix is not unitary within tolerance");
    }
    const std::size_t n = u.dim();
    validate_permutation(perm, n);
    std::vector<ComplexMatrix> ops;
    ops.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        ComplexMatrix w(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) w(r, c) = u(r, perm[j]) * std::conj(u(c, j));
        ops.push_back(std::move(w));
    }
    return KrausChannel(n, std::move(ops));
}

// ------------------------------ channel variant ------------------------------

using Channel = std::variant<PreconditionerChannel, KrausChannel, HolevoChannel>;

inline std::size_t channel_dim(const Channel& ch) {
    return std::visit([](const auto& c) { return c.dim(); }, ch);
}

/// A channel as a plain linear map, the representation-agnostic interface the
/// algebraic probes work against.
struct ChannelAction {
    std::size_t dim = 0;
    std::function<ComplexMatrix(const ComplexMatrix&)> apply;
};

inline ChannelAction action_of(const PreconditionerChannel& ch) {
    return {ch.dim(), [ch](const ComplexMatrix& a) { return preconditioner_apply(ch, a); }};
}

inline ChannelAction action_of(const KrausChannel& ch) {
    return {ch.dim(), [ch](const ComplexMatrix& a) { return kraus_apply(ch, a); }};
}

inline ChannelAction action_of(const HolevoChannel& ch) {
    return {ch.dim(), [ch](const ComplexMatrix& a) { return holevo_apply_linear(ch, a); }};
}

inline ChannelAction channel_action(const Channel& ch) {
    return std::visit([](const auto& c) { return action_of(c); }, ch);
}

/// f after g.
inline ChannelAction compose_actions(const ChannelAction& f, const ChannelAction& g) {
    if (f.dim != g.dim) throw std::invalid_argument("compose_actions: dimension mismatch");
    return {f.dim, [f, g](const ComplexMatrix& a) { return f.apply(g.apply(a)); }};
}

/// Max Frobenius distance of two maps over the matrix-unit basis.
inline double basis_distance(const ChannelAction& f, const ChannelAction& g) {
    if (f.dim != g.dim) throw std::invalid_argument("basis_distance: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < f.dim; ++i)
        for (std::size_t j = 0; j < f.dim; ++j) {
            const ComplexMatrix e = ComplexMatrix::unit(f.dim, i, j);
            worst = std::max(worst, frobenius_norm(f.apply(e) - g.apply(e)));
        }
    return worst;
}

inline ChoiMatrix choi_of_channel(const Channel& ch) {
    const ChannelAction act = channel_action(ch);
    return choi_of_map(act.dim, act.apply);
}

/// Any channel as a Kraus channel: structural form for preconditioners,
/// spectral extraction from the Choi matrix otherwise.
inline KrausChannel to_kraus(const Channel& ch, double rank_tol = kDefaultTol) {
    if (const auto* pc = std::get_if<PreconditionerChannel>(&ch)) {
        return kraus_from_preconditioner(*pc);
    }
    if (const auto* kc = std::get_if<KrausChannel>(&ch)) return *kc;
    return kraus_from_choi(choi_of_channel(ch), rank_tol);
}

// ------------------------------ axiom checking -------------------------------

struct CheckResult {
    std::string check;
    std::string params;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

using VerificationReport = std::vector<CheckResult>;

inline bool all_passed(const VerificationReport& report) {
    for (const CheckResult& r : report)
        if (!r.pass) return false;
    return true;
}

/// Numeric check of the channel axioms: linearity, adjoint preservation,
/// trace preservation, Kraus/POVM completeness, Choi positivity, and for
/// preconditioner channels the Pythagoras identity of the orthogonal
/// projection. Failures show up as report rows, not errors.
inline VerificationReport verify_channel_axioms(const Channel& ch, double tol = kDefaultTol,
                                                std::uint64_t seed = 1, std::size_t trials = 20) {
    const ChannelAction act = channel_action(ch);
    const std::size_t n = act.dim;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto random_matrix = [&]() {
        ComplexMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
        return m;
    };

    VerificationReport report;
    auto add = [&report](std::string name, double residual, double bound) {
        report.push_back({std::move(name), "", residual, bound, residual <= bound});
    };

    double linearity = 0.0, adjoint_res = 0.0, trace_res = 0.0, pythagoras = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const ComplexMatrix a = random_matrix();
        const ComplexMatrix b = random_matrix();
        const Complex alpha(u(rng), u(rng)), beta(u(rng), u(rng));
        const ComplexMatrix fa = act.apply(a);
        linearity = std::max(linearity, frobenius_norm(act.apply(alpha * a + beta * b) -
                                                       (alpha * fa + beta * act.apply(b))));
        adjoint_res = std::max(adjoint_res, frobenius_norm(act.apply(adjoint(a)) - adjoint(fa)));
        trace_res = std::max(trace_res, std::abs(trace(fa) - trace(a)));
        if (std::holds_alternative<PreconditionerChannel>(ch)) {
            const double lhs = std::pow(frobenius_norm(a - fa), 2);
            const double rhs = std::pow(frobenius_norm(a), 2) - std::pow(frobenius_norm(fa), 2);
            pythagoras = std::max(pythagoras,
                                  std::abs(lhs - rhs) / std::max(1.0, std::pow(frobenius_norm(a), 2)));
        }
    }
    add("linearity", linearity, tol);
    add("adjoint_preservation", adjoint_res, tol);
    add("trace_preservation", trace_res, tol);
    if (std::holds_alternative<PreconditionerChannel>(ch)) add("pythagoras", pythagoras, tol);

    if (std::holds_alternative<HolevoChannel>(ch)) {
        const auto& hc = std::get<HolevoChannel>(ch);
        ComplexMatrix sum = ComplexMatrix::zero(n);
        for (const ComplexMatrix& f : hc.povm()) sum = sum + f;
        add("povm_completeness", frobenius_norm(sum - ComplexMatrix::identity(n)), tol);
    } else {
        const KrausChannel kc = to_kraus(ch);
        add("kraus_completeness", kc.completeness_residual(), tol);
    }

    const ChoiMatrix choi = choi_of_channel(ch);
    const double min_eig = min_eigenvalue(hermitian_part(choi.mat));
    add("choi_psd", std::max(0.0, -min_eig), tol);
    return report;
}

}  // namespace qchan
