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

#include <cmath>
#include <string>
#include <vector>

#include "qchan/channels.hpp"
#include "qchan/matrix.hpp"

namespace qchan {

// --------------------------- entanglement fidelity ---------------------------

/// F_e(S, Phi) = sum_k |Tr(V_k S)|^2 for a trace-preserving Kraus channel.
inline double entanglement_fidelity(const DensityMatrix& s, const KrausChannel& ch) {
    if (s.dim() != ch.dim()) throw std::invalid_argument("entanglement_fidelity: dimension mismatch");
    if (!ch.trace_preserving()) {
        throw std::invalid_argument("entanglement_fidelity: channel is not trace-preserving");
    }
    double f = 0.0;
    for (const ComplexMatrix& v : ch.ops()) f += std::norm(trace(v * s.mat()));
    return f;
}

// ------------------------------ rank diagnostics ------------------------------

/// True iff every Kraus operator has numerical rank at most one (second
/// singular value below tol). A rank-one Kraus representation certifies the
/// channel entanglement-breaking.
inline bool is_rank_one_kraus(const KrausChannel& ch, double tol = kDefaultTol) {
    for (const ComplexMatrix& v : ch.ops()) {
        if (v.dim() < 2) continue;
        if (singular_values(v)[1] > tol) return false;
    }
    return true;
}

/// Explicit rank-one Kraus form of a Holevo channel: spectral pieces
/// sqrt(f_a r_b) y_b x_a* over the POVM and density eigendecompositions.
inline KrausChannel holevo_rank_one_kraus(const HolevoChannel& ch, double tol = kDefaultTol) {
    const std::size_t n = ch.dim();
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < ch.size(); ++k) {
        const auto fd = hermitian_eig(hermitian_part(ch.povm()[k]));
        const auto rd = hermitian_eig(hermitian_part(ch.densities()[k].mat()));
        for (std::size_t a = 0; a < n; ++a) {
            if (fd.eigenvalues[a] <= tol) continue;
            for (std::size_t b = 0; b < n; ++b) {
                if (rd.eigenvalues[b] <= tol) continue;
                const double w = std::sqrt(fd.eigenvalues[a] * rd.eigenvalues[b]);
                ComplexMatrix op(n);
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c)
                        op(r, c) = w * rd.eigenvectors(r, b) * std::conj(fd.eigenvectors(c, a));
                ops.push_back(std::move(op));
            }
        }
    }
    return KrausChannel(n, std::move(ops));
}

// ------------------------------ c-q structure --------------------------------

enum class CqVerdict { ClassicalQuantum, NotClassicalQuantum };

/// Structural dichotomy for preconditioner channels: the channel has the
/// measure-and-prepare form over basis projections exactly when every
/// pinching block has rank one.
inline CqVerdict cq_structure_test(const PreconditionerChannel& ch) {
    for (const ComplexMatrix& p : ch.pinching().projections.projections) {
        if (trace(p).real() > 1.5) return CqVerdict::NotClassicalQuantum;
    }
    return CqVerdict::ClassicalQuantum;
}

enum class EbVerdict { ProvedEntanglementBreaking, ProvedNotCqForm, Undetermined };

inline std::string to_string(EbVerdict v) {
    switch (v) {
        case EbVerdict::ProvedEntanglementBreaking: return "proved-EB";
        case EbVerdict::ProvedNotCqForm: return "proved-not-c-q-form";
        default: return "undetermined";
    }
}

/// Three-level entanglement-breaking classification. A rank-one Kraus form
/// (given, extracted, or constructed from a Holevo form) proves EB; a
/// preconditioner block of rank two or more proves the channel is not of the
/// c-q form; anything else stays undetermined.
inline EbVerdict eb_classify(const Channel& ch, double tol = kDefaultTol) {
    if (const auto* pc = std::get_if<PreconditionerChannel>(&ch)) {
        return cq_structure_test(*pc) == CqVerdict::ClassicalQuantum
                   ? EbVerdict::ProvedEntanglementBreaking
                   : EbVerdict::ProvedNotCqForm;
    }
    if (const auto* hc = std::get_if<HolevoChannel>(&ch)) {
        if (is_rank_one_kraus(holevo_rank_one_kraus(*hc), tol)) {
            return EbVerdict::ProvedEntanglementBreaking;
        }
        return EbVerdict::Undetermined;
    }
    const auto& kc = std::get<KrausChannel>(ch);
    if (is_rank_one_kraus(kc, tol)) return EbVerdict::ProvedEntanglementBreaking;
    // The given operators may hide a rank-one form; try the minimal set.
    const KrausChannel minimal = kraus_from_choi(choi_matrix(kc), tol);
    if (is_rank_one_kraus(minimal, tol)) return EbVerdict::ProvedEntanglementBreaking;
    return EbVerdict::Undetermined;
}

// ------------------------------ tensor powers --------------------------------

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// n-fold tensor power of a channel: all n-fold tensor products of the Kraus
/// operators. Refuses to materialize composite dimensions beyond the budget.
inline KrausChannel tensor_power_channel(const KrausChannel& ch, std::size_t n,
                                         std::size_t max_composite_dim = 64) {
    if (n == 0) throw std::invalid_argument("tensor_power_channel: power must be positive");
    double dim_power = 1.0, op_count = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        dim_power *= static_cast<double>(ch.dim());
        op_count *= static_cast<double>(ch.ops().size());
    }
    const double budget = static_cast<double>(max_composite_dim);
    if (dim_power > budget || dim_power * dim_power * op_count > budget * budget * budget) {
        throw ResourceError("tensor_power_channel: composite dimension exceeds the memory budget");
    }
    std::vector<ComplexMatrix> ops{ComplexMatrix::identity(1)};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<ComplexMatrix> next;
        next.reserve(ops.size() * ch.ops().size());
        for (const ComplexMatrix& a : ops)
            for (const ComplexMatrix& b : ch.ops()) next.push_back(kron(a, b));
        ops = std::move(next);
    }
    return KrausChannel(static_cast<std::size_t>(dim_power), std::move(ops));
}

// ---------------------------------- codes ------------------------------------

/// Block code for a composite channel: encoding states S_i on the n-fold
/// tensor space and a decoding observable M_j resolving the identity there.
struct Code {
    std::size_t block_length = 0;
    std::vector<DensityMatrix> states;
    std::vector<ComplexMatrix> observable;
};

inline void validate_code(const Code& code, double tol = kDefaultTol) {
    if (code.block_length == 0) throw std::invalid_argument("Code: block_length must be positive");
    if (code.states.empty() || code.observable.empty()) {
        throw std::invalid_argument("Code: states and observable must be nonempty");
    }
    const std::size_t dim = code.states.front().dim();
    for (const DensityMatrix& s : code.states) {
        if (s.dim() != dim) throw std::invalid_argument("Code: state dimension mismatch");
    }
    ComplexMatrix sum = ComplexMatrix::zero(dim);
    for (const ComplexMatrix& m : code.observable) {
        if (m.dim() != dim) throw std::invalid_argument("Code: observable dimension mismatch");
        if (!is_hermitian(m, tol)) throw std::invalid_argument("Code: observable element not Hermitian");
        if (min_eigenvalue(m, tol) < -tol) {
            throw std::invalid_argument("Code: observable element not positive semidefinite");
        }
        sum = sum + m;
    }
    if (frobenius_norm(sum - ComplexMatrix::identity(dim)) > tol) {
        throw std::invalid_argument("Code: observable does not resolve the identity");
    }
    if (code.observable.size() < code.states.size()) {
        throw std::invalid_argument("Code: fewer decoding elements than messages");
    }
}

/// Worst-case decoding error max_i (1 - Tr(Phi^(x)n [S_i] M_i)).
inline double code_error_probability(const KrausChannel& ch, const Code& code,
                                     std::size_t max_composite_dim = 64) {
    validate_code(code);
    const KrausChannel big = tensor_power_channel(ch, code.block_length, max_composite_dim);
    if (big.dim() != code.states.front().dim()) {
        throw std::invalid_argument("code_error_probability: code dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < code.states.size(); ++i) {
        const ComplexMatrix out = kraus_apply(big, code.states[i].mat());
        const double correct = trace(out * code.observable[i]).real();
        worst = std::max(worst, 1.0 - correct);
    }
    return worst;
}

/// The zero-error code for the rank-one preconditioner: message j encoded as the n-fold tensor power
/// of the rank-one projection p_j, decoded by the matching projections. The
/// decoding observable is completed with I - sum_j p_j^(x)n when the
/// projections alone do not resolve the identity.
inline Code capacity_achieving_code(const ComplexMatrix& u, std::size_t message_count,
                                    std::size_t block_length, double tol = kDefaultTol) {
    if (message_count == 0) throw std::invalid_argument("capacity_achieving_code: J must be positive");
    if (message_count > u.dim()) {
        throw std::invalid_argument("capacity_achieving_code: J exceeds the channel dimension");
    }
    if (block_length == 0) {
        throw std::invalid_argument("capacity_achieving_code: block length must be positive");
    }
    const ProjectionSet ps = rank_one_projections(u, tol);
    Code code;
    code.block_length = block_length;
    std::size_t dim = 1;
    for (std::size_t i = 0; i < block_length; ++i) dim *= u.dim();
    ComplexMatrix sum = ComplexMatrix::zero(dim);
    for (std::size_t j = 0; j < message_count; ++j) {
        ComplexMatrix power = ComplexMatrix::identity(1);
        for (std::size_t i = 0; i < block_length; ++i) power = kron(power, ps.projections[j]);
        sum = sum + power;
        code.observable.push_back(power);
        code.states.emplace_back(std::move(power), tol);
    }
    if (frobenius_norm(sum - ComplexMatrix::identity(dim)) > tol) {
        code.observable.push_back(ComplexMatrix::identity(dim) - sum);
    }
    return code;
}

/// Classical capacity of the rank-one preconditioner at code size J: log2(J), achieved by the
/// zero-error code above.
inline double preconditioner_capacity(std::size_t message_count) {
    if (message_count == 0) throw std::invalid_argument("preconditioner_capacity: J must be positive");
    return std::log2(static_cast<double>(message_count));
}

}  // namespace qchan
