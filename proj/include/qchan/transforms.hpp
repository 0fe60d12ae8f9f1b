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
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qchan/matrix.hpp"

namespace qchan {

// ------------------------------- grids --------------------------------------

/// Sampling grid x_0..x_{n-1} inside [lo, hi].
struct GridSpec {
    std::size_t n = 0;
    std::vector<double> points;
    double lo = 0.0;
    double hi = 0.0;
};

inline void validate_grid(const GridSpec& g) {
    if (g.n == 0) throw std::invalid_argument("GridSpec: n must be positive");
    if (g.points.size() != g.n) throw std::invalid_argument("GridSpec: points.size() != n");
    for (double x : g.points) {
        if (!(g.lo <= x && x <= g.hi)) throw std::invalid_argument("GridSpec: point outside interval");
    }
}

/// Equispaced grid x_i = 2 i pi / n, used by the Fourier and Hartley transforms.
inline GridSpec fourier_grid(std::size_t n) {
    if (n == 0) throw std::invalid_argument("fourier_grid: n must be positive");
    GridSpec g{n, {}, 0.0, 2.0 * std::numbers::pi};
    g.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        g.points.push_back(2.0 * static_cast<double>(i) * std::numbers::pi / static_cast<double>(n));
    return g;
}

/// Interior grid x_i = (i+1) pi / (n+1) on [0, pi], used by the sine transform.
inline GridSpec sine_grid(std::size_t n) {
    if (n == 0) throw std::invalid_argument("sine_grid: n must be positive");
    GridSpec g{n, {}, 0.0, std::numbers::pi};
    g.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        g.points.push_back(static_cast<double>(i + 1) * std::numbers::pi / static_cast<double>(n + 1));
    return g;
}

// --------------------------- transform matrices -----------------------------

namespace detail {
inline ComplexMatrix checked_unitary(ComplexMatrix m, const char* what) {
    if (!is_unitary(m, kDefaultTol)) {
        throw std::runtime_error(std::string(what) + ": constructed matrix failed the unitarity check");
    }
    return m;
}
}  // namespace detail

/// Fourier matrix F_n with entries e^{i j x_i} / sqrt(n) on the Fourier grid.
inline ComplexMatrix fourier_unitary(std::size_t n) {
    if (n == 0) throw std::invalid_argument("fourier_unitary: n must be positive");
    const GridSpec g = fourier_grid(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = scale * std::exp(Complex(0.0, static_cast<double>(j) * g.points[i]));
    return detail::checked_unitary(std::move(m), "fourier_unitary");
}

/// Sine matrix G_n with entries sqrt(2/(n+1)) sin((j+1) x_i) on the sine grid.
inline ComplexMatrix sine_unitary(std::size_t n) {
    if (n == 0) throw std::invalid_argument("sine_unitary: n must be positive");
    const GridSpec g = sine_grid(n);
    const double scale = std::sqrt(2.0 / static_cast<double>(n + 1));
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = scale * std::sin(static_cast<double>(j + 1) * g.points[i]);
    return detail::checked_unitary(std::move(m), "sine_unitary");
}

/// Hartley matrix H_n with entries (sin(j x_i) + cos(j x_i)) / sqrt(n) on the
/// Fourier grid.
inline ComplexMatrix hartley_unitary(std::size_t n) {
    if (n == 0) throw std::invalid_argument("hartley_unitary: n must be positive");
    const GridSpec g = fourier_grid(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double a = static_cast<double>(j) * g.points[i];
            m(i, j) = scale * (std::sin(a) + std::cos(a));
        }
    return detail::checked_unitary(std::move(m), "hartley_unitary");
}

/// Generalized Vandermonde matrix V[i][j] = v_j(x_i) for a function table v,
/// together with its unitarity verdict. Unlike the named constructors this
/// does not throw when the result fails the check.
struct VandermondeResult {
    ComplexMatrix matrix;
    bool unitary = false;
};

inline VandermondeResult vandermonde_unitary(
    const std::function<Complex(std::size_t j, double x)>& funcs, const GridSpec& grid) {
    validate_grid(grid);
    ComplexMatrix m(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i)
        for (std::size_t j = 0; j < grid.n; ++j) {
            const Complex v = funcs(j, grid.points[i]);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw std::runtime_error("vandermonde_unitary: function evaluation is not finite");
            }
            m(i, j) = v;
        }
    return {m, is_unitary(m, kDefaultTol)};
}

// ----------------------------- projections ----------------------------------

/// Mutually orthogonal projections P_1..P_d with sum P_k = I.
struct ProjectionSet {
    std::size_t dim = 0;
    std::vector<ComplexMatrix> projections;
};

inline void validate_projection_set(const ProjectionSet& ps, double tol = kDefaultTol) {
    if (ps.projections.empty()) throw std::invalid_argument("ProjectionSet: empty");
    ComplexMatrix sum = ComplexMatrix::zero(ps.dim);
    for (std::size_t k = 0; k < ps.projections.size(); ++k) {
        const ComplexMatrix& p = ps.projections[k];
        if (p.dim() != ps.dim) throw std::invalid_argument("ProjectionSet: dimension mismatch");
        if (!is_hermitian(p, tol)) throw std::invalid_argument("ProjectionSet: projection not Hermitian");
        if (frobenius_norm(p * p - p) > tol) {
            throw std::invalid_argument("ProjectionSet: projection not idempotent");
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (frobenius_norm(ps.projections[j] * p) > tol) {
                throw std::invalid_argument("ProjectionSet: projections not pairwise orthogonal");
            }
        }
        sum = sum + p;
    }
    if (frobenius_norm(sum - ComplexMatrix::identity(ps.dim)) > tol) {
        throw std::invalid_argument("ProjectionSet: projections do not sum to the identity");
    }
}

/// Rank-one projections p_j = u_j u_j* from the columns of a unitary.
inline ProjectionSet rank_one_projections(const ComplexMatrix& u, double tol = kDefaultTol) {
    if (!is_unitary(u, tol)) {
        throw std::invalid_argument("rank_one_projections: input is not unitary within tolerance");
    }
    const std::size_t n = u.dim();
    ProjectionSet ps{n, {}};
    ps.projections.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        ComplexMatrix p(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) p(r, c) = u(r, j) * std::conj(u(c, j));
        ps.projections.push_back(std::move(p));
    }
    return ps;
}

/// Coordinate projections onto the blocks of a partition of {0..n-1}.
inline ProjectionSet block_projections(std::size_t n,
                                       const std::vector<std::vector<std::size_t>>& partition) {
    if (n == 0) throw std::invalid_argument("block_projections: dimension must be positive");
    std::vector<bool> seen(n, false);
    ProjectionSet ps{n, {}};
    for (const auto& block : partition) {
        if (block.empty()) throw std::invalid_argument("block_projections: empty block");
        ComplexMatrix p(n);
        for (std::size_t idx : block) {
            if (idx >= n) throw std::invalid_argument("block_projections: index out of range");
            if (seen[idx]) throw std::invalid_argument("block_projections: overlapping blocks");
            seen[idx] = true;
            p(idx, idx) = 1.0;
        }
        ps.projections.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!seen[i]) throw std::invalid_argument("block_projections: partition does not cover all indices");
    }
    return ps;
}

}  // namespace qchan
