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
#include <random>
#include <stdexcept>
#include <vector>

#include "qchan/channels.hpp"
#include "qchan/matrix.hpp"

namespace qchan {

// Seeded, reproducible generators. Every randomized sweep derives one engine
// per trial so individual failures can be replayed from (seed, trial) alone.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(trial)));
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
    return hermitian_part(random_matrix(rng, n));
}

inline DensityMatrix random_density(std::mt19937_64& rng, std::size_t n) {
    const ComplexMatrix g = random_matrix(rng, n);
    const ComplexMatrix gram = g * adjoint(g);
    return DensityMatrix(Complex(1.0 / trace(gram).real()) * gram);
}

/// Haar-ish random unitary via Gram-Schmidt on a random matrix; the second
/// orthogonalization pass keeps the columns orthonormal to working precision.
inline ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
    ComplexMatrix m = random_matrix(rng, n);
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(m(i, k)) * m(i, j);
                for (std::size_t i = 0; i < n; ++i) m(i, j) -= proj * m(i, k);
            }
            double nrm = 0.0;
            for (std::size_t i = 0; i < n; ++i) nrm += std::norm(m(i, j));
            nrm = std::sqrt(nrm);
            if (nrm < 1e-8) throw std::runtime_error("random_unitary: degenerate sample");
            for (std::size_t i = 0; i < n; ++i) m(i, j) = m(i, j) / nrm;
        }
    }
    return m;
}

namespace detail {

inline ComplexMatrix inverse_sqrt(const ComplexMatrix& a) {
    const auto dec = hermitian_eig(a);
    if (dec.eigenvalues.front() < 1e-12) {
        throw std::runtime_error("inverse_sqrt: matrix is numerically singular");
    }
    const std::size_t n = a.dim();
    ComplexMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = 1.0 / std::sqrt(dec.eigenvalues[i]);
    return dec.eigenvectors * d * adjoint(dec.eigenvectors);
}

}  // namespace detail

/// Random POVM of m elements: normalize random Gram matrices A_k by
/// T^{-1/2} A_k T^{-1/2} with T their sum.
inline std::vector<ComplexMatrix> random_povm(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    std::vector<ComplexMatrix> grams;
    grams.reserve(m);
    ComplexMatrix total = ComplexMatrix::zero(n);
    for (std::size_t k = 0; k < m; ++k) {
        const ComplexMatrix g = random_matrix(rng, n);
        grams.push_back(g * adjoint(g));
        total = total + grams.back();
    }
    const ComplexMatrix w = detail::inverse_sqrt(total);
    std::vector<ComplexMatrix> povm;
    povm.reserve(m);
    for (const ComplexMatrix& a : grams) povm.push_back(hermitian_part(w * a * w));
    return povm;
}

/// Random trace-preserving Kraus channel with d operators: V_k = G_k T^{-1/2}
/// with T the sum of the G_k* G_k.
inline KrausChannel random_cptp_kraus(std::mt19937_64& rng, std::size_t n, std::size_t d) {
    std::vector<ComplexMatrix> gs;
    gs.reserve(d);
    ComplexMatrix total = ComplexMatrix::zero(n);
    for (std::size_t k = 0; k < d; ++k) {
        gs.push_back(random_matrix(rng, n));
        total = total + adjoint(gs.back()) * gs.back();
    }
    const ComplexMatrix w = detail::inverse_sqrt(total);
    std::vector<ComplexMatrix> ops;
    ops.reserve(d);
    for (const ComplexMatrix& g : gs) ops.push_back(g * w);
    return KrausChannel(n, std::move(ops));
}

inline HolevoChannel random_holevo(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    std::vector<DensityMatrix> densities;
    densities.reserve(m);
    for (std::size_t k = 0; k < m; ++k) densities.push_back(random_density(rng, n));
    return HolevoChannel(random_povm(rng, n, m), std::move(densities));
}

}  // namespace qchan
