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
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qchan {

using Complex = std::complex<double>;

/// Absolute tolerance used by the structural predicates (Hermitian, PSD,
/// unitary, trace-one) unless the caller overrides it.
inline constexpr double kDefaultTol = 1e-9;

// ------------------------------ ComplexMatrix -------------------------------

/// Dense square complex matrix, row-major. Treated as an immutable value:
/// every operation below returns a fresh matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

    ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (entries_.size() != dim_ * dim_) {
            throw std::invalid_argument("ComplexMatrix: entries.size() != dim^2");
        }
    }

    static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n); }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    /// Matrix unit E_ij: 1 at (i, j), zero elsewhere.
    static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
        if (i >= n || j >= n) throw std::out_of_range("ComplexMatrix::unit: index out of range");
        ComplexMatrix m(n);
        m(i, j) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const std::vector<Complex>& d) {
        ComplexMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        ComplexMatrix m(rows.size());
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != m.dim_) {
                throw std::invalid_argument("ComplexMatrix::from_rows: ragged rows");
            }
            std::size_t j = 0;
            for (const auto& v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }

    const std::vector<Complex>& entries() const { return entries_; }

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

namespace detail {
inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
    }
}
}  // namespace detail

// ---------------------------- arithmetic ------------------------------------

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "operator+");
    ComplexMatrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "operator-");
    ComplexMatrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = s * a(i, j);
    return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, Complex s) { return s * a; }

inline ComplexMatrix operator-(const ComplexMatrix& a) { return Complex(-1.0) * a; }

/// Standard matrix product.
inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "multiply");
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return multiply(a, b);
}

/// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = std::conj(a(j, i));
    return c;
}

inline ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(j, i);
    return c;
}

inline ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = std::conj(a(i, j));
    return c;
}

inline Complex trace(const ComplexMatrix& a) {
    Complex t = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

/// Hilbert-Schmidt inner product <A, B> = Tr(A B*).
inline Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "frobenius_inner");
    Complex t = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) t += a(i, j) * std::conj(b(i, j));
    return t;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const Complex& v : a.entries()) s += std::norm(v);
    return std::sqrt(s);
}

/// Same diagonal, zero off-diagonal.
inline ComplexMatrix diagonal_pinch(const ComplexMatrix& a) {
    ComplexMatrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c(i, i) = a(i, i);
    return c;
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    ComplexMatrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return c;
}

// ------------------------- tensor structure ---------------------------------

/// Kronecker product; index convention (i, k) -> i * b.dim() + k.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    ComplexMatrix c(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0)) continue;
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l) c(i * db + k, j * db + l) = aij * b(k, l);
        }
    return c;
}

/// Trace out the first tensor factor of an (da*db)-dimensional matrix.
inline ComplexMatrix partial_trace_first(const ComplexMatrix& m, std::size_t da, std::size_t db) {
    if (m.dim() != da * db) throw std::invalid_argument("partial_trace_first: dimension mismatch");
    ComplexMatrix c(db);
    for (std::size_t b = 0; b < db; ++b)
        for (std::size_t b2 = 0; b2 < db; ++b2) {
            Complex t = 0.0;
            for (std::size_t a = 0; a < da; ++a) t += m(a * db + b, a * db + b2);
            c(b, b2) = t;
        }
    return c;
}

/// Trace out the second tensor factor of an (da*db)-dimensional matrix.
inline ComplexMatrix partial_trace_second(const ComplexMatrix& m, std::size_t da, std::size_t db) {
    if (m.dim() != da * db) throw std::invalid_argument("partial_trace_second: dimension mismatch");
    ComplexMatrix c(da);
    for (std::size_t a = 0; a < da; ++a)
        for (std::size_t a2 = 0; a2 < da; ++a2) {
            Complex t = 0.0;
            for (std::size_t b = 0; b < db; ++b) t += m(a * db + b, a2 * db + b);
            c(a, a2) = t;
        }
    return c;
}

// ---------------------------- predicates ------------------------------------

inline bool has_finite_entries(const ComplexMatrix& a) {
    for (const Complex& v : a.entries()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTol) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) s += std::norm(a(i, j) - std::conj(a(j, i)));
    return std::sqrt(s) <= tol;
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kDefaultTol) {
    const ComplexMatrix id = ComplexMatrix::identity(u.dim());
    return frobenius_norm(adjoint(u) * u - id) <= tol &&
           frobenius_norm(u * adjoint(u) - id) <= tol;
}

// --------------------- Hermitian eigendecomposition -------------------------

/// Full spectral decomposition of a Hermitian matrix: A = V diag(w) V*,
/// eigenvalues ascending, eigenvector columns unitary.
struct HermitianEigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

class EigenSolverError : public std::runtime_error {
public:
    EigenSolverError(const std::string& msg, double residual)
        : std::runtime_error(msg + " (off-diagonal residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation annihilating m(p, q). Updates m <- R* m R and
// accumulates v <- v R, with R the identity outside the (p, q) plane and
//   R(p,p) = c, R(p,q) = s, R(q,p) = -conj(s), R(q,q) = c,  c real.
inline void jacobi_rotate(ComplexMatrix& m, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex beta = m(p, q);
    const double babs = std::abs(beta);
    if (babs == 0.0) return;
    const double alpha = m(p, p).real();
    const double gamma = m(q, q).real();
    const double theta = (gamma - alpha) / (2.0 * babs);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const Complex s = (t * c) * (beta / babs);

    const std::size_t n = m.dim();
    // Column update (A <- A R) on m and on the accumulated eigenvectors.
    for (std::size_t k = 0; k < n; ++k) {
        const Complex mp = m(k, p), mq = m(k, q);
        m(k, p) = c * mp - std::conj(s) * mq;
        m(k, q) = s * mp + c * mq;
        const Complex vp = v(k, p), vq = v(k, q);
        v(k, p) = c * vp - std::conj(s) * vq;
        v(k, q) = s * vp + c * vq;
    }
    // Row update (A <- R* A).
    for (std::size_t k = 0; k < n; ++k) {
        const Complex mp = m(p, k), mq = m(q, k);
        m(p, k) = c * mp - s * mq;
        m(q, k) = std::conj(s) * mp + c * mq;
    }
    m(p, q) = 0.0;
    m(q, p) = 0.0;
    m(p, p) = Complex(m(p, p).real(), 0.0);
    m(q, q) = Complex(m(q, q).real(), 0.0);
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for Hermitian matrices. Runs sweeps of plane
/// rotations until the off-diagonal Frobenius norm drops below
/// 1e-12 * max(1, ||A||_F), at most 100 sweeps.
inline HermitianEigenDecomposition hermitian_eig(const ComplexMatrix& a,
                                                 double herm_tol = kDefaultTol) {
    if (!is_hermitian(a, herm_tol)) {
        throw std::invalid_argument("hermitian_eig: input is not Hermitian within tolerance");
    }
    const std::size_t n = a.dim();
    ComplexMatrix m = hermitian_part(a);
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double stop = 1e-12 * std::max(1.0, frobenius_norm(m));
    constexpr int kMaxSweeps = 100;
    double off = detail::off_diagonal_norm(m);
    for (int sweep = 0; sweep < kMaxSweeps && off > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(m, v, p, q);
        off = detail::off_diagonal_norm(m);
    }
    if (off > stop) {
        throw EigenSolverError("hermitian_eig: Jacobi iteration did not converge", off);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return m(i, i).real() < m(j, j).real(); });

    HermitianEigenDecomposition dec;
    dec.eigenvalues.resize(n);
    dec.eigenvectors = ComplexMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        dec.eigenvalues[j] = m(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) dec.eigenvectors(i, j) = v(i, order[j]);
    }
    return dec;
}

/// Singular values, descending, by one-sided Jacobi: rotate column pairs
/// until mutually orthogonal, then read off the column norms. Unlike the
/// route through the spectrum of A*A this keeps small singular values
/// accurate near machine precision, which the rank tests rely on.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix v = a;
    constexpr int kMaxSweeps = 60;
    constexpr double kOrthTol = 1e-15;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                Complex apq = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    app += std::norm(v(i, p));
                    aqq += std::norm(v(i, q));
                    apq += std::conj(v(i, p)) * v(i, q);
                }
                const double babs = std::abs(apq);
                if (babs <= kOrthTol * std::sqrt(app * aqq) || babs == 0.0) continue;
                const double theta = (aqq - app) / (2.0 * babs);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const Complex s = (t * c) * (apq / babs);
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - std::conj(s) * vq;
                    v(i, q) = s * vp + c * vq;
                }
                rotated = true;
            }
        if (!rotated) break;
    }
    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(v(i, j));
        sigma[j] = std::sqrt(nrm);
    }
    std::sort(sigma.rbegin(), sigma.rend());
    return sigma;
}

inline double min_eigenvalue(const ComplexMatrix& a, double herm_tol = kDefaultTol) {
    const auto dec = hermitian_eig(a, herm_tol);
    return dec.eigenvalues.empty() ? 0.0 : dec.eigenvalues.front();
}

/// True iff the Hermitian matrix has min eigenvalue >= -tol.
inline bool is_psd(const ComplexMatrix& a, double tol = kDefaultTol) {
    if (!is_hermitian(a, tol)) {
        throw std::invalid_argument("is_psd: input is not Hermitian within tolerance");
    }
    if (a.dim() == 0) return true;
    return min_eigenvalue(a, tol) >= -tol;
}

/// Count of eigenvalues above tol * max(1, largest eigenvalue magnitude).
inline std::size_t numerical_rank(const ComplexMatrix& a, double tol) {
    const auto dec = hermitian_eig(a);
    double lmax = 0.0;
    for (double w : dec.eigenvalues) lmax = std::max(lmax, std::abs(w));
    const double cut = tol * std::max(1.0, lmax);
    std::size_t r = 0;
    for (double w : dec.eigenvalues)
        if (w > cut) ++r;
    return r;
}

// ----------------------------- DensityMatrix --------------------------------

/// Positive semidefinite, unit-trace matrix. Validated at construction.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m, double tol = kDefaultTol) : mat_(std::move(m)) {
        if (!has_finite_entries(mat_)) {
            throw std::invalid_argument("DensityMatrix: non-finite entries");
        }
        if (!is_hermitian(mat_, tol)) {
            throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
        }
        if (min_eigenvalue(mat_, tol) < -tol) {
            throw std::invalid_argument("DensityMatrix: not positive semidefinite within tolerance");
        }
        if (std::abs(trace(mat_) - Complex(1.0)) > tol) {
            throw std::invalid_argument("DensityMatrix: trace differs from one");
        }
    }

    const ComplexMatrix& mat() const { return mat_; }
    std::size_t dim() const { return mat_.dim(); }

private:
    ComplexMatrix mat_;
};

}  // namespace qchan
