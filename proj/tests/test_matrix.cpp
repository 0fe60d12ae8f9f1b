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

#include <cmath>
#include <random>

#include "qchan/matrix.hpp"

using namespace qchan;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
    return m;
}

ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
    return hermitian_part(random_matrix(rng, n));
}

// Independent oracle for 2x2 Hermitian spectra: roots of the characteristic
// polynomial l^2 - Tr(A) l + det(A), returned ascending.
std::pair<double, double> char_poly_eig2(const ComplexMatrix& a) {
    const double tr = (a(0, 0) + a(1, 1)).real();
    const double det = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real();
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    return {0.5 * tr - disc, 0.5 * tr + disc};
}

// Sign test on the characteristic polynomial: both roots nonnegative iff the
// trace and determinant are.
bool char_poly_psd2(const ComplexMatrix& a) {
    const double tr = (a(0, 0) + a(1, 1)).real();
    const double det = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real();
    return tr >= 0.0 && det >= 0.0;
}

}  // namespace

TEST_CASE("multiply basics") {
    std::mt19937_64 rng(11);
    const auto a = random_matrix(rng, 4);

    SECTION("identity is neutral") {
        REQUIRE(frobenius_norm(ComplexMatrix::identity(4) * a - a) == 0.0);
    }
    SECTION("zero annihilates") {
        REQUIRE(frobenius_norm(a * ComplexMatrix::zero(4)) == 0.0);
    }
    SECTION("Pauli X squares to identity") {
        const auto x = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
        REQUIRE(frobenius_norm(x * x - ComplexMatrix::identity(2)) == 0.0);
    }
    SECTION("dimension mismatch throws") {
        REQUIRE_THROWS_AS(a * ComplexMatrix::identity(3), std::invalid_argument);
    }
}

TEST_CASE("adjoint") {
    std::mt19937_64 rng(12);

    SECTION("Hermitian matrices are fixed points") {
        const auto h = random_hermitian(rng, 5);
        REQUIRE(frobenius_norm(adjoint(h) - h) <= 1e-15);
    }
    SECTION("conjugate transpose by hand") {
        const auto a = ComplexMatrix::from_rows({{0.0, Complex(0, 1)}, {0.0, 0.0}});
        const auto expected = ComplexMatrix::from_rows({{0.0, 0.0}, {Complex(0, -1), 0.0}});
        REQUIRE(frobenius_norm(adjoint(a) - expected) == 0.0);
    }
    SECTION("involution") {
        const auto a = random_matrix(rng, 6);
        REQUIRE(frobenius_norm(adjoint(adjoint(a)) - a) == 0.0);
    }
}

TEST_CASE("trace") {
    std::mt19937_64 rng(13);

    SECTION("identity") {
        REQUIRE(trace(ComplexMatrix::identity(7)) == Complex(7.0));
    }
    SECTION("cyclic: Tr(AB) = Tr(BA)") {
        const auto a = random_matrix(rng, 5);
        const auto b = random_matrix(rng, 5);
        REQUIRE(std::abs(trace(a * b) - trace(b * a)) <= 1e-12);
    }
}

TEST_CASE("frobenius inner product") {
    std::mt19937_64 rng(14);
    const auto a = random_matrix(rng, 4);
    const auto b = random_matrix(rng, 4);

    SECTION("<A,A> is the squared norm") {
        const Complex aa = frobenius_inner(a, a);
        REQUIRE(std::abs(aa.imag()) <= 1e-14);
        REQUIRE(aa.real() >= 0.0);
        REQUIRE(std::abs(aa.real() - frobenius_norm(a) * frobenius_norm(a)) <= 1e-12);
    }
    SECTION("<I2,I2> = 2") {
        const auto id = ComplexMatrix::identity(2);
        REQUIRE(frobenius_inner(id, id) == Complex(2.0));
    }
    SECTION("orthogonal matrix units") {
        REQUIRE(frobenius_inner(ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1)) ==
                Complex(0.0));
    }
    SECTION("conjugate symmetry") {
        REQUIRE(std::abs(frobenius_inner(a, b) - std::conj(frobenius_inner(b, a))) <= 1e-14);
    }
}

TEST_CASE("diagonal pinch") {
    std::mt19937_64 rng(15);
    const auto a = random_matrix(rng, 5);

    SECTION("diagonal matrices are fixed points") {
        const auto d = ComplexMatrix::diagonal({1.0, Complex(0, 2), -3.0});
        REQUIRE(frobenius_norm(diagonal_pinch(d) - d) == 0.0);
    }
    SECTION("all-ones 2x2 pinches to the identity") {
        const auto ones = ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
        REQUIRE(frobenius_norm(diagonal_pinch(ones) - ComplexMatrix::identity(2)) == 0.0);
    }
    SECTION("trace preserved exactly") {
        REQUIRE(trace(diagonal_pinch(a)) == trace(a));
    }
}

TEST_CASE("hermitian_eig") {
    std::mt19937_64 rng(16);

    SECTION("diagonal spectrum, ascending order") {
        const auto dec = hermitian_eig(ComplexMatrix::diagonal({3.0, 1.0}));
        REQUIRE(dec.eigenvalues[0] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(dec.eigenvalues[1] == Catch::Approx(3.0).margin(1e-12));
    }
    SECTION("Pauli X") {
        const auto x = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
        const auto dec = hermitian_eig(x);
        REQUIRE(dec.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-12));
        REQUIRE(dec.eigenvalues[1] == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("rank-one projection spectrum") {
        // x (x)* with ||x|| = 1 has eigenvalues (0, ..., 0, 1).
        const std::size_t n = 5;
        auto v = random_matrix(rng, n);
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(v(i, 0));
        nrm = std::sqrt(nrm);
        ComplexMatrix proj(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) proj(i, j) = v(i, 0) / nrm * std::conj(v(j, 0) / nrm);
        const auto dec = hermitian_eig(proj);
        for (std::size_t i = 0; i + 1 < n; ++i) REQUIRE(std::abs(dec.eigenvalues[i]) <= 1e-10);
        REQUIRE(dec.eigenvalues[n - 1] == Catch::Approx(1.0).margin(1e-10));
    }
    SECTION("reconstruction and unitarity of eigenvectors, n up to 32") {
        for (std::size_t n : {2u, 3u, 8u, 17u, 32u}) {
            const auto h = random_hermitian(rng, n);
            const auto dec = hermitian_eig(h);
            REQUIRE(is_unitary(dec.eigenvectors, 1e-10));
            ComplexMatrix lam = ComplexMatrix::zero(n);
            for (std::size_t i = 0; i < n; ++i) lam(i, i) = dec.eigenvalues[i];
            const auto rebuilt = dec.eigenvectors * lam * adjoint(dec.eigenvectors);
            REQUIRE(frobenius_norm(rebuilt - h) <= 1e-9 * std::max(1.0, frobenius_norm(h)));
            REQUIRE(std::is_sorted(dec.eigenvalues.begin(), dec.eigenvalues.end()));
        }
    }
    SECTION("eigenpairs satisfy A v = w v") {
        const auto h = random_hermitian(rng, 6);
        const auto dec = hermitian_eig(h);
        for (std::size_t j = 0; j < 6; ++j) {
            double resid = 0.0;
            for (std::size_t i = 0; i < 6; ++i) {
                Complex av = 0.0;
                for (std::size_t k = 0; k < 6; ++k) av += h(i, k) * dec.eigenvectors(k, j);
                resid += std::norm(av - dec.eigenvalues[j] * dec.eigenvectors(i, j));
            }
            REQUIRE(std::sqrt(resid) <= 1e-10);
        }
    }
    SECTION("non-Hermitian input is rejected") {
        const auto a = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
        REQUIRE_THROWS_AS(hermitian_eig(a), std::invalid_argument);
    }
    SECTION("agrees with the characteristic-polynomial oracle on 2x2 integer matrices") {
        const double vals[] = {-1.0, 0.0, 1.0};
        for (double a : vals)
            for (double d : vals)
                for (double re : vals)
                    for (double im : vals) {
                        const auto m = ComplexMatrix::from_rows(
                            {{a, Complex(re, im)}, {Complex(re, -im), d}});
                        const auto dec = hermitian_eig(m);
                        const auto [lo, hi] = char_poly_eig2(m);
                        REQUIRE(std::abs(dec.eigenvalues[0] - lo) <= 1e-10);
                        REQUIRE(std::abs(dec.eigenvalues[1] - hi) <= 1e-10);
                    }
    }
}

TEST_CASE("is_psd") {
    std::mt19937_64 rng(17);

    SECTION("identity is PSD") { REQUIRE(is_psd(ComplexMatrix::identity(3))); }
    SECTION("indefinite diagonal is not") {
        REQUIRE_FALSE(is_psd(ComplexMatrix::diagonal({1.0, -1.0})));
    }
    SECTION("Gram matrices are PSD") {
        for (int trial = 0; trial < 20; ++trial) {
            const auto v = random_matrix(rng, 4);
            REQUIRE(is_psd(adjoint(v) * v));
        }
    }
    SECTION("agrees with the sign-test oracle on 2x2 integer Hermitian matrices") {
        const double vals[] = {-1.0, 0.0, 1.0};
        for (double a : vals)
            for (double d : vals)
                for (double re : vals)
                    for (double im : vals) {
                        const auto m = ComplexMatrix::from_rows(
                            {{a, Complex(re, im)}, {Complex(re, -im), d}});
                        REQUIRE(is_psd(m) == char_poly_psd2(m));
                    }
    }
    SECTION("non-Hermitian input is rejected") {
        REQUIRE_THROWS_AS(is_psd(ComplexMatrix::unit(2, 0, 1)), std::invalid_argument);
    }
}

TEST_CASE("is_unitary") {
    SECTION("identity") { REQUIRE(is_unitary(ComplexMatrix::identity(4))); }
    SECTION("non-isometric diagonal") {
        REQUIRE_FALSE(is_unitary(ComplexMatrix::diagonal({1.0, 2.0})));
    }
    SECTION("rotation") {
        const double c = std::cos(0.3), s = std::sin(0.3);
        REQUIRE(is_unitary(ComplexMatrix::from_rows({{c, -s}, {s, c}})));
    }
}

TEST_CASE("singular_values") {
    SECTION("diagonal matrix") {
        const auto s = singular_values(ComplexMatrix::diagonal({-3.0, Complex(0.0, 2.0), 1.0}));
        REQUIRE(s[0] == Catch::Approx(3.0).margin(1e-12));
        REQUIRE(s[1] == Catch::Approx(2.0).margin(1e-12));
        REQUIRE(s[2] == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("exactly rank-one matrices have a tiny second singular value") {
        std::mt19937_64 rng(19);
        const auto g = random_matrix(rng, 4);
        ComplexMatrix outer(4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) outer(i, j) = g(i, 0) * std::conj(g(j, 1));
        const auto s = singular_values(outer);
        REQUIRE(s[1] <= 1e-12 * s[0]);
    }
    SECTION("squared values sum to the squared Frobenius norm") {
        std::mt19937_64 rng(20);
        const auto a = random_matrix(rng, 6);
        double sum = 0.0;
        for (double s : singular_values(a)) sum += s * s;
        REQUIRE(sum == Catch::Approx(frobenius_norm(a) * frobenius_norm(a)).epsilon(1e-12));
    }
    SECTION("unitary matrices have all singular values one") {
        const double c = std::cos(1.1), s = std::sin(1.1);
        for (double sv : singular_values(ComplexMatrix::from_rows({{c, -s}, {s, c}})))
            REQUIRE(sv == Catch::Approx(1.0).margin(1e-13));
    }
}

TEST_CASE("kron and partial traces") {
    std::mt19937_64 rng(18);
    const auto a = random_matrix(rng, 2);
    const auto b = random_matrix(rng, 3);
    const auto ab = kron(a, b);

    REQUIRE(ab.dim() == 6);
    REQUIRE(std::abs(trace(ab) - trace(a) * trace(b)) <= 1e-13);
    REQUIRE(frobenius_norm(partial_trace_second(ab, 2, 3) - trace(b) * a) <= 1e-13);
    REQUIRE(frobenius_norm(partial_trace_first(ab, 2, 3) - trace(a) * b) <= 1e-13);
}

TEST_CASE("DensityMatrix validation") {
    SECTION("maximally mixed state is accepted") {
        const DensityMatrix rho(Complex(1.0 / 3.0) * ComplexMatrix::identity(3));
        REQUIRE(rho.dim() == 3);
    }
    SECTION("trace must be one") {
        REQUIRE_THROWS_AS(DensityMatrix(ComplexMatrix::identity(2)), std::invalid_argument);
    }
    SECTION("negative eigenvalues are rejected") {
        REQUIRE_THROWS_AS(DensityMatrix(ComplexMatrix::diagonal({2.0, -1.0})),
                          std::invalid_argument);
    }
    SECTION("non-Hermitian is rejected") {
        auto m = ComplexMatrix::identity(2);
        m(0, 1) = Complex(0, 0.5);
        REQUIRE_THROWS_AS(DensityMatrix(m), std::invalid_argument);
    }
}
