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
#include <limits>
#include <numbers>

#include "qchan/transforms.hpp"

using namespace qchan;

TEST_CASE("fourier_unitary") {
    SECTION("n = 1") {
        const auto f = fourier_unitary(1);
        REQUIRE(std::abs(f(0, 0) - Complex(1.0)) <= 1e-15);
    }
    SECTION("n = 2 matches the hand evaluation") {
        const auto f = fourier_unitary(2);
        const double r = 1.0 / std::sqrt(2.0);
        const auto expected = ComplexMatrix::from_rows({{r, r}, {r, -r}});
        REQUIRE(frobenius_norm(f - expected) <= 1e-14);
    }
    SECTION("unitary for n up to 32") {
        for (std::size_t n = 1; n <= 32; ++n) REQUIRE(is_unitary(fourier_unitary(n), 1e-9));
    }
    SECTION("n = 0 rejected") { REQUIRE_THROWS_AS(fourier_unitary(0), std::invalid_argument); }
}

TEST_CASE("sine_unitary") {
    SECTION("n = 1 is the 1x1 identity") {
        const auto g = sine_unitary(1);
        REQUIRE(std::abs(g(0, 0) - Complex(1.0)) <= 1e-15);
    }
    SECTION("entry (0,0) for n = 2") {
        const auto g = sine_unitary(2);
        const double expected = std::sqrt(2.0 / 3.0) * std::sin(std::numbers::pi / 3.0);
        REQUIRE(std::abs(g(0, 0) - Complex(expected)) <= 1e-15);
    }
    SECTION("real orthogonal for n up to 32") {
        for (std::size_t n = 1; n <= 32; ++n) {
            const auto g = sine_unitary(n);
            REQUIRE(is_unitary(g, 1e-9));
            for (const Complex& v : g.entries()) REQUIRE(v.imag() == 0.0);
        }
    }
    SECTION("n = 0 rejected") { REQUIRE_THROWS_AS(sine_unitary(0), std::invalid_argument); }
}

TEST_CASE("hartley_unitary") {
    SECTION("n = 1") {
        const auto h = hartley_unitary(1);
        REQUIRE(std::abs(h(0, 0) - Complex(1.0)) <= 1e-15);
    }
    SECTION("n = 2 matches the hand evaluation") {
        const auto h = hartley_unitary(2);
        const double r = 1.0 / std::sqrt(2.0);
        const auto expected = ComplexMatrix::from_rows({{r, r}, {r, -r}});
        REQUIRE(frobenius_norm(h - expected) <= 1e-14);
    }
    SECTION("real orthogonal for n up to 32") {
        for (std::size_t n = 1; n <= 32; ++n) REQUIRE(is_unitary(hartley_unitary(n), 1e-9));
    }
    SECTION("n = 0 rejected") { REQUIRE_THROWS_AS(hartley_unitary(0), std::invalid_argument); }
}

TEST_CASE("vandermonde_unitary") {
    SECTION("Fourier exponentials on the Fourier grid reproduce fourier_unitary") {
        for (std::size_t n : {2u, 5u, 8u}) {
            const double scale = 1.0 / std::sqrt(static_cast<double>(n));
            const auto res = vandermonde_unitary(
                [scale](std::size_t j, double x) {
                    return scale * std::exp(Complex(0.0, static_cast<double>(j) * x));
                },
                fourier_grid(n));
            REQUIRE(res.unitary);
            REQUIRE(frobenius_norm(res.matrix - fourier_unitary(n)) <= 1e-13);
        }
    }
    SECTION("sines on the sine grid reproduce sine_unitary") {
        const std::size_t n = 6;
        const double scale = std::sqrt(2.0 / static_cast<double>(n + 1));
        const auto res = vandermonde_unitary(
            [scale](std::size_t j, double x) {
                return Complex(scale * std::sin(static_cast<double>(j + 1) * x));
            },
            sine_grid(n));
        REQUIRE(res.unitary);
        REQUIRE(frobenius_norm(res.matrix - sine_unitary(n)) <= 1e-13);
    }
    SECTION("a constant function table is not unitary") {
        const auto res = vandermonde_unitary([](std::size_t, double) { return Complex(1.0); },
                                             fourier_grid(3));
        REQUIRE_FALSE(res.unitary);
    }
    SECTION("non-finite evaluations are rejected") {
        REQUIRE_THROWS_AS(vandermonde_unitary(
                              [](std::size_t, double) {
                                  return Complex(std::numeric_limits<double>::quiet_NaN());
                              },
                              fourier_grid(2)),
                          std::runtime_error);
    }
}

TEST_CASE("rank_one_projections") {
    SECTION("identity yields the coordinate projections") {
        const auto ps = rank_one_projections(ComplexMatrix::identity(2));
        REQUIRE(ps.projections.size() == 2);
        REQUIRE(frobenius_norm(ps.projections[0] - ComplexMatrix::unit(2, 0, 0)) == 0.0);
        REQUIRE(frobenius_norm(ps.projections[1] - ComplexMatrix::unit(2, 1, 1)) == 0.0);
    }
    SECTION("first Fourier projection is the averaging matrix") {
        const auto ps = rank_one_projections(fourier_unitary(2));
        const auto expected = Complex(0.5) * ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
        REQUIRE(frobenius_norm(ps.projections[0] - expected) <= 1e-14);
    }
    SECTION("completeness, idempotency and unit trace") {
        for (std::size_t n : {2u, 4u}) {
            for (const auto& u : {fourier_unitary(n), sine_unitary(n), hartley_unitary(n)}) {
                const auto ps = rank_one_projections(u);
                validate_projection_set(ps, 1e-10);
                ComplexMatrix sum = ComplexMatrix::zero(n);
                for (const auto& p : ps.projections) {
                    REQUIRE(std::abs(trace(p) - Complex(1.0)) <= 1e-12);
                    REQUIRE(frobenius_norm(p * p - p) <= 1e-10);
                    sum = sum + p;
                }
                REQUIRE(frobenius_norm(sum - ComplexMatrix::identity(n)) <= 1e-10);
            }
        }
    }
    SECTION("non-unitary input rejected") {
        REQUIRE_THROWS_AS(rank_one_projections(ComplexMatrix::diagonal({1.0, 2.0})),
                          std::invalid_argument);
    }
}

TEST_CASE("block_projections") {
    SECTION("singleton partition gives coordinate projections") {
        const auto ps = block_projections(3, {{0}, {1}, {2}});
        REQUIRE(ps.projections.size() == 3);
        for (std::size_t k = 0; k < 3; ++k)
            REQUIRE(frobenius_norm(ps.projections[k] - ComplexMatrix::unit(3, k, k)) == 0.0);
    }
    SECTION("two-block partition on n = 3") {
        const auto ps = block_projections(3, {{0, 1}, {2}});
        REQUIRE(frobenius_norm(ps.projections[0] - ComplexMatrix::diagonal({1.0, 1.0, 0.0})) == 0.0);
        REQUIRE(frobenius_norm(ps.projections[1] - ComplexMatrix::diagonal({0.0, 0.0, 1.0})) == 0.0);
    }
    SECTION("single full block is the identity") {
        const auto ps = block_projections(4, {{0, 1, 2, 3}});
        REQUIRE(ps.projections.size() == 1);
        REQUIRE(frobenius_norm(ps.projections[0] - ComplexMatrix::identity(4)) == 0.0);
    }
    SECTION("partition reconstructs the identity exactly") {
        const auto ps = block_projections(5, {{4, 0}, {2}, {1, 3}});
        ComplexMatrix sum = ComplexMatrix::zero(5);
        for (const auto& p : ps.projections) sum = sum + p;
        REQUIRE(frobenius_norm(sum - ComplexMatrix::identity(5)) == 0.0);
    }
    SECTION("overlap and gaps rejected") {
        REQUIRE_THROWS_AS(block_projections(3, {{0, 1}, {1, 2}}), std::invalid_argument);
        REQUIRE_THROWS_AS(block_projections(3, {{0}, {2}}), std::invalid_argument);
        REQUIRE_THROWS_AS(block_projections(3, {{0, 1, 2, 3}}), std::invalid_argument);
    }
}
