// SPDX-License-Identifier: Apache-2.0
//
// spimwave: spectral-efficiency analysis for spatial path index modulation
// Copyright (C) 2026 The spimwave authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "oracles.hpp"

#include "spimwave/errors.hpp"
#include "spimwave/numerics.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace spimwave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("hermitian_det of the identity is one", "[numerics]")
{
    CHECK_THAT(hermitian_det(ComplexMatrix::identity(3)), WithinAbs(1.0, 1e-15));
}

TEST_CASE("hermitian_det of a diagonal matrix is the diagonal product", "[numerics]")
{
    ComplexMatrix m(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 3.0;
    CHECK_THAT(hermitian_det(m), WithinRel(6.0, 1e-15));
}

TEST_CASE("hermitian_det of a rank-one update follows the determinant lemma", "[numerics]")
{
    const ComplexVector v{cplx(1.0, 0.0) / std::sqrt(2.0), cplx(0.0, 1.0) / std::sqrt(2.0)};
    const ComplexMatrix m = ComplexMatrix::identity(2) + outer(v, v);
    const double lemma = 1.0 + squared_norm(v);
    CHECK_THAT(hermitian_det(m), WithinRel(2.0, 1e-14));
    CHECK_THAT(hermitian_det(m), WithinRel(lemma, 1e-14));
    CHECK_THAT(hermitian_det(m), WithinRel(oracle::cofactor_det(oracle::to_mat(m)).real(), 1e-14));
}

TEST_CASE("hermitian_det rejects non-square and indefinite input", "[numerics][errors]")
{
    CHECK_THROWS_AS(hermitian_det(ComplexMatrix(2, 3)), DimensionError);
    ComplexMatrix indefinite = ComplexMatrix::identity(2);
    indefinite(1, 1) = -1.0;
    CHECK_THROWS_AS(hermitian_det(indefinite), NotPositiveDefiniteError);
    CHECK_THROWS_AS(hermitian_det(ComplexMatrix(2, 2)), NotPositiveDefiniteError);
    CHECK_THROWS_AS(hermitian_det(ComplexMatrix::identity(kMaxDeterminantDim + 1)), DimensionError);
    CHECK_NOTHROW(hermitian_det(ComplexMatrix::identity(kMaxDeterminantDim)));
}

TEST_CASE("hermitian_det agrees with cofactor expansion on random covariances", "[numerics][property]")
{
    oracle::Random rnd(11);
    for (int trial = 0; trial < 400; ++trial)
    {
        const std::size_t n = rnd.index(1, 4);
        const std::size_t rank = rnd.index(0, n);
        const double n0 = rnd.uniform(0.05, 2.0);
        const auto m = oracle::random_pd(rnd, n, rank, n0, rnd.uniform(0.1, 5.0));
        const double expected = oracle::cofactor_det(m).real();
        REQUIRE_THAT(hermitian_det(oracle::from_mat(m)), WithinRel(expected, 1e-10));
        REQUIRE_THAT(hermitian_log_det(oracle::from_mat(m)), WithinRel(std::log(expected), 1e-10) || WithinAbs(std::log(expected), 1e-12));
    }
}

TEST_CASE("Sylvester determinant identity |I + AB| = |I + BA|", "[numerics][property]")
{
    oracle::Random rnd(12);
    for (int trial = 0; trial < 200; ++trial)
    {
        const std::size_t n = rnd.index(1, 8);
        const std::size_t k = rnd.index(1, n);
        ComplexMatrix a(n, k), b(k, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < k; ++c)
            {
                a(r, c) = 0.3 * rnd.complex_normal();
                b(c, r) = 0.3 * rnd.complex_normal();
            }
        // Non-Hermitian products, so compare with the pivoted-elimination oracle
        const auto lhs = oracle::lu_det(oracle::to_mat(ComplexMatrix::identity(n) + a * b));
        const auto rhs = oracle::lu_det(oracle::to_mat(ComplexMatrix::identity(k) + b * a));
        REQUIRE(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));

        // Hermitian variant through the library: B = A^H
        const ComplexMatrix ah = a.adjoint();
        REQUIRE_THAT(hermitian_det(ComplexMatrix::identity(n) + a * ah),
                     WithinRel(hermitian_det(ComplexMatrix::identity(k) + ah * a), 1e-10));
    }
}

TEST_CASE("Cholesky factor reproduces the matrix and its quadratic form", "[numerics]")
{
    oracle::Random rnd(13);
    for (int trial = 0; trial < 50; ++trial)
    {
        const std::size_t n = rnd.index(1, 8);
        const auto m = oracle::from_mat(oracle::random_pd(rnd, n, n, 0.5));
        const Cholesky chol(m);
        const auto &l = chol.lower();
        const ComplexMatrix rebuilt = l * l.adjoint();
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                REQUIRE(std::abs(rebuilt(r, c) - m(r, c)) < 1e-12 * (1.0 + m.frobenius_norm()));

        // y = L z gives y^H m^{-1} y = |z|^2
        ComplexVector z(n), y(n);
        for (auto &v : z)
            v = rnd.complex_normal();
        chol.multiply_lower(z, y);
        REQUIRE_THAT(chol.quadratic_form(y), WithinRel(squared_norm(z), 1e-10));
    }
}

TEST_CASE("ComplexMatrix basic algebra", "[numerics]")
{
    const ComplexMatrix m(2, 2, {cplx(1, 1), cplx(2, 0), cplx(0, -1), cplx(3, 2)});
    const auto h = m.adjoint();
    CHECK(h(0, 1) == std::conj(m(1, 0)));
    CHECK_FALSE(m.is_hermitian());
    CHECK((m + h).is_hermitian());
    CHECK_THROWS_AS(ComplexMatrix(2, 2, {cplx(1, 0)}), DimensionError);
    CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), DimensionError);
    const ComplexVector x{cplx(1, 0), cplx(0, 1)};
    const auto y = m * std::span<const cplx>(x);
    CHECK(std::abs(y[0] - (cplx(1, 1) + cplx(0, 2))) < 1e-15);
    CHECK(std::abs(inner(x, x) - cplx(2, 0)) < 1e-15);
}

TEST_CASE("sample_complex_gaussian with zero variance is the zero vector", "[numerics]")
{
    Rng rng(5);
    for (const auto &v : sample_complex_gaussian(rng, 16, 0.0))
        CHECK(v == cplx(0.0, 0.0));
}

TEST_CASE("sample_complex_gaussian has the requested per-entry variance", "[numerics]")
{
    Rng rng(6);
    const auto v = sample_complex_gaussian(rng, 100000, 1.0);
    double power = 0.0, re_var = 0.0, mean_re = 0.0;
    for (const auto &x : v)
    {
        power += std::norm(x);
        re_var += x.real() * x.real();
        mean_re += x.real();
    }
    const double n = static_cast<double>(v.size());
    CHECK_THAT(power / n, WithinAbs(1.0, 0.02));
    CHECK_THAT(re_var / n, WithinAbs(0.5, 0.01));
    CHECK_THAT(mean_re / n, WithinAbs(0.0, 0.01));
}

TEST_CASE("sample_complex_gaussian rejects negative variance", "[numerics][errors]")
{
    Rng rng(7);
    CHECK_THROWS_AS(sample_complex_gaussian(rng, 4, -1.0), ParameterError);
}

TEST_CASE("Rng is reproducible per seed and stream", "[numerics]")
{
    Rng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    const auto va = sample_complex_gaussian(a, 64, 2.0);
    const auto vb = sample_complex_gaussian(b, 64, 2.0);
    const auto vc = sample_complex_gaussian(c, 64, 2.0);
    const auto vd = sample_complex_gaussian(d, 64, 2.0);
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vd);
}

TEST_CASE("Rng uniform draws stay in range and look uniform", "[numerics]")
{
    Rng rng(8);
    std::vector<int> bins(10, 0);
    for (int i = 0; i < 100000; ++i)
    {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        ++bins[static_cast<std::size_t>(u * 10.0)];
    }
    for (int b : bins)
        CHECK(std::abs(b - 10000) < 500);
    for (int i = 0; i < 1000; ++i)
    {
        const double x = rng.uniform(-0.25, 0.25);
        REQUIRE(x >= -0.25);
        REQUIRE(x < 0.25);
    }
}

TEST_CASE("Rng normal draws have unit variance", "[numerics]")
{
    Rng rng(9);
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i)
    {
        const double x = rng.normal();
        s += x;
        s2 += x * x;
    }
    CHECK_THAT(s / n, WithinAbs(0.0, 0.01));
    CHECK_THAT(s2 / n, WithinAbs(1.0, 0.015));
}

TEST_CASE("derive_stream separates index tuples", "[numerics]")
{
    CHECK(derive_stream({1, 2}) == derive_stream({1, 2}));
    CHECK(derive_stream({1, 2}) != derive_stream({2, 1}));
    CHECK(derive_stream({0}) != derive_stream({0, 0}));
}
