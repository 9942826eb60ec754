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

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spimwave
{
    using cplx = std::complex<double>;
    using ComplexVector = std::vector<cplx>;

    inline constexpr double kPi = 3.14159265358979323846;
    inline constexpr double kLn2 = 0.69314718055994530942;
    inline constexpr double kLog2e = 1.44269504088896340736;

    // Dense complex matrix, row-major
    class ComplexMatrix
    {
    public:
        ComplexMatrix() = default;
        ComplexMatrix(std::size_t rows, std::size_t cols);
        ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

        static ComplexMatrix identity(std::size_t n);
        static ComplexMatrix from_columns(std::span<const ComplexVector> columns);

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        bool is_square() const noexcept { return rows_ == cols_; }

        cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
        const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
        std::span<const cplx> entries() const noexcept { return data_; }

        ComplexVector column(std::size_t c) const;
        ComplexMatrix adjoint() const;
        double frobenius_norm() const;
        bool is_hermitian(double tol = 1e-12) const;

        ComplexMatrix &operator+=(const ComplexMatrix &rhs);
        ComplexMatrix &operator*=(cplx s);

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<cplx> data_;
    };

    ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
    ComplexMatrix operator*(cplx s, ComplexMatrix a);
    ComplexVector operator*(const ComplexMatrix &a, std::span<const cplx> x);

    // u v^H
    ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);

    // u^H v
    cplx inner(std::span<const cplx> u, std::span<const cplx> v);
    double squared_norm(std::span<const cplx> v);

    // Lower Cholesky factor L of a Hermitian positive definite matrix, m = L L^H.
    // Throws DimensionError for non-square input and NotPositiveDefiniteError on a
    // non-positive pivot.
    class Cholesky
    {
    public:
        explicit Cholesky(const ComplexMatrix &m);

        std::size_t dim() const noexcept { return n_; }
        double log_det() const noexcept { return log_det_; }
        const ComplexMatrix &lower() const noexcept { return l_; }

        // y^H m^{-1} y
        double quadratic_form(std::span<const cplx> y) const;
        // Writes L z into out
        void multiply_lower(std::span<const cplx> z, std::span<cplx> out) const;

    private:
        std::size_t n_;
        ComplexMatrix l_;
        double log_det_ = 0.0;
    };

    inline constexpr std::size_t kMaxDeterminantDim = 64;

    // det(m) of a Hermitian positive definite matrix, dimension <= 64
    double hermitian_det(const ComplexMatrix &m);
    // ln det(m), same preconditions as hermitian_det
    double hermitian_log_det(const ComplexMatrix &m);

    // Counter-based generator (Philox4x32-10). A (seed, stream) pair fully
    // determines the sequence, so parallel work can claim disjoint streams.
    class Rng
    {
    public:
        Rng(std::uint64_t seed, std::uint64_t stream = 0);

        std::uint64_t seed() const noexcept { return seed_; }
        std::uint64_t stream() const noexcept { return stream_; }

        std::uint32_t next_u32();
        std::uint64_t next_u64();
        // Uniform on [0, 1) with 53 random bits
        double uniform();
        double uniform(double lo, double hi);
        // Standard normal via Box-Muller
        double normal();

    private:
        void refill();

        std::uint64_t seed_;
        std::uint64_t stream_;
        std::uint64_t counter_ = 0;
        std::array<std::uint32_t, 4> block_{};
        unsigned used_ = 4;
        double spare_normal_ = 0.0;
        bool has_spare_ = false;
    };

    // Mixes several indices into one 64-bit stream id
    std::uint64_t derive_stream(std::initializer_list<std::uint64_t> parts);

    // CN(0, variance I): real and imaginary parts each carry variance / 2
    ComplexVector sample_complex_gaussian(Rng &rng, std::size_t dim, double variance);
}
