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

#include "spimwave/numerics.hpp"
#include "spimwave/errors.hpp"

#include <cmath>
#include <string>

namespace spimwave
{
    ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

    ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries))
    {
        if (data_.size() != rows * cols)
            throw DimensionError("ComplexMatrix: entry count " + std::to_string(data_.size()) +
                                 " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }

    ComplexMatrix ComplexMatrix::identity(std::size_t n)
    {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    ComplexMatrix ComplexMatrix::from_columns(std::span<const ComplexVector> columns)
    {
        if (columns.empty())
            return {};
        const std::size_t rows = columns.front().size();
        ComplexMatrix m(rows, columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c)
        {
            if (columns[c].size() != rows)
                throw DimensionError("ComplexMatrix::from_columns: ragged columns");
            for (std::size_t r = 0; r < rows; ++r)
                m(r, c) = columns[c][r];
        }
        return m;
    }

    ComplexVector ComplexMatrix::column(std::size_t c) const
    {
        if (c >= cols_)
            throw DimensionError("ComplexMatrix::column: index out of range");
        ComplexVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }

    ComplexMatrix ComplexMatrix::adjoint() const
    {
        ComplexMatrix a(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                a(c, r) = std::conj((*this)(r, c));
        return a;
    }

    double ComplexMatrix::frobenius_norm() const
    {
        return std::sqrt(squared_norm(data_));
    }

    bool ComplexMatrix::is_hermitian(double tol) const
    {
        if (!is_square())
            return false;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r; c < cols_; ++c)
                if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol)
                    return false;
        return true;
    }

    ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &rhs)
    {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw DimensionError("ComplexMatrix: sum of non-conforming matrices");
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += rhs.data_[i];
        return *this;
    }

    ComplexMatrix &ComplexMatrix::operator*=(cplx s)
    {
        for (auto &v : data_)
            v *= s;
        return *this;
    }

    ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        if (a.cols() != b.rows())
            throw DimensionError("ComplexMatrix: product of non-conforming matrices (" +
                                 std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " * " +
                                 std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
        ComplexMatrix out(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k)
            {
                const cplx aik = a(i, k);
                for (std::size_t j = 0; j < b.cols(); ++j)
                    out(i, j) += aik * b(k, j);
            }
        return out;
    }

    ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b)
    {
        a += b;
        return a;
    }

    ComplexMatrix operator*(cplx s, ComplexMatrix a)
    {
        a *= s;
        return a;
    }

    ComplexVector operator*(const ComplexMatrix &a, std::span<const cplx> x)
    {
        if (a.cols() != x.size())
            throw DimensionError("ComplexMatrix: matrix-vector product of non-conforming operands");
        ComplexVector y(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i)
        {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc += a(i, k) * x[k];
            y[i] = acc;
        }
        return y;
    }

    ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v)
    {
        ComplexMatrix m(u.size(), v.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                m(i, j) = u[i] * std::conj(v[j]);
        return m;
    }

    cplx inner(std::span<const cplx> u, std::span<const cplx> v)
    {
        if (u.size() != v.size())
            throw DimensionError("inner: vectors of different length");
        cplx acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            acc += std::conj(u[i]) * v[i];
        return acc;
    }

    double squared_norm(std::span<const cplx> v)
    {
        double acc = 0.0;
        for (const auto &x : v)
            acc += std::norm(x);
        return acc;
    }

    // ---- Cholesky ----

    Cholesky::Cholesky(const ComplexMatrix &m) : n_(m.rows()), l_(m.rows(), m.rows())
    {
        if (!m.is_square())
            throw DimensionError("Cholesky: matrix is " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + ", expected square");

        for (std::size_t j = 0; j < n_; ++j)
        {
            double pivot = m(j, j).real();
            for (std::size_t k = 0; k < j; ++k)
                pivot -= std::norm(l_(j, k));
            if (!(pivot > 0.0))
                throw NotPositiveDefiniteError("Cholesky: non-positive pivot at index " + std::to_string(j));

            const double ljj = std::sqrt(pivot);
            l_(j, j) = ljj;
            log_det_ += 2.0 * std::log(ljj);

            for (std::size_t i = j + 1; i < n_; ++i)
            {
                cplx acc = m(i, j);
                for (std::size_t k = 0; k < j; ++k)
                    acc -= l_(i, k) * std::conj(l_(j, k));
                l_(i, j) = acc / ljj;
            }
        }
    }

    double Cholesky::quadratic_form(std::span<const cplx> y) const
    {
        if (y.size() != n_)
            throw DimensionError("Cholesky::quadratic_form: vector length mismatch");

        // Forward substitution L u = y, then y^H m^{-1} y = |u|^2
        std::array<cplx, kMaxDeterminantDim> stack{};
        std::vector<cplx> heap;
        cplx *u = stack.data();
        if (n_ > stack.size())
        {
            heap.resize(n_);
            u = heap.data();
        }

        double acc = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
        {
            cplx s = y[i];
            for (std::size_t k = 0; k < i; ++k)
                s -= l_(i, k) * u[k];
            u[i] = s / l_(i, i).real();
            acc += std::norm(u[i]);
        }
        return acc;
    }

    void Cholesky::multiply_lower(std::span<const cplx> z, std::span<cplx> out) const
    {
        if (z.size() != n_ || out.size() != n_)
            throw DimensionError("Cholesky::multiply_lower: vector length mismatch");
        for (std::size_t i = 0; i < n_; ++i)
        {
            cplx s = 0.0;
            for (std::size_t k = 0; k <= i; ++k)
                s += l_(i, k) * z[k];
            out[i] = s;
        }
    }

    double hermitian_log_det(const ComplexMatrix &m)
    {
        if (!m.is_square())
            throw DimensionError("hermitian_det: matrix is not square");
        if (m.rows() > kMaxDeterminantDim)
            throw DimensionError("hermitian_det: dimension " + std::to_string(m.rows()) + " exceeds " +
                                 std::to_string(kMaxDeterminantDim));
        return Cholesky(m).log_det();
    }

    double hermitian_det(const ComplexMatrix &m)
    {
        return std::exp(hermitian_log_det(m));
    }

    // ---- Rng ----

    namespace
    {
        constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
        constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
        constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
        constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

        std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key)
        {
            for (int round = 0; round < 10; ++round)
            {
                const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
                const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
                const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
                const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
                ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
                key[0] += kPhiloxW0;
                key[1] += kPhiloxW1;
            }
            return ctr;
        }

        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ull;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
            return x ^ (x >> 31);
        }
    }

    Rng::Rng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    void Rng::refill()
    {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                                  static_cast<std::uint32_t>(seed_ >> 32)};
        block_ = philox4x32_10(ctr, key);
        ++counter_;
        used_ = 0;
    }

    std::uint32_t Rng::next_u32()
    {
        if (used_ >= 4)
            refill();
        return block_[used_++];
    }

    std::uint64_t Rng::next_u64()
    {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    double Rng::uniform()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double Rng::uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    double Rng::normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_normal_;
        }
        // 1 - uniform() lies in (0, 1], keeping the log finite
        const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
        const double a = 2.0 * kPi * uniform();
        spare_normal_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t derive_stream(std::initializer_list<std::uint64_t> parts)
    {
        std::uint64_t h = 0x6A09E667F3BCC909ull;
        for (auto p : parts)
            h = splitmix64(h ^ splitmix64(p));
        return h;
    }

    ComplexVector sample_complex_gaussian(Rng &rng, std::size_t dim, double variance)
    {
        if (!(variance >= 0.0))
            throw ParameterError("sample_complex_gaussian: variance must be >= 0");
        ComplexVector v(dim);
        const double scale = std::sqrt(variance / 2.0);
        for (auto &x : v)
        {
            const double re = rng.normal();
            const double im = rng.normal();
            x = cplx(scale * re, scale * im);
        }
        return v;
    }
}
